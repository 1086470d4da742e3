#include "qlab/state.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qlab/errors.hpp"

namespace qlab {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kMixtureTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kEigTol = 1e-10;

// Crude reliability threshold for truncated moments; see normal_moment.
constexpr double kMomentReliability = 1e-6;

Complex coherent_amplitude(Complex alpha, int n, const std::vector<double>& lf) {
  const double mod = std::abs(alpha);
  if (mod == 0.0) return n == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  const double mag = std::exp(-0.5 * mod * mod + n * std::log(mod) - 0.5 * lf[n]);
  const double ang = n * std::arg(alpha);
  return Complex(mag * std::cos(ang), mag * std::sin(ang));
}

}  // namespace

Complex overlap(Complex alpha, Complex beta) {
  return std::exp(Complex(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta), 0.0) +
                  std::conj(alpha) * beta);
}

std::vector<double> log_factorial_table(int n_max) {
  std::vector<double> lf(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) lf[n] = std::lgamma(n + 1.0);
  return lf;
}

CoherentSuperposition::CoherentSuperposition(std::vector<WeightedAmplitude> amps)
    : amps_(std::move(amps)) {
  if (amps_.empty()) throw NormalizationError("superposition has no amplitudes");
  const double n2 = norm_squared(amps_);
  if (std::abs(n2 - 1.0) > kNormTol)
    throw NormalizationError("superposition is not normalized: <psi|psi> = " +
                             std::to_string(n2));
}

double CoherentSuperposition::norm_squared(const std::vector<WeightedAmplitude>& amps) {
  Complex acc(0.0, 0.0);
  for (const auto& a : amps)
    for (const auto& b : amps)
      acc += std::conj(a.c) * b.c * overlap(a.alpha, b.alpha);
  return acc.real();
}

CoherentSuperposition CoherentSuperposition::normalized(
    std::vector<WeightedAmplitude> amps) {
  const double n2 = norm_squared(amps);
  if (n2 <= 0.0) throw NormalizationError("superposition has zero norm");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amps) a.c *= inv;
  return CoherentSuperposition(std::move(amps));
}

CoherentMixture::CoherentMixture(std::vector<Component> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw Error("mixture has no components");
  double total = 0.0;
  for (const auto& comp : components_) {
    if (comp.p < 0.0) throw Error("mixture weight is negative");
    total += comp.p;
  }
  if (std::abs(total - 1.0) > kMixtureTol)
    throw Error("mixture weights sum to " + std::to_string(total));
}

FockDensity::FockDensity(Eigen::MatrixXcd rho, double tail_bound, bool)
    : rho_(std::move(rho)),
      tail_bound_(tail_bound),
      log_fact_(log_factorial_table(static_cast<int>(rho_.rows()))) {}

FockDensity::FockDensity(Eigen::MatrixXcd rho) : FockDensity(std::move(rho), 0.0, true) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1)
    throw Error("Fock density matrix must be square and nonempty");
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol)
    throw Error("Fock density matrix is not Hermitian (residual " +
                std::to_string(herm) + ")");
  const double trace = rho_.trace().real();
  if (trace > 1.0 + kNormTol) throw NormalizationError("Fock density trace exceeds 1");
  tail_bound_ = std::max(0.0, 1.0 - trace);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigTol)
    throw Error("Fock density matrix has a negative eigenvalue");
}

FockDensity FockDensity::from_parts(Eigen::MatrixXcd rho, double tail_bound) {
  if (tail_bound < 0.0) throw Error("tail_bound must be nonnegative");
  FockDensity out(std::move(rho));
  if (std::abs(out.tail_bound_ - tail_bound) > kNormTol)
    throw NormalizationError("trace is inconsistent with the declared tail_bound");
  out.tail_bound_ = tail_bound;
  return out;
}

FockDensity FockDensity::pure(const Eigen::VectorXcd& amps) {
  return FockDensity(amps * amps.adjoint());
}

Complex normal_moment(const CoherentMixture& state, int m, int n) {
  if (m < 0 || n < 0) throw Error("moment orders must be nonnegative");
  Complex acc(0.0, 0.0);
  for (const auto& comp : state.components()) {
    if (comp.p == 0.0) continue;
    Complex inner(0.0, 0.0);
    for (const auto& a : comp.psi.amplitudes())
      for (const auto& b : comp.psi.amplitudes())
        inner += std::conj(a.c) * b.c * ipow(std::conj(a.alpha), m) *
                 ipow(b.alpha, n) * overlap(a.alpha, b.alpha);
    acc += comp.p * inner;
  }
  return acc;
}

Complex normal_moment(const FockDensity& state, int m, int n) {
  if (m < 0 || n < 0) throw Error("moment orders must be nonnegative");
  const int dim = state.dim();
  if (m >= dim || n >= dim)
    throw TruncationError("moment order exceeds Fock truncation dimension");
  // A tail below 1e-12 is negligible at every order this library reaches.
  // Otherwise the discarded mass enters weighted by ladder factors growing
  // like dim^((m+n)/2); reject the moment when that worst case is no
  // longer small.
  if (state.tail_bound() > 1e-12 &&
      state.tail_bound() * std::pow(static_cast<double>(dim), 0.5 * (m + n)) >
          kMomentReliability)
    throw TruncationError("tail bound too large for the requested moment order");
  const auto& lf = state.log_factorials();
  const auto& rho = state.rho();
  Complex acc(0.0, 0.0);
  for (int q = n; q < dim; ++q) {
    const int p = q - n + m;
    if (p >= dim) continue;
    const double weight = std::exp(0.5 * (lf[p] - lf[p - m] + lf[q] - lf[q - n]));
    acc += rho(q, p) * weight;
  }
  return acc;
}

Complex normal_moment(const QuantumState& state, int m, int n) {
  if (state.is_coherent_mixture()) return normal_moment(state.coherent_mixture(), m, n);
  return normal_moment(state.fock(), m, n);
}

CoherentMixture coherent_state(Complex alpha) {
  std::vector<WeightedAmplitude> amps{{Complex(1.0, 0.0), alpha}};
  return CoherentMixture({{1.0, CoherentSuperposition(std::move(amps))}});
}

double example_norm_squared() { return 2.0 * (1.0 + std::exp(-2.0) * std::cos(2.0)); }

QuantumState example_state(double epsilon, int i) {
  if (epsilon < 0.0 || epsilon > 1.0) throw Error("epsilon must lie in [0, 1]");
  if (i < 1 || i > 4) throw Error("reference index i must lie in {1,..,4}");
  const Complex alphas[4] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  std::vector<CoherentMixture::Component> comps;
  if (epsilon < 1.0) {
    for (const Complex& a : alphas) {
      std::vector<WeightedAmplitude> amp{{Complex(1.0, 0.0), a}};
      comps.push_back({0.25 * (1.0 - epsilon), CoherentSuperposition(std::move(amp))});
    }
  }
  if (epsilon > 0.0) {
    const Complex a = alphas[i - 1];
    const double inv_n = 1.0 / std::sqrt(example_norm_squared());
    std::vector<WeightedAmplitude> amp{{Complex(inv_n, 0.0), a},
                                       {Complex(inv_n, 0.0), std::conj(a)}};
    comps.push_back({epsilon, CoherentSuperposition(std::move(amp))});
  }
  return QuantumState(CoherentMixture(std::move(comps)));
}

FockDensity fock_from_coherent(const CoherentMixture& state, int dim) {
  if (dim < 1) throw Error("Fock dimension must be at least 1");
  const auto lf = log_factorial_table(dim);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& comp : state.components()) {
    if (comp.p == 0.0) continue;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (const auto& a : comp.psi.amplitudes())
      for (int n = 0; n < dim; ++n) v(n) += a.c * coherent_amplitude(a.alpha, n, lf);
    rho += comp.p * (v * v.adjoint());
  }
  return FockDensity(std::move(rho));
}

FockDensity squeezed_vacuum(double r, int dim, double tail_limit) {
  if (dim < 1) throw Error("Fock dimension must be at least 1");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  const auto lf = log_factorial_table(dim);
  const double th = std::tanh(r);
  const double inv_sqrt_cosh = 1.0 / std::sqrt(std::cosh(r));
  for (int n = 0; 2 * n < dim; ++n) {
    const double ratio = std::exp(0.5 * lf[2 * n] - n * std::log(2.0) - lf[n]);
    psi(2 * n) = ipow(-th, n) * ratio * inv_sqrt_cosh;
  }
  const double tail = 1.0 - psi.squaredNorm();
  if (tail > tail_limit)
    throw TruncationError("squeezed vacuum tail " + std::to_string(tail) +
                          " exceeds limit; increase dim");
  return FockDensity::pure(psi);
}

FockDensity fock_basis_state(int n, int dim) {
  if (n < 0 || n >= dim) throw Error("number state outside truncation");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  psi(n) = 1.0;
  return FockDensity::pure(psi);
}

}  // namespace qlab
