#include "qlab/expectation.hpp"

#include <cmath>

#include "qlab/errors.hpp"

namespace qlab {

namespace {

constexpr double kCharFnReliability = 1e-6;

// Index of (i, j) in the graded basis: block offset + position, with i
// descending inside the degree-(i+j) block.
std::size_t basis_index(int i, int j) {
  const int d = i + j;
  return static_cast<std::size_t>(d * (d + 1) / 2 + (d - i));
}

RealExpectation finish_real(const Complex& value, const char* what) {
  const double residue = std::abs(value.imag());
  if (residue > kImagResidueTol * (1.0 + std::abs(value.real())))
    throw HermiticityError(std::string(what) + ": imaginary residue " +
                           std::to_string(residue));
  return {value.real(), residue};
}

Complex char_fn(const CoherentMixture& state, Complex xi) {
  Complex acc(0.0, 0.0);
  for (const auto& comp : state.components()) {
    if (comp.p == 0.0) continue;
    Complex inner(0.0, 0.0);
    for (const auto& a : comp.psi.amplitudes())
      for (const auto& b : comp.psi.amplitudes())
        inner += std::conj(a.c) * b.c *
                 std::exp(xi * std::conj(a.alpha) - std::conj(xi) * b.alpha) *
                 overlap(a.alpha, b.alpha);
    acc += comp.p * inner;
  }
  return acc;
}

Complex char_fn(const FockDensity& state, Complex xi) {
  const int dim = state.dim();
  if (state.tail_bound() * std::exp(std::norm(xi)) > kCharFnReliability)
    throw TruncationError("tail bound too large for char_fn at this xi");
  // <p| e^{xi a†} e^{-conj(xi) a} |q> =
  //   sum_{r<=min(p,q)} xi^{p-r}/(p-r)! (-conj(xi))^{q-r}/(q-r)! sqrt(p! q!)/r!
  std::vector<Complex> up(dim), down(dim);
  up[0] = down[0] = Complex(1.0, 0.0);
  for (int t = 1; t < dim; ++t) {
    up[t] = up[t - 1] * xi / static_cast<double>(t);
    down[t] = down[t - 1] * (-std::conj(xi)) / static_cast<double>(t);
  }
  const auto& lf = state.log_factorials();
  const auto& rho = state.rho();
  Complex acc(0.0, 0.0);
  for (int p = 0; p < dim; ++p) {
    for (int q = 0; q < dim; ++q) {
      if (rho(q, p) == Complex(0.0, 0.0)) continue;
      Complex elem(0.0, 0.0);
      const int rmax = std::min(p, q);
      for (int r = 0; r <= rmax; ++r)
        elem += up[p - r] * down[q - r] * std::exp(0.5 * (lf[p] + lf[q]) - lf[r]);
      acc += rho(q, p) * elem;
    }
  }
  return acc;
}

}  // namespace

RealExpectation normal_expect_full(const QuantumState& state, const NormalCoeffs& coeffs) {
  Complex acc(0.0, 0.0);
  for (const auto& [e, c] : coeffs.terms()) acc += c * normal_moment(state, e.i, e.j);
  return finish_real(acc, "normal_expect");
}

RealExpectation normal_expect_full(const QuantumState& state, const Polynomial& p) {
  return normal_expect_full(state, to_normal_coeffs(p));
}

double normal_expect(const QuantumState& state, const Polynomial& p) {
  return normal_expect_full(state, p).value;
}

Complex char_fn(const QuantumState& state, Complex xi) {
  if (state.is_coherent_mixture()) return char_fn(state.coherent_mixture(), xi);
  return char_fn(state.fock(), xi);
}

MomentTable::MomentTable(const QuantumState& state, int max_degree)
    : max_degree_(max_degree) {
  if (max_degree < 0) throw Error("MomentTable: negative degree");
  const auto basis = monomial_basis(max_degree);
  moments_.resize(basis.size());
  real_moments_.resize(basis.size());
  // Complex moments: compute the m >= n half, mirror the rest.
  for (const auto& e : basis) {
    if (e.i < e.j) continue;
    const Complex mu = normal_moment(state, e.i, e.j);
    moments_[basis_index(e.i, e.j)] = mu;
    if (e.i != e.j) moments_[basis_index(e.j, e.i)] = std::conj(mu);
  }
  for (const auto& e : basis) {
    const NormalCoeffs coeffs = to_normal_coeffs(Polynomial::monomial(e.i, e.j));
    Complex acc(0.0, 0.0);
    for (const auto& [me, c] : coeffs.terms())
      acc += c * moments_[basis_index(me.i, me.j)];
    real_moments_[basis_index(e.i, e.j)] = finish_real(acc, "moment table").value;
  }
}

Complex MomentTable::moment(int m, int n) const {
  if (m < 0 || n < 0 || m + n > max_degree_)
    throw Error("MomentTable: moment outside cached range");
  return moments_[basis_index(m, n)];
}

double MomentTable::real_moment(int i, int j) const {
  if (i < 0 || j < 0 || i + j > max_degree_)
    throw Error("MomentTable: moment outside cached range");
  return real_moments_[basis_index(i, j)];
}

double MomentTable::expect(const Polynomial& p) const {
  if (p.degree() > max_degree_) throw Error("MomentTable: polynomial degree too high");
  double acc = 0.0;
  for (const auto& [e, c] : p.terms()) acc += c * real_moments_[basis_index(e.i, e.j)];
  return acc;
}

double MomentTable::moment_scale(int degree) const {
  if (degree > max_degree_) degree = max_degree_;
  double scale = 0.0;
  for (const auto& e : monomial_basis(degree))
    scale = std::max(scale, std::abs(real_moments_[basis_index(e.i, e.j)]));
  return scale;
}

}  // namespace qlab
