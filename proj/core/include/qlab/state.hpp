#ifndef QLAB_STATE_HPP
#define QLAB_STATE_HPP

#include <Eigen/Core>
#include <complex>
#include <variant>
#include <vector>

#include "qlab/polynomial.hpp"

namespace qlab {

/// Coherent-state inner product <alpha|beta> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b).
Complex overlap(Complex alpha, Complex beta);

/// log(n!) for n = 0..n_max.
std::vector<double> log_factorial_table(int n_max);

struct WeightedAmplitude {
  Complex c;      // superposition weight
  Complex alpha;  // coherent amplitude
};

/// |psi> = sum_i c_i |alpha_i>. The constructor rejects unnormalized input
/// instead of silently rescaling; use normalized() when the caller wants
/// the rescaling done explicitly.
class CoherentSuperposition {
 public:
  explicit CoherentSuperposition(std::vector<WeightedAmplitude> amps);

  /// <psi|psi> for an arbitrary weight vector.
  static double norm_squared(const std::vector<WeightedAmplitude>& amps);

  /// Scales the weights by 1/sqrt(<psi|psi>) and constructs.
  static CoherentSuperposition normalized(std::vector<WeightedAmplitude> amps);

  const std::vector<WeightedAmplitude>& amplitudes() const { return amps_; }

 private:
  std::vector<WeightedAmplitude> amps_;
};

/// rho = sum_t p_t |psi_t><psi_t| with probabilities summing to 1.
class CoherentMixture {
 public:
  struct Component {
    double p;
    CoherentSuperposition psi;
  };

  explicit CoherentMixture(std::vector<Component> components);

  const std::vector<Component>& components() const { return components_; }

 private:
  std::vector<Component> components_;
};

/// Number-basis density matrix truncated to dim levels. tail_bound is the
/// probability mass discarded by the truncation (1 - trace).
class FockDensity {
 public:
  /// Validates Hermiticity (1e-12), eigenvalues >= -1e-10, trace <= 1;
  /// sets tail_bound = 1 - trace.
  explicit FockDensity(Eigen::MatrixXcd rho);

  /// As above but with the intended tail recorded explicitly; requires
  /// |trace - (1 - tail_bound)| <= 1e-10.
  static FockDensity from_parts(Eigen::MatrixXcd rho, double tail_bound);

  /// rho = amps amps†, tail_bound = 1 - |amps|^2.
  static FockDensity pure(const Eigen::VectorXcd& amps);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Eigen::MatrixXcd& rho() const { return rho_; }
  double tail_bound() const { return tail_bound_; }
  const std::vector<double>& log_factorials() const { return log_fact_; }

 private:
  FockDensity(Eigen::MatrixXcd rho, double tail_bound, bool trusted);

  Eigen::MatrixXcd rho_;
  double tail_bound_ = 0.0;
  std::vector<double> log_fact_;
};

/// Tagged union of the two state representations. The tag decides which
/// moment path is exact: CoherentMixture moments are closed-form sums over
/// amplitude pairs, FockDensity moments are finite ladder-operator sums.
class QuantumState {
 public:
  QuantumState(CoherentMixture m) : value_(std::move(m)) {}
  QuantumState(FockDensity f) : value_(std::move(f)) {}

  bool is_coherent_mixture() const {
    return std::holds_alternative<CoherentMixture>(value_);
  }
  bool is_fock() const { return std::holds_alternative<FockDensity>(value_); }

  const CoherentMixture& coherent_mixture() const {
    return std::get<CoherentMixture>(value_);
  }
  const FockDensity& fock() const { return std::get<FockDensity>(value_); }

 private:
  std::variant<CoherentMixture, FockDensity> value_;
};

/// tr(rho a†^m a^n).
Complex normal_moment(const CoherentMixture& state, int m, int n);
Complex normal_moment(const FockDensity& state, int m, int n);
Complex normal_moment(const QuantumState& state, int m, int n);

/// Single coherent state |alpha><alpha| as a trivial mixture.
CoherentMixture coherent_state(Complex alpha);

/// N^2 = 2 [1 + e^-2 cos 2], the normalization of the reference
/// superposition (|alpha_i> + |alpha_i*>)/N used by example_state.
double example_norm_squared();

/// The four-point reference family: amplitudes 1+i, -1+i, -1-i, 1-i mixed
/// uniformly with weight (1-epsilon), plus the projector onto
/// (|alpha_i> + |alpha_i*>)/N with weight epsilon. i in {1,..,4}.
QuantumState example_state(double epsilon, int i);

/// Expands a coherent mixture in the number basis up to dim levels,
/// recording the discarded mass as tail_bound (the dual-path oracle).
FockDensity fock_from_coherent(const CoherentMixture& state, int dim);

/// Single-mode squeezed vacuum: <2n|r> = (-tanh r)^n sqrt((2n)!)/(2^n n! sqrt(cosh r)).
/// Throws TruncationError if the truncated tail exceeds tail_limit.
FockDensity squeezed_vacuum(double r, int dim, double tail_limit = 1e-12);

/// Number state |n><n| in a dim-level truncation (exact, tail 0).
FockDensity fock_basis_state(int n, int dim);

}  // namespace qlab

#endif
