#ifndef QLAB_EXPECTATION_HPP
#define QLAB_EXPECTATION_HPP

#include <vector>

#include "qlab/polynomial.hpp"
#include "qlab/state.hpp"

namespace qlab {

/// Relative bound on the imaginary residue of a contraction that must be
/// real: |Im| <= tol * (1 + |Re|).
inline constexpr double kImagResidueTol = 1e-9;

struct RealExpectation {
  double value;
  double imag_residue;
};

/// tr(rho :p(x,y):) by contraction of the normally ordered coefficients
/// with the state's moments. Throws HermiticityError if the imaginary
/// residue exceeds kImagResidueTol * (1 + |Re|).
RealExpectation normal_expect_full(const QuantumState& state, const Polynomial& p);
double normal_expect(const QuantumState& state, const Polynomial& p);

/// Same contraction for raw coefficient maps; the Hermiticity assertion is
/// what catches a malformed coefficient set.
RealExpectation normal_expect_full(const QuantumState& state, const NormalCoeffs& coeffs);

/// Normally ordered characteristic function tr(rho :W(xi):),
/// :W(xi): = e^{xi a†} e^{-conj(xi) a}. Equals the Fourier transform of the
/// P-distribution; char_fn(state, 0) = 1.
Complex char_fn(const QuantumState& state, Complex xi);

/// Cached moments of one state up to a fixed degree: the complex moments
/// <a†^m a^n> and the real table tau_{IJ} = <:x^I y^J:>. Immutable after
/// construction, so scan workers can share one instance.
class MomentTable {
 public:
  MomentTable(const QuantumState& state, int max_degree);

  int max_degree() const { return max_degree_; }
  Complex moment(int m, int n) const;
  double real_moment(int i, int j) const;

  /// sum_{ij} p_ij tau_ij; requires degree(p) <= max_degree.
  double expect(const Polynomial& p) const;

  /// max |tau_ij| over i+j <= degree; the scale used by detection
  /// tolerances.
  double moment_scale(int degree) const;

 private:
  int max_degree_;
  std::vector<Complex> moments_;
  std::vector<double> real_moments_;
};

}  // namespace qlab

#endif
