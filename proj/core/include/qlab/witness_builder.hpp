#ifndef QLAB_WITNESS_BUILDER_HPP
#define QLAB_WITNESS_BUILDER_HPP

#include <Eigen/Core>
#include <array>
#include <optional>
#include <vector>

#include "qlab/polynomial.hpp"
#include "qlab/state.hpp"

namespace qlab {

/// Prescribed real zeros for a witness family; points pairwise distinct.
class ZeroSet {
 public:
  explicit ZeroSet(std::vector<std::array<double, 2>> points);
  const std::vector<std::array<double, 2>>& points() const { return points_; }

 private:
  std::vector<std::array<double, 2>> points_;
};

/// Orthonormal basis of the degree-d polynomials vanishing on a ZeroSet;
/// candidate witnesses are squares of its span.
struct WitnessFamily {
  std::vector<Polynomial> basis;
  int degree = 0;
};

/// Null space of the point-evaluation matrix (rows = zeros, columns =
/// monomial_basis(degree)), computed by SVD with singular-value threshold
/// 1e-10 * sigma_max. Throws EmptyFamily when the null space is trivial.
WitnessFamily null_space_family(const ZeroSet& zeros, int degree);

struct FamilyDetection {
  Polynomial witness;        // sum_r t_r b_r, the square root of the detector
  Eigen::VectorXd direction; // unit vector t
  double value;              // min eigenvalue of G_rs = <:b_r b_s:>
};

/// Minimizes <:(sum_r t_r b_r)^2:> over unit t, i.e. solves the symmetric
/// eigenproblem on G_rs = <:b_r b_s:>. Returns the minimal eigenpair when
/// the minimum is below the detection threshold, absent otherwise.
std::optional<FamilyDetection> optimize_in_family(const QuantumState& state,
                                                  const WitnessFamily& family);

/// Heuristic sos decomposition: alternating projection between the affine
/// set of Gram matrices matching p's coefficients and the PSD cone, over
/// the Newton-polytope-reduced half-degree monomial basis. On success the
/// returned q_r satisfy sum q_r^2 = p within tol coefficient-wise. Absence
/// after the iteration budget is NOT a certificate of non-sos-ness.
/// Throws OddDegree when degree(p) is odd.
std::optional<std::vector<Polynomial>> sos_decompose(const Polynomial& p,
                                                     int max_iter = 10000,
                                                     double tol = 1e-8);

/// Minimum of p over an n-by-n grid on [-box, box]^2 (endpoints included).
double psd_grid_check(const Polynomial& p, double box, int n);

}  // namespace qlab

#endif
