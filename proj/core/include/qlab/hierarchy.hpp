#ifndef QLAB_HIERARCHY_HPP
#define QLAB_HIERARCHY_HPP

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qlab/expectation.hpp"
#include "qlab/polynomial.hpp"
#include "qlab/rng.hpp"
#include "qlab/state.hpp"

namespace qlab {

/// Relative PSD tolerance: a matrix counts as PSD when its minimum
/// eigenvalue is >= -1e-9 * (1 + max diagonal). Moment magnitudes grow
/// with degree, so the tolerance must be scale-aware.
inline constexpr double kPsdTol = 1e-9;

/// Certificate tolerance used by the hierarchy builder and its
/// re-verification: strict definiteness at 1e-8 * scale.
inline constexpr double kCertTol = 1e-8;

/// Order-k moment matrix M[(i,j),(i',j')] = <: x^{i+i'} y^{j+j'} :> over
/// the graded monomial basis; c^T M c = <: v^2 :> for v = sum c x^i y^j.
struct MomentMatrix {
  int k = 0;
  std::vector<Exponent2> basis;
  Eigen::MatrixXd entries;

  double min_eigenvalue() const;
  Eigen::VectorXd min_eigenvector() const;
  double psd_tolerance() const;  // kPsdTol * (1 + max diagonal)
  bool is_psd() const { return min_eigenvalue() >= -psd_tolerance(); }
};

MomentMatrix moment_matrix(const QuantumState& state, int k);
MomentMatrix moment_matrix(const MomentTable& table, int k);

struct SVerdict {
  int m = 0;          // even sos degree
  bool member = false;
  double min_eig = 0.0;
  double tol = 0.0;
};

/// Membership in S_m: PSD test of the order-(m/2) moment matrix.
SVerdict in_S(const QuantumState& state, int m);

struct DegreeResult {
  std::optional<int> degree;  // smallest even m <= m_max failing the S_m test
  int m_max = 0;
  std::vector<SVerdict> verdicts;  // m = 2, 4, ..., m_max

  bool detected() const { return degree.has_value(); }
};

/// Scans m = 2, 4, ..., m_max. Monotone consistency (once outside, always
/// outside) is asserted; a violation throws, since it would mean a
/// numerical-rank bug rather than physics.
DegreeResult quantumness_degree(const QuantumState& state, int m_max);

/// Polynomial v from the minimal eigenvector of the order-k moment matrix;
/// <: v^2 :> equals that eigenvalue. Throws NotDetected when the matrix is
/// PSD within tolerance.
Polynomial detecting_witness(const QuantumState& state, int k);

/// Points on the real variety u = 0, found by scanning x over [-box, box]
/// and bisecting sign changes in y; amplitudes |x + iy| are capped. Stops
/// after n points; may return fewer when the curve is too short.
std::vector<std::array<double, 2>> sample_points_on_curve(const Polynomial& u, int n,
                                                          double box,
                                                          double amplitude_cap,
                                                          Rng& rng);

/// Witness to the strictness of the hierarchy at level m: a state whose
/// order-(m-2)/2 moment matrix is positive definite while the order-m/2
/// one has a negative eigenvalue.
struct HierarchyCertificate {
  int m = 0;
  double epsilon = 0.0;
  double inner_eigen = 0.0;  // min eig of M_{(m-2)/2}, must be > tol
  double outer_eigen = 0.0;  // min eig of M_{m/2}, must be < -tol
  double inner_scale = 0.0;  // 1 + max diagonal of the inner matrix
  double outer_scale = 0.0;
  Polynomial curve;                   // the sampled u with w = u^2
  std::vector<std::array<double, 2>> points;
  Polynomial witness;                 // from the outer minimal eigenvector
  std::uint64_t seed = 0;
  QuantumState state;

  HierarchyCertificate() : state(CoherentMixture({{1.0, CoherentSuperposition({{Complex(1, 0), Complex(0, 0)}})}})) {}
};

struct HierarchyBuildOptions {
  int curve_attempts = 16;   // re-draws of u + point sets
  int psi_restarts = 64;     // random superpositions per point set
  int eps_steps = 40;        // halvings of the mixing weight
  double box = 2.0;
  double amplitude_cap = 2.5;
  int n_points = 0;          // 0 = midpoint of the allowed open interval
};

/// Constructive proof of S_{m-2} != S_m: samples a random w = u^2 of
/// degree m, picks n points on u = 0 off every lower-order sos variety,
/// mixes the face barycenter with a random superposition projector, and
/// bisects the mixing weight until the two eigen-verdicts split. Throws
/// ConstructionFailed after the retry budget.
HierarchyCertificate build_hierarchy_state(int m, std::uint64_t seed,
                                           const HierarchyBuildOptions& opts = {});

struct CertificateVerification {
  double inner_eigen = 0.0;
  double outer_eigen = 0.0;
  double inner_scale = 0.0;
  double outer_scale = 0.0;
  double tail_bound = 0.0;
  bool verified = false;
};

/// Rebuilds both moment matrices from scratch through the Fock-truncation
/// path and re-checks the eigen-verdicts at kCertTol.
CertificateVerification reverify_certificate(const HierarchyCertificate& cert,
                                             int fock_dim = 60);

}  // namespace qlab

#endif
