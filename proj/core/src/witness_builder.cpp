#include "qlab/witness_builder.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "qlab/errors.hpp"
#include "qlab/expectation.hpp"

namespace qlab {

namespace {

constexpr double kDetectTol = 1e-9;
constexpr double kNullSpaceThreshold = 1e-10;

using IntPoint = std::pair<long long, long long>;

long long cross(const IntPoint& o, const IntPoint& a, const IntPoint& b) {
  return (a.first - o.first) * (b.second - o.second) -
         (a.second - o.second) * (b.first - o.first);
}

// Monotone-chain convex hull of integer points, counterclockwise.
std::vector<IntPoint> convex_hull(std::vector<IntPoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<IntPoint> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool hull_contains(const std::vector<IntPoint>& hull, const IntPoint& q) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return hull[0] == q;
  if (hull.size() == 2) {
    if (cross(hull[0], hull[1], q) != 0) return false;
    return std::min(hull[0].first, hull[1].first) <= q.first &&
           q.first <= std::max(hull[0].first, hull[1].first) &&
           std::min(hull[0].second, hull[1].second) <= q.second &&
           q.second <= std::max(hull[0].second, hull[1].second);
  }
  for (std::size_t t = 0; t < hull.size(); ++t)
    if (cross(hull[t], hull[(t + 1) % hull.size()], q) < 0) return false;
  return true;
}

// Monomials usable in an sos decomposition of p: the half-degree basis
// restricted to exponents whose double lies in the Newton polytope of p.
std::vector<Exponent2> newton_half_basis(const Polynomial& p) {
  std::vector<IntPoint> support;
  for (const auto& [e, c] : p.terms()) support.push_back({e.i, e.j});
  const auto hull = convex_hull(std::move(support));
  std::vector<Exponent2> basis;
  for (const auto& e : monomial_basis(p.degree() / 2))
    if (hull_contains(hull, {2ll * e.i, 2ll * e.j})) basis.push_back(e);
  return basis;
}

}  // namespace

ZeroSet::ZeroSet(std::vector<std::array<double, 2>> points) : points_(std::move(points)) {
  for (std::size_t a = 0; a < points_.size(); ++a)
    for (std::size_t b = a + 1; b < points_.size(); ++b)
      if (std::abs(points_[a][0] - points_[b][0]) <= 1e-12 &&
          std::abs(points_[a][1] - points_[b][1]) <= 1e-12)
        throw Error("ZeroSet: points must be pairwise distinct");
}

WitnessFamily null_space_family(const ZeroSet& zeros, int degree) {
  if (degree < 1) throw Error("null_space_family: degree must be at least 1");
  const auto basis = monomial_basis(degree);
  const Eigen::Index rows = static_cast<Eigen::Index>(zeros.points().size());
  const Eigen::Index cols = static_cast<Eigen::Index>(basis.size());
  if (rows == 0) throw Error("null_space_family: empty zero set");
  Eigen::MatrixXd evaluation(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& pt = zeros.points()[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < cols; ++c)
      evaluation(r, c) = ipow(pt[0], basis[c].i) * ipow(pt[1], basis[c].j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(evaluation, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = kNullSpaceThreshold * sv(0);
  Eigen::Index rank = 0;
  for (Eigen::Index t = 0; t < sv.size(); ++t)
    if (sv(t) > cutoff) ++rank;
  if (rank >= cols)
    throw EmptyFamily("no degree-" + std::to_string(degree) +
                      " polynomial vanishes on the zero set");
  WitnessFamily family;
  family.degree = degree;
  for (Eigen::Index c = rank; c < cols; ++c) {
    Polynomial b;
    for (Eigen::Index t = 0; t < cols; ++t)
      b.add_term(basis[t].i, basis[t].j, svd.matrixV()(t, c));
    family.basis.push_back(std::move(b));
  }
  return family;
}

std::optional<FamilyDetection> optimize_in_family(const QuantumState& state,
                                                  const WitnessFamily& family) {
  if (family.basis.empty()) throw Error("optimize_in_family: empty family");
  const int n = static_cast<int>(family.basis.size());
  const MomentTable table(state, 2 * family.degree);
  Eigen::MatrixXd gram(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = r; s < n; ++s)
      gram(r, s) = gram(s, r) = table.expect(family.basis[r] * family.basis[s]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const double min_eig = es.eigenvalues()(0);
  const double tol = kDetectTol * (1.0 + table.moment_scale(2 * family.degree));
  if (min_eig >= -tol) return std::nullopt;
  FamilyDetection det;
  det.direction = es.eigenvectors().col(0);
  det.value = min_eig;
  for (int r = 0; r < n; ++r) det.witness += det.direction(r) * family.basis[r];
  return det;
}

std::optional<std::vector<Polynomial>> sos_decompose(const Polynomial& p, int max_iter,
                                                     double tol) {
  if (p.is_zero()) return std::vector<Polynomial>{};
  if (p.degree() % 2 != 0) throw OddDegree("sos_decompose: polynomial degree is odd");

  const auto basis = newton_half_basis(p);
  const int n = static_cast<int>(basis.size());
  if (n == 0) return std::nullopt;

  // Entry groups by target monomial; every coefficient of p must be
  // reachable or the polynomial cannot be a square combination over the
  // admissible basis.
  std::map<Exponent2, std::vector<std::pair<int, int>>> groups;
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      groups[{basis[r].i + basis[s].i, basis[r].j + basis[s].j}].push_back({r, s});
  for (const auto& [e, c] : p.terms())
    if (groups.find(e) == groups.end()) return std::nullopt;

  const auto project_affine = [&](Eigen::MatrixXd& q) {
    for (const auto& [key, idx] : groups) {
      double sum = 0.0;
      for (const auto& [r, s] : idx) sum += q(r, s);
      const double corr = (p.coefficient(key.i, key.j) - sum) / idx.size();
      for (const auto& [r, s] : idx) q(r, s) += corr;
    }
  };
  const auto project_psd = [&](const Eigen::MatrixXd& q) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
    const Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0);
    return Eigen::MatrixXd(es.eigenvectors() * clamped.asDiagonal() *
                           es.eigenvectors().transpose());
  };

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  project_affine(gram);
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::MatrixXd psd = project_psd(gram);
    const double feasibility = (psd - gram).norm();
    gram = psd;
    project_affine(gram);
    if (feasibility < 0.01 * tol) break;
  }

  // Factor the PSD projection of the affine-feasible iterate and accept
  // only if the squares actually reconstruct p.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(project_psd(gram));
  const double eig_cut = 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff());
  std::vector<Polynomial> squares;
  for (int t = n - 1; t >= 0; --t) {
    if (es.eigenvalues()(t) <= eig_cut) continue;
    const double scale = std::sqrt(es.eigenvalues()(t));
    Polynomial q;
    for (int r = 0; r < n; ++r)
      q.add_term(basis[r].i, basis[r].j, scale * es.eigenvectors()(r, t));
    squares.push_back(std::move(q));
  }
  Polynomial reconstruction;
  for (const auto& q : squares) reconstruction += q * q;
  reconstruction -= p;
  double residual = 0.0;
  for (const auto& [e, c] : reconstruction.terms()) residual = std::max(residual, std::abs(c));
  if (residual > tol) return std::nullopt;
  return squares;
}

double psd_grid_check(const Polynomial& p, double box, int n) {
  if (n < 2) throw Error("psd_grid_check: need at least a 2x2 grid");
  double min_value = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a) {
    const double x = -box + 2.0 * box * a / (n - 1);
    for (int b = 0; b < n; ++b) {
      const double y = -box + 2.0 * box * b / (n - 1);
      min_value = std::min(min_value, p(x, y));
    }
  }
  return min_value;
}

}  // namespace qlab
