#include "qlab/bochner.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qlab/errors.hpp"
#include "qlab/expectation.hpp"
#include "qlab/parallel.hpp"
#include "qlab/rng.hpp"

namespace qlab {

namespace {

constexpr double kViolationTol = 1e-8;

double hermitian_det(const Eigen::MatrixXcd& block) {
  if (block.rows() <= 8) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
    double det = 1.0;
    for (Eigen::Index t = 0; t < es.eigenvalues().size(); ++t)
      det *= es.eigenvalues()(t);
    return det;
  }
  const Complex det = Eigen::PartialPivLU<Eigen::MatrixXcd>(block).determinant();
  if (std::abs(det.imag()) > 1e-9 * (1.0 + std::abs(det.real())))
    throw HermiticityError("determinant of a Bochner block came out complex");
  return det.real();
}

// Determinant of the full difference matrix without the public
// constructor's distinctness check; duplicate points just make the matrix
// singular, which the search treats as a non-violation.
double bochner_det(const QuantumState& state, const std::vector<Complex>& points) {
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXcd b(n, n);
  for (int i = 0; i < n; ++i) {
    b(i, i) = char_fn(state, Complex(0.0, 0.0));
    for (int j = i + 1; j < n; ++j) {
      b(i, j) = char_fn(state, points[i] - points[j]);
      b(j, i) = std::conj(b(i, j));
    }
  }
  return hermitian_det(b);
}

// One Nelder-Mead run on f over R^d, budget-capped.
std::pair<Eigen::VectorXd, double> nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& f, Eigen::VectorXd start,
    double scale, int max_evals) {
  const int d = static_cast<int>(start.size());
  int evals = 0;
  std::vector<std::pair<double, Eigen::VectorXd>> simplex;
  simplex.reserve(d + 1);
  simplex.push_back({f(start), start});
  ++evals;
  for (int t = 0; t < d; ++t) {
    Eigen::VectorXd v = start;
    v(t) += scale;
    simplex.push_back({f(v), v});
    ++evals;
  }
  const auto by_value = [](const auto& a, const auto& b) { return a.first < b.first; };
  std::sort(simplex.begin(), simplex.end(), by_value);
  while (evals < max_evals) {
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int t = 0; t < d; ++t) centroid += simplex[t].second;
    centroid /= d;
    const auto& worst = simplex[d];
    const Eigen::VectorXd reflected = centroid + (centroid - worst.second);
    const double fr = f(reflected);
    ++evals;
    if (fr < simplex[0].first) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - worst.second);
      const double fe = f(expanded);
      ++evals;
      simplex[d] = fe < fr ? std::make_pair(fe, expanded) : std::make_pair(fr, reflected);
    } else if (fr < simplex[d - 1].first) {
      simplex[d] = {fr, reflected};
    } else {
      const Eigen::VectorXd contracted = centroid + 0.5 * (worst.second - centroid);
      const double fc = f(contracted);
      ++evals;
      if (fc < worst.first) {
        simplex[d] = {fc, contracted};
      } else {
        for (int t = 1; t <= d; ++t) {
          simplex[t].second = simplex[0].second + 0.5 * (simplex[t].second - simplex[0].second);
          simplex[t].first = f(simplex[t].second);
          ++evals;
        }
      }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
    if (std::abs(simplex[d].first - simplex[0].first) < 1e-14 * (1.0 + std::abs(simplex[0].first)))
      break;
  }
  return {simplex[0].second, simplex[0].first};
}

std::vector<Complex> unpack_points(const Eigen::VectorXd& v) {
  std::vector<Complex> points(1, Complex(0.0, 0.0));
  for (Eigen::Index t = 0; t + 1 < v.size(); t += 2)
    points.push_back(Complex(v(t), v(t + 1)));
  return points;
}

}  // namespace

BochnerMatrix bochner_matrix(const QuantumState& state,
                             const std::vector<Complex>& points) {
  if (points.empty()) throw Error("bochner_matrix: no points");
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b)
      if (points[a] == points[b])
        throw Error("bochner_matrix: points must be pairwise distinct");
  const int n = static_cast<int>(points.size());
  BochnerMatrix bm;
  bm.points = points;
  bm.entries.resize(n, n);
  double tail = state.is_fock() ? state.fock().tail_bound() : 0.0;
  for (int i = 0; i < n; ++i) {
    bm.entries(i, i) = char_fn(state, Complex(0.0, 0.0));
    if (std::abs(bm.entries(i, i) - Complex(1.0, 0.0)) > 1e-10 + tail)
      throw Error("bochner_matrix: char_fn(0) deviates from 1");
    for (int j = i + 1; j < n; ++j) {
      bm.entries(i, j) = char_fn(state, points[i] - points[j]);
      bm.entries(j, i) = std::conj(bm.entries(i, j));
    }
  }
  return bm;
}

std::vector<double> leading_minors(const BochnerMatrix& bm) {
  const int n = static_cast<int>(bm.entries.rows());
  std::vector<double> minors(n);
  for (int s = 1; s <= n; ++s) minors[s - 1] = hermitian_det(bm.entries.topLeftCorner(s, s));
  return minors;
}

std::optional<BochnerViolation> search_violation(const QuantumState& state, int k,
                                                 int budget, double box,
                                                 std::uint64_t seed) {
  if (k < 2) throw Error("search_violation: k must be at least 2");
  if (budget < 16) throw Error("search_violation: budget too small");
  const int d = 2 * (k - 1);

  const auto objective = [&](const Eigen::VectorXd& v) {
    return bochner_det(state, unpack_points(v));
  };

  // Latin-hypercube seeds: one stratum per seed and axis, randomly paired.
  const int n_seeds = std::max(8, budget / 4);
  Rng rng(seed);
  std::vector<Eigen::VectorXd> seeds(n_seeds, Eigen::VectorXd::Zero(d));
  for (int axis = 0; axis < d; ++axis) {
    std::vector<int> strata(n_seeds);
    std::iota(strata.begin(), strata.end(), 0);
    for (int t = n_seeds - 1; t > 0; --t)
      std::swap(strata[t], strata[rng.next_u64() % static_cast<std::uint64_t>(t + 1)]);
    for (int s = 0; s < n_seeds; ++s) {
      const double u = (strata[s] + rng.uniform()) / n_seeds;
      seeds[s](axis) = -box + 2.0 * box * u;
    }
  }

  std::vector<double> values(n_seeds);
  parallel_for(static_cast<std::size_t>(n_seeds),
               [&](std::size_t s) { values[s] = objective(seeds[s]); });

  std::vector<int> order(n_seeds);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });

  if (values[order[0]] < -kViolationTol) {
    return BochnerViolation{unpack_points(seeds[order[0]]), values[order[0]]};
  }

  const int refinements = std::min(3, n_seeds);
  const int per_refine = std::max(32, (budget - n_seeds) / std::max(1, refinements));
  Eigen::VectorXd best_point = seeds[order[0]];
  double best_value = values[order[0]];
  for (int r = 0; r < refinements; ++r) {
    auto [pt, value] = nelder_mead(objective, seeds[order[r]], 0.1 * box, per_refine);
    if (value < best_value) {
      best_value = value;
      best_point = pt;
    }
    if (best_value < -kViolationTol) break;
  }
  if (best_value < -kViolationTol)
    return BochnerViolation{unpack_points(best_point), best_value};
  return std::nullopt;
}

}  // namespace qlab
