#ifndef QLAB_BOCHNER_HPP
#define QLAB_BOCHNER_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "qlab/state.hpp"

namespace qlab {

/// Matrix of characteristic-function differences B(i, j) =
/// char_fn(xi_i - xi_j); Hermitian with unit diagonal. A probability
/// P-distribution makes every such matrix PSD, so a negative leading
/// principal minor certifies nonclassicality.
struct BochnerMatrix {
  std::vector<Complex> points;
  Eigen::MatrixXcd entries;
};

/// Builds the matrix; points must be pairwise distinct. Entries are
/// computed on the upper triangle and mirrored, so Hermitian symmetry is
/// exact.
BochnerMatrix bochner_matrix(const QuantumState& state,
                             const std::vector<Complex>& points);

/// Determinants D_1..D_n of the leading principal submatrices. Sizes up to
/// 8 go through eigenvalue products (exactly real); larger blocks use LU
/// with the imaginary residue asserted.
std::vector<double> leading_minors(const BochnerMatrix& bm);

struct BochnerViolation {
  std::vector<Complex> points;  // xi_1 = 0 pinned
  double determinant = 0.0;     // the negative D_k found
};

/// Random + local search for point sets with D_k < 0: Latin-hypercube
/// seeds over [-box, box]^{2(k-1)} refined by Nelder-Mead. Returns the
/// first certified violation (D_k < -1e-8) or absent; absence proves
/// nothing.
std::optional<BochnerViolation> search_violation(const QuantumState& state, int k,
                                                 int budget, double box,
                                                 std::uint64_t seed = 20240613);

}  // namespace qlab

#endif
