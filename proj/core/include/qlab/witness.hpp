#ifndef QLAB_WITNESS_HPP
#define QLAB_WITNESS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qlab/expectation.hpp"
#include "qlab/polynomial.hpp"
#include "qlab/state.hpp"

namespace qlab {

enum class WitnessKind { Linear, Nonlinear };

/// A witness is a rule producing an sos polynomial whose negative
/// expectation certifies nonclassicality. Nonlinear rules consume
/// first-pass moments of the tested state (quadrature means or <a†a>), so
/// the produced polynomial vanishes on every pure coherent state.
struct Witness {
  WitnessKind kind;
  std::string label;
  int degree;
  std::function<Polynomial(const QuantumState&)> build;
};

/// Displaced quadrature direction
///   d_phi(x, y) = 2 [x - <(a+a†)/2>] cos phi + 2 [y - <(a-a†)/2i>] sin phi.
/// The first overload runs the first pass itself; the second takes the
/// precomputed means.
Polynomial d_phi(const QuantumState& state, double phi);
Polynomial d_phi(double mean_x, double mean_y, double phi);

/// Exact coefficient (1/2^l) (2k)!/(l! [2(k-l)]!) of the squeezing witness.
double squeezing_coefficient(int k, int l);

/// w_2k(x, y; phi) = sum_{l=0}^{k-1} squeezing_coefficient(k, l) d_phi^{2(k-l)}.
/// Degree 2k; negative expectation means squeezing of order 2k.
Polynomial squeezing_witness(const QuantumState& state, int k, double phi);
Polynomial squeezing_witness(double mean_x, double mean_y, int k, double phi);

/// Three-angle variant d_{phi1}^2 d_{phi2}^2 + 6 d_{phi3}^2.
Polynomial modified_w4(const QuantumState& state, double phi1, double phi2, double phi3);
Polynomial modified_w4(double mean_x, double mean_y, double phi1, double phi2,
                       double phi3);

/// Number-squeezing witness w_P(x, y) = (x^2 + y^2 - <a†a>)^2; negative
/// expectation certifies sub-Poissonian statistics.
Polynomial number_witness(const QuantumState& state);
Polynomial number_witness(double mean_n);

/// The homogeneous Motzkin form (x^2 + y^2 - 3 z^2) x^2 y^2 + z^6 and the
/// Choi-Lam form x^4 y^2 + y^4 z^2 + z^4 x^2 - 3 x^2 y^2 z^2; both psd but
/// not sums of squares.
Polynomial3 motzkin_form();
Polynomial3 choi_lam_form();

/// The forms dehomogenized at z = 1 (even in z, so z = -1 is identical).
Polynomial motzkin_witness();
Polynomial choi_lam_witness();

/// W_{A,B}(x, y) = (A x^2 + B y^2 - A - B)^2; vanishes on (+-1, +-1).
/// Throws DegenerateWitness when A = B = 0.
Polynomial w_ab(double A, double B);

/// Number of distinct normally ordered moments of degree 1..2k, i.e. the
/// measurements needed to decide membership in S_2k: k(2k+3).
long long measurement_count(int k);

/// Fixed library used by the detection pipeline (squeezing witnesses are
/// handled by the scan, not listed here).
std::vector<Witness> standard_witness_library();

struct SqueezingScanRow {
  int k;
  double eps;      // family parameter of the scanned state (NaN-free; 0 for a single state)
  double phi_min;  // refined minimizing angle
  double value;    // refined minimum of <:w_2k:>
  double tol;      // detection threshold 1e-9 (1 + moment scale)
  bool detected;   // value < -tol
};

struct SqueezingScanReport {
  std::vector<SqueezingScanRow> rows;
  double global_min = 0.0;
  bool any_detected = false;
};

/// Scans <:w_2k:> over a phi grid (refined around the grid minimum by
/// golden-section descent) for every k = 1..k_max and every listed state.
SqueezingScanReport squeezing_scan(
    const std::vector<std::pair<double, QuantumState>>& states, int k_max,
    int phi_grid);
SqueezingScanReport squeezing_scan(const QuantumState& state, int k_max, int phi_grid);

struct ModifiedW4ScanReport {
  double min_value = 0.0;
  double eps = 0.0;
  double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
  double tol = 0.0;
  bool detected = false;
};

/// Minimum of <:d1^2 d2^2 + 6 d3^2:> over an angles_per_axis^3 grid.
ModifiedW4ScanReport modified_w4_scan(
    const std::vector<std::pair<double, QuantumState>>& states, int angles_per_axis);

}  // namespace qlab

#endif
