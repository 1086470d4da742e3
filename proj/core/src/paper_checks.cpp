#include "qlab/paper_checks.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <sstream>

#include "qlab/errors.hpp"
#include "qlab/expectation.hpp"
#include "qlab/rng.hpp"
#include "qlab/witness.hpp"
#include "qlab/witness_builder.hpp"

namespace qlab {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Closed-form reference values for the example-state expectations.
double motzkin_reference(double eps) {
  return (2.0 / example_norm_squared()) * std::exp(-2.0) * std::cos(2.0) * eps;
}

double choi_lam_reference(double eps) {
  return -(4.0 / example_norm_squared()) * std::exp(-2.0) * std::sin(2.0) * eps;
}

double w_ab_sign_reference(double A, double B) {
  const double s = A + B;
  return std::cos(2.0) * (s * s - 4.0 * A * A) + 4.0 * std::sin(2.0) * A * s;
}

PaperCheck check_dehomogenized_value(const std::string& name, const Polynomial3& form,
                                     double (*reference)(double)) {
  const auto start = Clock::now();
  PaperCheck check;
  check.name = name;
  double worst = 0.0;
  bool pass = true;
  for (const double eps : {0.1, 0.5, 1.0}) {
    for (int i = 1; i <= 4; ++i) {
      const QuantumState state = example_state(eps, i);
      for (const double z : {1.0, -1.0}) {
        const double value = normal_expect(state, dehomogenize(form, z));
        const double ref = reference(eps);
        const double rel = std::abs(value - ref) / std::abs(ref);
        worst = std::max(worst, rel);
        pass = pass && rel <= 1e-10;
      }
    }
  }
  check.pass = pass;
  check.seconds = elapsed_seconds(start);
  check.detail = "max relative error " + format(worst);
  return check;
}

PaperCheck check_w_ab_sign_law(std::uint64_t seed) {
  const auto start = Clock::now();
  PaperCheck check;
  check.name = "W_{A,B} sign law";
  Rng rng(seed);
  const QuantumState state = example_state(0.5, 1);
  const MomentTable table(state, 4);
  bool pass = true;
  int tested = 0;
  for (int t = 0; t < 1000; ++t) {
    const double theta = rng.uniform(0.0, 6.283185307179586);
    const double A = std::cos(theta);
    const double B = std::sin(theta);
    const double closed = w_ab_sign_reference(A, B);
    const double value = table.expect(w_ab(A, B));
    if (std::abs(closed) <= 1e-6) continue;  // sign too close to call
    ++tested;
    pass = pass && (value > 0) == (closed > 0) && std::abs(value) > 1e-9;
  }
  check.pass = pass && tested > 900;
  check.seconds = elapsed_seconds(start);
  check.detail = std::to_string(tested) + " decisive draws";
  return check;
}

PaperCheck check_null_space_family() {
  const auto start = Clock::now();
  PaperCheck check;
  check.name = "null-space family at (±1,±1)";
  const ZeroSet zeros({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  const WitnessFamily family = null_space_family(zeros, 2);
  bool pass = family.basis.size() == 2;
  double distance = 1.0;
  if (pass) {
    // Subspace distance to span{x^2 - 1, y^2 - 1} via principal angles.
    const auto basis = monomial_basis(2);
    const auto coeffs = [&](const Polynomial& p) {
      Eigen::VectorXd v(static_cast<Eigen::Index>(basis.size()));
      for (std::size_t t = 0; t < basis.size(); ++t)
        v(static_cast<Eigen::Index>(t)) = p.coefficient(basis[t].i, basis[t].j);
      return v;
    };
    Eigen::MatrixXd ours(basis.size(), 2), reference(basis.size(), 2);
    ours.col(0) = coeffs(family.basis[0]);
    ours.col(1) = coeffs(family.basis[1]);
    Polynomial rx, ry;
    rx.add_term(2, 0, 1.0);
    rx.add_term(0, 0, -1.0);
    ry.add_term(0, 2, 1.0);
    ry.add_term(0, 0, -1.0);
    reference.col(0) = coeffs(rx);
    reference.col(1) = coeffs(ry);
    const Eigen::MatrixXd q_ref =
        Eigen::HouseholderQR<Eigen::MatrixXd>(reference).householderQ() *
        Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(basis.size()), 2);
    // sin of the largest principal angle, computed from the projection
    // residual directly (stable for near-zero angles).
    const Eigen::MatrixXd residual = ours - q_ref * (q_ref.transpose() * ours);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
    distance = svd.singularValues().maxCoeff();
    pass = distance < 1e-10;
  }
  check.pass = pass;
  check.seconds = elapsed_seconds(start);
  check.detail = "dimension " + std::to_string(family.basis.size()) +
                 ", subspace distance " + format(distance);
  return check;
}

PaperCheck check_no_squeezing() {
  const auto start = Clock::now();
  PaperCheck check;
  check.name = "no squeezing up to order 14";
  std::vector<std::pair<double, QuantumState>> states;
  for (int t = 1; t <= 10; ++t) {
    const double eps = 0.1 * t;
    states.push_back({eps, example_state(eps, 1)});
  }
  const SqueezingScanReport scan = squeezing_scan(states, 7, 360);
  const ModifiedW4ScanReport modified = modified_w4_scan(states, 20);
  check.pass = scan.global_min >= -1e-9 && !scan.any_detected &&
               modified.min_value >= -1e-9 && !modified.detected;
  check.seconds = elapsed_seconds(start);
  check.detail = "scan min " + format(scan.global_min) + ", three-angle min " +
                 format(modified.min_value);
  return check;
}

PaperCheck check_number_squeezing() {
  const auto start = Clock::now();
  PaperCheck check;
  check.name = "number witness nonnegative";
  double worst = 1e300;
  for (int t = 1; t <= 20; ++t) {
    const double eps = 0.05 * t;
    const QuantumState state = example_state(eps, 1);
    worst = std::min(worst, normal_expect(state, number_witness(state)));
  }
  check.pass = worst >= -1e-10;
  check.seconds = elapsed_seconds(start);
  check.detail = "min over eps grid " + format(worst);
  return check;
}

PaperCheck check_measurement_count() {
  const auto start = Clock::now();
  PaperCheck check;
  check.name = "measurement count k(2k+3)";
  bool pass = true;
  for (int k = 1; k <= 10; ++k) {
    long long enumerated = 0;
    for (const auto& e : monomial_basis(2 * k))
      if (e.degree() >= 1) ++enumerated;
    pass = pass && measurement_count(k) == static_cast<long long>(k) * (2 * k + 3) &&
           measurement_count(k) == enumerated;
  }
  check.pass = pass;
  check.seconds = elapsed_seconds(start);
  check.detail = "k = 1..10 against enumeration";
  return check;
}

}  // namespace

std::vector<PaperCheck> run_paper_checks(std::uint64_t seed) {
  std::vector<PaperCheck> checks;
  checks.push_back(
      check_dehomogenized_value("Motzkin detection value", motzkin_form(), motzkin_reference));
  checks.push_back(
      check_dehomogenized_value("Choi-Lam detection value", choi_lam_form(), choi_lam_reference));
  checks.push_back(check_w_ab_sign_law(seed));
  checks.push_back(check_null_space_family());
  checks.push_back(check_no_squeezing());
  checks.push_back(check_number_squeezing());
  checks.push_back(check_measurement_count());
  return checks;
}

}  // namespace qlab
