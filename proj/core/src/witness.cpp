#include "qlab/witness.hpp"

#include <cmath>
#include <limits>

#include "qlab/errors.hpp"
#include "qlab/parallel.hpp"

namespace qlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kDetectTol = 1e-9;

std::pair<double, double> quadrature_means(const QuantumState& state) {
  const Complex a_mean = normal_moment(state, 0, 1);
  return {a_mean.real(), a_mean.imag()};
}

// Golden-section minimization of f on [lo, hi].
std::pair<double, double> golden_min(const std::function<double(double)>& f, double lo,
                                     double hi, int iters = 80) {
  constexpr double invphi = 0.6180339887498948482;
  double a = lo, b = hi;
  double c = b - (b - a) * invphi;
  double d = a + (b - a) * invphi;
  double fc = f(c), fd = f(d);
  for (int t = 0; t < iters && (b - a) > 1e-12; ++t) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * invphi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * invphi;
      fd = f(d);
    }
  }
  return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

}  // namespace

Polynomial d_phi(double mean_x, double mean_y, double phi) {
  Polynomial p;
  const double c = 2.0 * std::cos(phi);
  const double s = 2.0 * std::sin(phi);
  p.add_term(1, 0, c);
  p.add_term(0, 1, s);
  p.add_term(0, 0, -(c * mean_x + s * mean_y));
  return p;
}

Polynomial d_phi(const QuantumState& state, double phi) {
  const auto [mx, my] = quadrature_means(state);
  return d_phi(mx, my, phi);
}

double squeezing_coefficient(int k, int l) {
  if (k < 1 || l < 0 || l >= k) throw Error("squeezing_coefficient: bad indices");
  if (2 * k <= 20) {
    unsigned long long fact2k = 1;
    for (int t = 2; t <= 2 * k; ++t) fact2k *= static_cast<unsigned long long>(t);
    unsigned long long denom = 1ull << l;
    for (int t = 2; t <= l; ++t) denom *= static_cast<unsigned long long>(t);
    for (int t = 2; t <= 2 * (k - l); ++t) denom *= static_cast<unsigned long long>(t);
    return static_cast<double>(fact2k / denom);
  }
  return std::exp(std::lgamma(2 * k + 1.0) - l * std::log(2.0) -
                  std::lgamma(l + 1.0) - std::lgamma(2 * (k - l) + 1.0));
}

Polynomial squeezing_witness(double mean_x, double mean_y, int k, double phi) {
  if (k < 1) throw Error("squeezing_witness: k must be positive");
  const Polynomial d2 = d_phi(mean_x, mean_y, phi).pow(2);
  Polynomial w;
  Polynomial d2_pow = Polynomial::constant(1.0);
  std::vector<Polynomial> powers(k + 1);
  powers[0] = d2_pow;
  for (int j = 1; j <= k; ++j) {
    d2_pow *= d2;
    powers[j] = d2_pow;
  }
  for (int l = 0; l < k; ++l) w += squeezing_coefficient(k, l) * powers[k - l];
  return w;
}

Polynomial squeezing_witness(const QuantumState& state, int k, double phi) {
  const auto [mx, my] = quadrature_means(state);
  return squeezing_witness(mx, my, k, phi);
}

Polynomial modified_w4(double mean_x, double mean_y, double phi1, double phi2,
                       double phi3) {
  const Polynomial d1 = d_phi(mean_x, mean_y, phi1);
  const Polynomial d2 = d_phi(mean_x, mean_y, phi2);
  const Polynomial d3 = d_phi(mean_x, mean_y, phi3);
  return d1 * d1 * d2 * d2 + 6.0 * (d3 * d3);
}

Polynomial modified_w4(const QuantumState& state, double phi1, double phi2,
                       double phi3) {
  const auto [mx, my] = quadrature_means(state);
  return modified_w4(mx, my, phi1, phi2, phi3);
}

Polynomial number_witness(double mean_n) {
  Polynomial q;
  q.add_term(2, 0, 1.0);
  q.add_term(0, 2, 1.0);
  q.add_term(0, 0, -mean_n);
  return q * q;
}

Polynomial number_witness(const QuantumState& state) {
  const Complex n = normal_moment(state, 1, 1);
  return number_witness(n.real());
}

Polynomial3 motzkin_form() {
  Polynomial3 m;
  m.add_term(4, 2, 0, 1.0);
  m.add_term(2, 4, 0, 1.0);
  m.add_term(2, 2, 2, -3.0);
  m.add_term(0, 0, 6, 1.0);
  m.require_homogeneous();
  return m;
}

Polynomial3 choi_lam_form() {
  Polynomial3 s;
  s.add_term(4, 2, 0, 1.0);
  s.add_term(0, 4, 2, 1.0);
  s.add_term(2, 0, 4, 1.0);
  s.add_term(2, 2, 2, -3.0);
  s.require_homogeneous();
  return s;
}

Polynomial motzkin_witness() { return dehomogenize(motzkin_form(), 1.0); }

Polynomial choi_lam_witness() { return dehomogenize(choi_lam_form(), 1.0); }

Polynomial w_ab(double A, double B) {
  if (A == 0.0 && B == 0.0) throw DegenerateWitness("w_ab: A and B are both zero");
  Polynomial q;
  q.add_term(2, 0, A);
  q.add_term(0, 2, B);
  q.add_term(0, 0, -(A + B));
  return q * q;
}

long long measurement_count(int k) {
  if (k < 1) throw Error("measurement_count: k must be positive");
  return static_cast<long long>(k) * (2ll * k + 3ll);
}

std::vector<Witness> standard_witness_library() {
  std::vector<Witness> lib;
  lib.push_back({WitnessKind::Linear, "motzkin", 6,
                 [](const QuantumState&) { return motzkin_witness(); }});
  lib.push_back({WitnessKind::Linear, "choi-lam", 6,
                 [](const QuantumState&) { return choi_lam_witness(); }});
  lib.push_back({WitnessKind::Linear, "W_{0,1}", 4,
                 [](const QuantumState&) { return w_ab(0.0, 1.0); }});
  lib.push_back({WitnessKind::Linear, "W_{1,0}", 4,
                 [](const QuantumState&) { return w_ab(1.0, 0.0); }});
  lib.push_back({WitnessKind::Linear, "W_{1,1}", 4,
                 [](const QuantumState&) { return w_ab(1.0, 1.0); }});
  lib.push_back({WitnessKind::Nonlinear, "number", 4,
                 [](const QuantumState& s) { return number_witness(s); }});
  return lib;
}

SqueezingScanReport squeezing_scan(
    const std::vector<std::pair<double, QuantumState>>& states, int k_max,
    int phi_grid) {
  if (k_max < 1) throw Error("squeezing_scan: k_max must be positive");
  if (phi_grid < 4) throw Error("squeezing_scan: phi grid too coarse");
  SqueezingScanReport report;
  report.rows.resize(states.size() * static_cast<std::size_t>(k_max));
  const double step = kTwoPi / phi_grid;

  parallel_for(states.size(), [&](std::size_t si) {
    const auto& [eps, state] = states[si];
    const MomentTable table(state, 2 * k_max);
    const double mx = table.real_moment(1, 0);
    const double my = table.real_moment(0, 1);

    // e_j(phi) = <: d_phi^{2j} :>, shared across k at each grid angle.
    std::vector<double> best_value(k_max, std::numeric_limits<double>::infinity());
    std::vector<double> best_phi(k_max, 0.0);
    std::vector<double> ej(k_max + 1);
    for (int g = 0; g < phi_grid; ++g) {
      const double phi = g * step;
      const Polynomial d2 = d_phi(mx, my, phi).pow(2);
      Polynomial d2_pow = Polynomial::constant(1.0);
      for (int j = 1; j <= k_max; ++j) {
        d2_pow *= d2;
        ej[j] = table.expect(d2_pow);
      }
      for (int k = 1; k <= k_max; ++k) {
        double value = 0.0;
        for (int l = 0; l < k; ++l) value += squeezing_coefficient(k, l) * ej[k - l];
        if (value < best_value[k - 1]) {
          best_value[k - 1] = value;
          best_phi[k - 1] = phi;
        }
      }
    }

    for (int k = 1; k <= k_max; ++k) {
      const auto evaluate = [&](double phi) {
        return table.expect(squeezing_witness(mx, my, k, phi));
      };
      auto [phi_min, value] =
          golden_min(evaluate, best_phi[k - 1] - step, best_phi[k - 1] + step);
      if (best_value[k - 1] < value) {
        value = best_value[k - 1];
        phi_min = best_phi[k - 1];
      }
      SqueezingScanRow row;
      row.k = k;
      row.eps = eps;
      row.phi_min = phi_min < 0.0 ? phi_min + kTwoPi : phi_min;
      row.value = value;
      row.tol = kDetectTol * (1.0 + table.moment_scale(2 * k));
      row.detected = value < -row.tol;
      report.rows[si * k_max + (k - 1)] = row;
    }
  });

  report.global_min = std::numeric_limits<double>::infinity();
  for (const auto& row : report.rows) {
    report.global_min = std::min(report.global_min, row.value);
    report.any_detected = report.any_detected || row.detected;
  }
  return report;
}

SqueezingScanReport squeezing_scan(const QuantumState& state, int k_max, int phi_grid) {
  return squeezing_scan({{0.0, state}}, k_max, phi_grid);
}

ModifiedW4ScanReport modified_w4_scan(
    const std::vector<std::pair<double, QuantumState>>& states, int angles_per_axis) {
  if (angles_per_axis < 2) throw Error("modified_w4_scan: grid too coarse");
  ModifiedW4ScanReport report;
  report.min_value = std::numeric_limits<double>::infinity();
  const double step = kTwoPi / angles_per_axis;

  std::vector<ModifiedW4ScanReport> per_state(states.size());
  parallel_for(states.size(), [&](std::size_t si) {
    const auto& [eps, state] = states[si];
    const MomentTable table(state, 4);
    const double mx = table.real_moment(1, 0);
    const double my = table.real_moment(0, 1);

    std::vector<Polynomial> d2(angles_per_axis);
    std::vector<double> e1(angles_per_axis);
    for (int g = 0; g < angles_per_axis; ++g) {
      d2[g] = d_phi(mx, my, g * step).pow(2);
      e1[g] = table.expect(d2[g]);
    }
    // The grid minimum separates: min over (phi1, phi2) of <:d1^2 d2^2:>
    // plus 6 min over phi3 of <:d3^2:>.
    ModifiedW4ScanReport local;
    double best_pair = std::numeric_limits<double>::infinity();
    int b1 = 0, b2 = 0;
    for (int g1 = 0; g1 < angles_per_axis; ++g1)
      for (int g2 = 0; g2 < angles_per_axis; ++g2) {
        const double v = table.expect(d2[g1] * d2[g2]);
        if (v < best_pair) {
          best_pair = v;
          b1 = g1;
          b2 = g2;
        }
      }
    int b3 = 0;
    for (int g = 1; g < angles_per_axis; ++g)
      if (e1[g] < e1[b3]) b3 = g;
    local.min_value = best_pair + 6.0 * e1[b3];
    local.eps = eps;
    local.phi1 = b1 * step;
    local.phi2 = b2 * step;
    local.phi3 = b3 * step;
    local.tol = kDetectTol * (1.0 + table.moment_scale(4));
    local.detected = local.min_value < -local.tol;
    per_state[si] = local;
  });

  for (const auto& local : per_state)
    if (local.min_value < report.min_value) report = local;
  return report;
}

}  // namespace qlab
