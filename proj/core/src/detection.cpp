#include "qlab/detection.hpp"

#include <algorithm>
#include <cmath>

#include "qlab/errors.hpp"
#include "qlab/expectation.hpp"

namespace qlab {

DetectionReport run_detection(const QuantumState& state, const DetectionOptions& options) {
  DetectionReport report;
  report.options = options;

  // A Fock truncation of dimension D only supports single-side moment
  // orders up to D-1; witness degrees and hierarchy levels are capped to
  // fit and the effective values are echoed in the report.
  int degree_cap = 2 * std::max(options.m_max, 2 * options.k_max);
  if (state.is_fock()) degree_cap = state.fock().dim() - 1;
  if (degree_cap < 2)
    throw TruncationError("state truncation too small for any moment matrix");

  report.k_max = std::max(1, std::min(options.k_max, degree_cap / 2));
  report.m_max = std::max(2, std::min(options.m_max, degree_cap - degree_cap % 2));

  int table_degree = 2 * report.k_max;
  const auto library = standard_witness_library();
  for (const auto& witness : library)
    if (witness.degree <= degree_cap)
      table_degree = std::max(table_degree, witness.degree);
  const MomentTable table(state, table_degree);

  for (const auto& witness : library) {
    if (witness.degree > degree_cap) continue;
    WitnessResult r;
    r.label = witness.label;
    const Polynomial p = witness.build(state);
    r.value = table.expect(p);
    r.tol = kPsdTol * (1.0 + table.moment_scale(p.degree()));
    r.detected = r.value < -r.tol;
    report.witnesses.push_back(std::move(r));
  }

  report.squeezing = squeezing_scan(state, report.k_max, options.phi_grid);

  const DegreeResult degree = quantumness_degree(state, report.m_max);
  report.degree = degree.degree;

  for (int k = 2; k <= options.bochner_k; ++k) {
    BochnerSearchResult r;
    r.k = k;
    const auto hit = search_violation(state, k, options.bochner_budget,
                                      options.bochner_box, options.seed + k);
    r.found = hit.has_value();
    if (hit) {
      r.determinant = hit->determinant;
      r.points = hit->points;
    }
    report.bochner.push_back(std::move(r));
  }

  bool nonclassical = report.degree.has_value() || report.squeezing.any_detected;
  for (const auto& w : report.witnesses) nonclassical = nonclassical || w.detected;
  for (const auto& b : report.bochner) nonclassical = nonclassical || b.found;
  report.verdict = nonclassical ? "nonclassical" : "classical_up_to";
  return report;
}

}  // namespace qlab
