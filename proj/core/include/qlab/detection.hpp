#ifndef QLAB_DETECTION_HPP
#define QLAB_DETECTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlab/bochner.hpp"
#include "qlab/hierarchy.hpp"
#include "qlab/state.hpp"
#include "qlab/witness.hpp"

namespace qlab {

inline constexpr std::uint64_t kDefaultSeed = 20240613;

struct DetectionOptions {
  int m_max = 10;
  int k_max = 7;
  int phi_grid = 360;
  int bochner_k = 3;        // searches run for k = 2..bochner_k
  int bochner_budget = 10000;
  double bochner_box = 2.0;
  std::uint64_t seed = kDefaultSeed;
};

struct WitnessResult {
  std::string label;
  double value = 0.0;
  double tol = 0.0;
  bool detected = false;
};

struct BochnerSearchResult {
  int k = 0;
  bool found = false;
  double determinant = 0.0;
  std::vector<Complex> points;
};

/// Combined verdict of the witness library, the squeezing scan, the moment
/// hierarchy, and the Bochner determinant search.
struct DetectionReport {
  std::string verdict;  // "nonclassical" or "classical_up_to"
  std::optional<int> degree;
  int m_max = 0;   // effective (possibly capped by a Fock truncation)
  int k_max = 0;   // effective scan order
  std::vector<WitnessResult> witnesses;
  SqueezingScanReport squeezing;
  std::vector<BochnerSearchResult> bochner;
  DetectionOptions options;
};

DetectionReport run_detection(const QuantumState& state,
                              const DetectionOptions& options = {});

}  // namespace qlab

#endif
