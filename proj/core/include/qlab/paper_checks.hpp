#ifndef QLAB_PAPER_CHECKS_HPP
#define QLAB_PAPER_CHECKS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qlab/detection.hpp"

namespace qlab {

/// One quantitative claim checked against the engine.
struct PaperCheck {
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

/// Runs the fixed battery of closed-form reproduction checks:
/// Motzkin and Choi-Lam detection values, the W_{A,B} sign law, the
/// null-space witness family, the order-14 no-squeezing scan (including
/// the three-angle variant), number-squeezing nonnegativity, and the
/// measurement-count formula. Deterministic given the seed.
std::vector<PaperCheck> run_paper_checks(std::uint64_t seed = kDefaultSeed);

}  // namespace qlab

#endif
