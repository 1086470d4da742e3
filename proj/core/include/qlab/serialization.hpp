#ifndef QLAB_SERIALIZATION_HPP
#define QLAB_SERIALIZATION_HPP

#include <string>

#include "qlab/detection.hpp"
#include "qlab/hierarchy.hpp"
#include "qlab/paper_checks.hpp"
#include "qlab/polynomial.hpp"
#include "qlab/state.hpp"
#include "qlab/witness.hpp"
#include "qlab/witness_builder.hpp"

namespace qlab {

inline constexpr const char* kVersion = "0.1.0";

/// Polynomial <-> {"terms": [{"i": int, "j": int, "c": float}, ...]}.
/// Round-trips are lossless for double coefficients.
std::string polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const std::string& text);

/// Polynomial3 terms carry an extra "k" exponent.
std::string polynomial3_to_json(const Polynomial3& p);
Polynomial3 polynomial3_from_json(const std::string& text);

/// {"type": "coherent_mixture", "components": [{"p": .., "amplitudes":
///   [{"re_c", "im_c", "re_a", "im_a"}, ...]}, ...]}
/// or {"type": "fock", "dim": int, "rho_re": [[..]], "rho_im": [[..]]}.
std::string state_to_json(const QuantumState& state);
QuantumState state_from_json(const std::string& text);

/// Zero sets are plain [[x, y], ...] arrays.
std::string zeros_to_json(const ZeroSet& zeros);
ZeroSet zeros_from_json(const std::string& text);

std::string family_to_json(const WitnessFamily& family);

/// Detection report with verdict, degree, witnesses, bochner section,
/// tolerances, seeds and versions. Byte-identical for equal seed + input.
std::string report_to_json(const DetectionReport& report);

std::string certificate_to_json(const HierarchyCertificate& cert,
                                const CertificateVerification& verification);

std::string paper_checks_to_json(const std::vector<PaperCheck>& checks);

/// CSV with columns k, phi_min, eps, value, verdict.
std::string scan_to_csv(const SqueezingScanReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qlab

#endif
