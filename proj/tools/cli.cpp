#include "cli.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qlab/detection.hpp"
#include "qlab/errors.hpp"
#include "qlab/expectation.hpp"
#include "qlab/hierarchy.hpp"
#include "qlab/paper_checks.hpp"
#include "qlab/serialization.hpp"
#include "qlab/witness_builder.hpp"

namespace qlab::cli {

namespace {

struct StateArgs {
  std::string file;
  double eps = 0.5;
  int i = 1;
  bool eps_given = false;
};

void add_state_options(CLI::App* cmd, StateArgs& args) {
  cmd->add_option("--state", args.file, "state JSON file");
  cmd->add_option("--eps", args.eps, "example-state mixing weight (when no --state)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--i", args.i, "example-state reference index")
      ->check(CLI::Range(1, 4));
}

QuantumState resolve_state(const StateArgs& args) {
  if (!args.file.empty()) return state_from_json(read_text_file(args.file));
  return example_state(args.eps, args.i);
}

void emit(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text << std::endl;
  } else {
    write_text_file(out_file, text);
  }
}

std::vector<std::pair<double, QuantumState>> example_sweep(int i) {
  std::vector<std::pair<double, QuantumState>> states;
  for (int t = 1; t <= 10; ++t) {
    const double eps = 0.1 * t;
    states.push_back({eps, example_state(eps, i)});
  }
  return states;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"qlab: nonclassicality witnesses, moment-matrix hierarchy and "
               "Bochner tests for single-mode bosonic states"};
  app.require_subcommand(1);

  // expect
  auto* expect_cmd = app.add_subcommand("expect", "normally ordered expectation of a polynomial");
  StateArgs expect_state;
  std::string expect_poly, expect_out;
  add_state_options(expect_cmd, expect_state);
  expect_cmd->add_option("--poly", expect_poly, "polynomial JSON file")->required();
  expect_cmd->add_option("--out", expect_out, "output file (default stdout)");

  // scan-squeezing
  auto* scan_cmd = app.add_subcommand("scan-squeezing",
                                      "minimize <:w_2k:> over phase angles, k = 1..kmax");
  StateArgs scan_state;
  int scan_kmax = 7, scan_grid = 360;
  std::string scan_out;
  add_state_options(scan_cmd, scan_state);
  scan_cmd->add_option("--kmax", scan_kmax, "largest k (witness degree 2k)")
      ->check(CLI::PositiveNumber);
  scan_cmd->add_option("--phi-grid", scan_grid, "number of grid angles");
  scan_cmd->add_option("--out", scan_out, "CSV output file");

  // detect
  auto* detect_cmd = app.add_subcommand("detect",
                                        "witness library + hierarchy + Bochner verdict");
  StateArgs detect_state;
  DetectionOptions detect_opts;
  std::string detect_out;
  add_state_options(detect_cmd, detect_state);
  detect_cmd->add_option("--mmax", detect_opts.m_max, "largest sos degree tested");
  detect_cmd->add_option("--kmax", detect_opts.k_max, "largest squeezing order");
  detect_cmd->add_option("--budget", detect_opts.bochner_budget, "Bochner search evaluations");
  detect_cmd->add_option("--seed", detect_opts.seed, "search seed");
  detect_cmd->add_option("--out", detect_out, "output file (default stdout)");

  // degree
  auto* degree_cmd = app.add_subcommand("degree", "quantumness degree via the S_m hierarchy");
  StateArgs degree_state;
  int degree_mmax = 10;
  std::string degree_out;
  add_state_options(degree_cmd, degree_state);
  degree_cmd->add_option("--mmax", degree_mmax, "largest even sos degree tested");
  degree_cmd->add_option("--out", degree_out, "output file (default stdout)");

  // build-witness
  auto* build_cmd = app.add_subcommand("build-witness",
                                       "witness family vanishing on prescribed zeros");
  std::string build_zeros, build_state_file, build_out;
  int build_degree = 2;
  build_cmd->add_option("--zeros", build_zeros, "zeros JSON file [[x,y],...]")->required();
  build_cmd->add_option("--degree", build_degree, "family degree")->check(CLI::PositiveNumber);
  build_cmd->add_option("--state", build_state_file, "optimize against this state");
  build_cmd->add_option("--out", build_out, "output file (default stdout)");

  // build-hier
  auto* hier_cmd = app.add_subcommand("build-hier",
                                      "construct a state in S_{m-2} \\ S_m with certificate");
  int hier_m = 4;
  std::uint64_t hier_seed = kDefaultSeed;
  std::vector<std::string> hier_out;
  hier_cmd->add_option("--m", hier_m, "hierarchy level (even, >= 4)")->required();
  hier_cmd->add_option("--seed", hier_seed, "construction seed");
  hier_cmd->add_option("--out", hier_out, "output files: state.json cert.json")
      ->expected(2)
      ->required();

  // bochner
  auto* bochner_cmd = app.add_subcommand("bochner", "search for a negative Bochner minor");
  StateArgs bochner_state;
  int bochner_k = 3, bochner_budget = 10000;
  double bochner_box = 2.0;
  std::uint64_t bochner_seed = kDefaultSeed;
  std::string bochner_out;
  add_state_options(bochner_cmd, bochner_state);
  bochner_cmd->add_option("--k", bochner_k, "matrix size")->check(CLI::Range(2, 16));
  bochner_cmd->add_option("--budget", bochner_budget, "determinant evaluations");
  bochner_cmd->add_option("--box", bochner_box, "search box half-width");
  bochner_cmd->add_option("--seed", bochner_seed, "search seed");
  bochner_cmd->add_option("--out", bochner_out, "output file (default stdout)");

  // reproduce-paper
  auto* repro_cmd = app.add_subcommand("reproduce-paper",
                                       "run every closed-form reproduction check");
  std::uint64_t repro_seed = kDefaultSeed;
  std::string repro_out;
  repro_cmd->add_option("--seed", repro_seed, "seed for the randomized checks");
  repro_cmd->add_option("--out", repro_out, "also write JSON results here");

  // measurement-count
  auto* count_cmd = app.add_subcommand("measurement-count",
                                       "moments needed for the S_2k test: k(2k+3)");
  int count_k = 1;
  count_cmd->add_option("--k", count_k, "polynomial order k")->required();

  // sos
  auto* sos_cmd = app.add_subcommand("sos", "heuristic sum-of-squares decomposition");
  std::string sos_poly, sos_out;
  int sos_max_iter = 10000;
  double sos_tol = 1e-8;
  sos_cmd->add_option("--poly", sos_poly, "polynomial JSON file")->required();
  sos_cmd->add_option("--max-iter", sos_max_iter, "projection iteration budget");
  sos_cmd->add_option("--tol", sos_tol, "reconstruction residual tolerance");
  sos_cmd->add_option("--out", sos_out, "output file (default stdout)");

  // make-state
  auto* make_cmd = app.add_subcommand("make-state", "write a state JSON file");
  std::string make_kind = "example", make_out;
  double make_eps = 0.5, make_re = 1.0, make_im = 0.0, make_r = 0.5;
  int make_i = 1, make_n = 1, make_dim = 20;
  make_cmd->add_option("--kind", make_kind, "example|coherent|fock-basis|squeezed|vacuum")
      ->check(CLI::IsMember({"example", "coherent", "fock-basis", "squeezed", "vacuum"}));
  make_cmd->add_option("--eps", make_eps, "example mixing weight");
  make_cmd->add_option("--i", make_i, "example reference index")->check(CLI::Range(1, 4));
  make_cmd->add_option("--alpha-re", make_re, "coherent amplitude, real part");
  make_cmd->add_option("--alpha-im", make_im, "coherent amplitude, imaginary part");
  make_cmd->add_option("--n", make_n, "number-state level");
  make_cmd->add_option("--r", make_r, "squeezing parameter");
  make_cmd->add_option("--dim", make_dim, "Fock truncation dimension");
  make_cmd->add_option("--out", make_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (expect_cmd->parsed()) {
      const QuantumState state = resolve_state(expect_state);
      const Polynomial poly = polynomial_from_json(read_text_file(expect_poly));
      const RealExpectation r = normal_expect_full(state, poly);
      char buffer[128];
      std::snprintf(buffer, sizeof(buffer),
                    "{\"value\": %.17g, \"imag_residue\": %.17g}", r.value,
                    r.imag_residue);
      emit(buffer, expect_out);
    } else if (scan_cmd->parsed()) {
      SqueezingScanReport report;
      if (!scan_state.file.empty() || scan_cmd->count("--eps") > 0) {
        const QuantumState state = resolve_state(scan_state);
        report = squeezing_scan({{scan_state.file.empty() ? scan_state.eps : 0.0, state}},
                                scan_kmax, scan_grid);
      } else {
        report = squeezing_scan(example_sweep(scan_state.i), scan_kmax, scan_grid);
      }
      emit(scan_to_csv(report), scan_out);
    } else if (detect_cmd->parsed()) {
      const DetectionReport report = run_detection(resolve_state(detect_state), detect_opts);
      emit(report_to_json(report), detect_out);
    } else if (degree_cmd->parsed()) {
      const DegreeResult result =
          quantumness_degree(resolve_state(degree_state), degree_mmax);
      std::string verdicts;
      for (const auto& v : result.verdicts) {
        char row[160];
        std::snprintf(row, sizeof(row),
                      "%s{\"m\": %d, \"min_eig\": %.17g, \"tol\": %.17g, "
                      "\"member\": %s}",
                      verdicts.empty() ? "" : ", ", v.m, v.min_eig, v.tol,
                      v.member ? "true" : "false");
        verdicts += row;
      }
      const std::string degree_text =
          result.degree ? std::to_string(*result.degree) : std::string("null");
      emit("{\"degree\": " + degree_text + ", \"m_max\": " + std::to_string(result.m_max) +
               ", \"verdicts\": [" + verdicts + "]}",
           degree_out);
    } else if (build_cmd->parsed()) {
      const ZeroSet zeros = zeros_from_json(read_text_file(build_zeros));
      const WitnessFamily family = null_space_family(zeros, build_degree);
      std::string text = family_to_json(family);
      if (!build_state_file.empty()) {
        const QuantumState state = state_from_json(read_text_file(build_state_file));
        const auto detection = optimize_in_family(state, family);
        text.pop_back();  // strip closing brace to append the detection section
        if (detection) {
          char head[96];
          std::snprintf(head, sizeof(head), ", \"detected\": true, \"value\": %.17g",
                        detection->value);
          text += std::string(head) +
                  ", \"witness\": " + polynomial_to_json(detection->witness) + "}";
        } else {
          text += ", \"detected\": false}";
        }
      }
      emit(text, build_out);
    } else if (hier_cmd->parsed()) {
      const HierarchyCertificate cert = build_hierarchy_state(hier_m, hier_seed);
      const CertificateVerification verification = reverify_certificate(cert);
      write_text_file(hier_out[0], state_to_json(cert.state));
      write_text_file(hier_out[1], certificate_to_json(cert, verification));
      std::cout << "wrote " << hier_out[0] << " and " << hier_out[1]
                << " (inner " << cert.inner_eigen << ", outer " << cert.outer_eigen
                << ", reverified " << (verification.verified ? "yes" : "no") << ")"
                << std::endl;
      if (!verification.verified) return 3;
    } else if (bochner_cmd->parsed()) {
      const QuantumState state = resolve_state(bochner_state);
      const auto hit = search_violation(state, bochner_k, bochner_budget, bochner_box,
                                        bochner_seed);
      std::string text;
      if (hit) {
        std::string points;
        for (const auto& z : hit->points) {
          char buffer[80];
          std::snprintf(buffer, sizeof(buffer), "%s[%.17g, %.17g]",
                        points.empty() ? "" : ", ", z.real(), z.imag());
          points += buffer;
        }
        char head[64];
        std::snprintf(head, sizeof(head), "{\"found\": true, \"Dk\": %.17g",
                      hit->determinant);
        text = std::string(head) + ", \"points\": [" + points + "]}";
      } else {
        text = "{\"found\": false, \"Dk\": null, \"points\": []}";
      }
      emit(text, bochner_out);
    } else if (repro_cmd->parsed()) {
      const auto checks = run_paper_checks(repro_seed);
      bool all_pass = true;
      std::printf("%-34s %-6s %9s  %s\n", "check", "status", "time", "detail");
      for (const auto& c : checks) {
        all_pass = all_pass && c.pass;
        std::printf("%-34s %-6s %8.2fs  %s\n", c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.seconds, c.detail.c_str());
      }
      if (!repro_out.empty()) write_text_file(repro_out, paper_checks_to_json(checks));
      return all_pass ? 0 : 1;
    } else if (count_cmd->parsed()) {
      std::cout << measurement_count(count_k) << std::endl;
    } else if (sos_cmd->parsed()) {
      const Polynomial poly = polynomial_from_json(read_text_file(sos_poly));
      const auto squares = sos_decompose(poly, sos_max_iter, sos_tol);
      std::string text;
      if (squares) {
        std::string parts;
        for (const auto& q : *squares) {
          if (!parts.empty()) parts += ", ";
          parts += polynomial_to_json(q);
        }
        text = "{\"decomposed\": true, \"squares\": [" + parts + "]}";
      } else {
        text = "{\"decomposed\": false, \"note\": "
               "\"no decomposition found (heuristic); not a non-sos certificate\"}";
      }
      emit(text, sos_out);
    } else if (make_cmd->parsed()) {
      std::optional<QuantumState> state;
      if (make_kind == "example") {
        state = example_state(make_eps, make_i);
      } else if (make_kind == "coherent") {
        state = QuantumState(coherent_state(Complex(make_re, make_im)));
      } else if (make_kind == "fock-basis") {
        state = QuantumState(fock_basis_state(make_n, make_dim));
      } else if (make_kind == "squeezed") {
        state = QuantumState(squeezed_vacuum(make_r, make_dim));
      } else {
        state = QuantumState(fock_basis_state(0, make_dim));
      }
      emit(state_to_json(*state), make_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  }
  return 0;
}

}  // namespace qlab::cli
