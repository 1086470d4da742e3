#include "qlab/serialization.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qlab/errors.hpp"

namespace qlab {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error("malformed JSON input");
  return j;
}

json polynomial_terms(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"i", e.i}, {"j", e.j}, {"c", c}});
  return terms;
}

Polynomial polynomial_from(const json& j) {
  Polynomial p;
  if (!j.contains("terms") || !j["terms"].is_array())
    throw Error("polynomial JSON must contain a \"terms\" array");
  for (const auto& term : j["terms"])
    p.add_term(term.at("i").get<int>(), term.at("j").get<int>(),
               term.at("c").get<double>());
  return p;
}

json complex_points(const std::vector<Complex>& points) {
  json out = json::array();
  for (const auto& z : points) out.push_back({{"re", z.real()}, {"im", z.imag()}});
  return out;
}

}  // namespace

std::string polynomial_to_json(const Polynomial& p) {
  return json{{"terms", polynomial_terms(p)}}.dump();
}

Polynomial polynomial_from_json(const std::string& text) {
  return polynomial_from(parse(text));
}

std::string polynomial3_to_json(const Polynomial3& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back({{"i", e.i}, {"j", e.j}, {"k", e.k}, {"c", c}});
  return json{{"terms", terms}}.dump();
}

Polynomial3 polynomial3_from_json(const std::string& text) {
  const json j = parse(text);
  Polynomial3 p;
  for (const auto& term : j.at("terms"))
    p.add_term(term.at("i").get<int>(), term.at("j").get<int>(),
               term.at("k").get<int>(), term.at("c").get<double>());
  return p;
}

std::string state_to_json(const QuantumState& state) {
  json j;
  if (state.is_coherent_mixture()) {
    j["type"] = "coherent_mixture";
    json comps = json::array();
    for (const auto& comp : state.coherent_mixture().components()) {
      json amps = json::array();
      for (const auto& a : comp.psi.amplitudes())
        amps.push_back({{"re_c", a.c.real()},
                        {"im_c", a.c.imag()},
                        {"re_a", a.alpha.real()},
                        {"im_a", a.alpha.imag()}});
      comps.push_back({{"p", comp.p}, {"amplitudes", amps}});
    }
    j["components"] = comps;
  } else {
    const auto& fock = state.fock();
    j["type"] = "fock";
    j["dim"] = fock.dim();
    json re = json::array(), im = json::array();
    for (int r = 0; r < fock.dim(); ++r) {
      json re_row = json::array(), im_row = json::array();
      for (int c = 0; c < fock.dim(); ++c) {
        re_row.push_back(fock.rho()(r, c).real());
        im_row.push_back(fock.rho()(r, c).imag());
      }
      re.push_back(re_row);
      im.push_back(im_row);
    }
    j["rho_re"] = re;
    j["rho_im"] = im;
  }
  return j.dump();
}

QuantumState state_from_json(const std::string& text) {
  const json j = parse(text);
  const std::string type = j.at("type").get<std::string>();
  if (type == "coherent_mixture") {
    std::vector<CoherentMixture::Component> comps;
    for (const auto& comp : j.at("components")) {
      std::vector<WeightedAmplitude> amps;
      for (const auto& a : comp.at("amplitudes"))
        amps.push_back({Complex(a.at("re_c").get<double>(), a.at("im_c").get<double>()),
                        Complex(a.at("re_a").get<double>(), a.at("im_a").get<double>())});
      comps.push_back({comp.at("p").get<double>(), CoherentSuperposition(std::move(amps))});
    }
    return QuantumState(CoherentMixture(std::move(comps)));
  }
  if (type == "fock") {
    const int dim = j.at("dim").get<int>();
    if (dim < 1) throw Error("fock state dim must be positive");
    const auto& re = j.at("rho_re");
    const auto& im = j.at("rho_im");
    Eigen::MatrixXcd rho(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        rho(r, c) = Complex(re.at(r).at(c).get<double>(), im.at(r).at(c).get<double>());
    return QuantumState(FockDensity(std::move(rho)));
  }
  throw Error("unknown state type \"" + type + "\"");
}

std::string zeros_to_json(const ZeroSet& zeros) {
  json j = json::array();
  for (const auto& pt : zeros.points()) j.push_back({pt[0], pt[1]});
  return j.dump();
}

ZeroSet zeros_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_array()) throw Error("zeros JSON must be an array of [x, y] pairs");
  std::vector<std::array<double, 2>> points;
  for (const auto& pt : j)
    points.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
  return ZeroSet(std::move(points));
}

std::string family_to_json(const WitnessFamily& family) {
  json basis = json::array();
  for (const auto& b : family.basis) basis.push_back({{"terms", polynomial_terms(b)}});
  return json{{"degree", family.degree}, {"basis", basis}}.dump();
}

std::string report_to_json(const DetectionReport& report) {
  json witnesses = json::array();
  for (const auto& w : report.witnesses)
    witnesses.push_back(
        {{"label", w.label}, {"value", w.value}, {"tol", w.tol}, {"detected", w.detected}});

  json scan_rows = json::array();
  for (const auto& row : report.squeezing.rows)
    scan_rows.push_back({{"k", row.k},
                         {"eps", row.eps},
                         {"phi_min", row.phi_min},
                         {"value", row.value},
                         {"detected", row.detected}});

  json bochner = json::array();
  for (const auto& b : report.bochner)
    bochner.push_back({{"k", b.k},
                       {"found", b.found},
                       {"determinant", b.determinant},
                       {"points", complex_points(b.points)}});

  json j{{"verdict", report.verdict},
         {"degree", report.degree ? json(*report.degree) : json(nullptr)},
         {"m_max", report.m_max},
         {"witnesses", witnesses},
         {"squeezing",
          {{"k_max", report.k_max},
           {"global_min", report.squeezing.global_min},
           {"detected", report.squeezing.any_detected},
           {"rows", scan_rows}}},
         {"bochner", bochner},
         {"tolerances",
          {{"psd", kPsdTol},
           {"imag_residue", kImagResidueTol},
           {"certificate", kCertTol}}},
         {"seeds", {{"seed", report.options.seed}}},
         {"versions", {{"qlab", kVersion}}}};
  return j.dump(2);
}

std::string certificate_to_json(const HierarchyCertificate& cert,
                                const CertificateVerification& verification) {
  json points = json::array();
  for (const auto& pt : cert.points) points.push_back({pt[0], pt[1]});
  json j{{"m", cert.m},
         {"epsilon", cert.epsilon},
         {"inner_eigen", cert.inner_eigen},
         {"outer_eigen", cert.outer_eigen},
         {"inner_scale", cert.inner_scale},
         {"outer_scale", cert.outer_scale},
         {"seed", cert.seed},
         {"points", points},
         {"curve", {{"terms", polynomial_terms(cert.curve)}}},
         {"witness", {{"terms", polynomial_terms(cert.witness)}}},
         {"reverification",
          {{"inner_eigen", verification.inner_eigen},
           {"outer_eigen", verification.outer_eigen},
           {"tail_bound", verification.tail_bound},
           {"verified", verification.verified}}},
         {"versions", {{"qlab", kVersion}}}};
  return j.dump(2);
}

std::string paper_checks_to_json(const std::vector<PaperCheck>& checks) {
  json rows = json::array();
  for (const auto& c : checks)
    rows.push_back(
        {{"name", c.name}, {"pass", c.pass}, {"seconds", c.seconds}, {"detail", c.detail}});
  return json{{"checks", rows}, {"versions", {{"qlab", kVersion}}}}.dump(2);
}

std::string scan_to_csv(const SqueezingScanReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "k,phi_min,eps,value,verdict\n";
  for (const auto& row : report.rows)
    os << row.k << ',' << row.phi_min << ',' << row.eps << ',' << row.value << ','
       << (row.detected ? "detected" : "none") << '\n';
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

}  // namespace qlab
