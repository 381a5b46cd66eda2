#include "gruss/json_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace gruss {

namespace {

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " is not a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + " is not finite");
  return v;
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return finite_number(j, "complex value");
  if (!j.is_array() || j.size() != 2)
    throw ParseError("complex value must be [re, im]");
  return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
}

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (const Complex& z : m.entries()) entries.push_back(complex_to_json(z));
  return {{"n", m.n()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("matrix field 'n' must be an integer");
  const auto n = j["n"].get<long long>();
  if (n < 1) throw ParseError("matrix field 'n' must be positive");
  if (!j.contains("entries") || !j["entries"].is_array())
    throw ParseError("matrix field 'entries' must be an array");
  const json& e = j["entries"];
  const auto expected = static_cast<std::size_t>(n * n);
  if (e.size() != expected)
    throw ParseError("matrix has " + std::to_string(e.size()) +
                     " entries, expected n^2 = " + std::to_string(expected));
  std::vector<Complex> data;
  data.reserve(expected);
  for (const json& z : e) data.push_back(complex_from_json(z));
  return ComplexMatrix(static_cast<std::size_t>(n), std::move(data));
}

DensityOperator state_from_json(const json& j,
                                const OptimizerSettings& settings) {
  return DensityOperator(matrix_from_json(j), settings);
}

json disc_to_json(const Disc& d) {
  return {{"center", complex_to_json(d.center)}, {"radius", d.radius}};
}

Disc disc_from_json(const json& j) {
  if (!j.is_object() || !j.contains("center") || !j.contains("radius"))
    throw ParseError("disc needs 'center' and 'radius'");
  Disc d{complex_from_json(j["center"]), finite_number(j["radius"], "radius")};
  if (d.radius < 0.0) throw ParseError("disc radius must be non-negative");
  return d;
}

json points_to_json(std::span<const Complex> points) {
  json out = json::array();
  for (const Complex& z : points) out.push_back(complex_to_json(z));
  return out;
}

json report_to_json(const BoundChainReport& r) {
  json terms = json::array(), slacks = json::array(), holds = json::array(),
       relations = json::array(), tolerances = json::array();
  for (const auto& t : r.terms) terms.push_back({{"label", t.label}, {"value", t.value}});
  for (const auto& l : r.links) {
    slacks.push_back(l.slack);
    holds.push_back(l.holds);
    relations.push_back(l.relation == Relation::kLessEqual ? "<=" : "==");
    tolerances.push_back(l.tolerance);
  }
  json meta = {{"chain", r.chain},
               {"relations", std::move(relations)},
               {"tolerances", std::move(tolerances)},
               {"all_hold", r.all_hold()}};
  for (const auto& [k, v] : r.metrics) meta[k] = v;
  for (const auto& [k, v] : r.notes) meta[k] = v;
  return {{"terms", std::move(terms)},
          {"slacks", std::move(slacks)},
          {"holds", std::move(holds)},
          {"meta", std::move(meta)}};
}

json zoo_spec_to_json(const ZooSpec& s) {
  json j = {{"family", to_string(s.family)}, {"dim", s.dim}, {"seed", s.seed}};
  if (s.rank) j["rank"] = *s.rank;
  if (s.fixture_name) j["fixture_name"] = *s.fixture_name;
  if (s.eigenvalue != Complex(0.0)) j["eigenvalue"] = complex_to_json(s.eigenvalue);
  if (s.perturbation != 0.0) j["perturbation"] = s.perturbation;
  if (s.vector) j["vector"] = points_to_json(*s.vector);
  return j;
}

ZooSpec zoo_spec_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("zoo spec must be an object");
  try {
    ZooSpec s;
    s.family = family_from_string(j.at("family").get<std::string>());
    s.dim = j.value("dim", std::size_t{2});
    s.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("rank")) s.rank = j["rank"].get<std::size_t>();
    if (j.contains("fixture_name")) s.fixture_name = j["fixture_name"].get<std::string>();
    if (j.contains("eigenvalue")) s.eigenvalue = complex_from_json(j["eigenvalue"]);
    if (j.contains("perturbation"))
      s.perturbation = finite_number(j["perturbation"], "perturbation");
    if (j.contains("vector")) {
      CVector v;
      for (const json& z : j["vector"]) v.push_back(complex_from_json(z));
      s.vector = std::move(v);
    }
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("zoo spec: ") + e.what());
  }
}

std::string fingerprint(const ComplexMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* p, std::size_t len) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::uint64_t n = m.n();
  mix(&n, sizeof n);
  for (const Complex& z : m.entries()) {
    const double parts[2] = {z.real(), z.imag()};
    mix(parts, sizeof parts);
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "lambda,mu,h_lambda,h_mu,k,bound,lhs,slack\n";
  for (const auto& r : rows)
    os << r.lambda << ',' << r.mu << ',' << r.h_lambda << ',' << r.h_mu << ','
       << r.k << ',' << r.bound << ',' << r.lhs << ',' << r.slack << '\n';
  return os.str();
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ParseError("failed writing '" + path.string() + "'");
}

}  // namespace gruss
