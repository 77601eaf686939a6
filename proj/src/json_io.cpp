#include "hyperlat/json_io.hpp"

#include "hyperlat/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hyperlat::json_io {

namespace {

[[noreturn]] void malformed(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::MalformedInput, (path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) malformed(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) malformed(path, std::string("missing key \"") + key + "\"");
  return *it;
}

}  // namespace

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, source + ": " + e.what() + " (byte " + std::to_string(e.byte) + ")");
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedInput, path + ": cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return parse(s.str(), path);
}

Integer integer_from(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
      malformed(path, "string \"" + s + "\" is not a decimal integer");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  if (j.is_number_float()) malformed(path, "floating-point value where an exact integer is required");
  malformed(path, std::string("expected an integer, got ") + j.type_name());
}

IntVector vector_from(const Json& j, const std::string& path) {
  if (!j.is_array()) malformed(path, "expected an array of integers");
  IntVector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from(j[i], path + "/" + std::to_string(i)));
  return v;
}

IntMatrix matrix_from(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) malformed(path, "expected a nonempty array of rows");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vector_from(j[i], path + "/" + std::to_string(i)));
    if (rows.back().size() != rows.front().size())
      malformed(path + "/" + std::to_string(i), "row length differs from row 0");
  }
  if (rows.front().empty()) malformed(path, "empty rows");
  return IntMatrix::from_rows(rows);
}

GramLattice lattice_from(const Json& j) {
  IntMatrix g = matrix_from(member(j, "gram", ""), "/gram");
  std::vector<std::string> labels;
  if (auto it = j.find("labels"); it != j.end()) {
    if (!it->is_array()) malformed("/labels", "expected an array of strings");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_string()) malformed("/labels/" + std::to_string(i), "expected a string");
      labels.push_back((*it)[i].get<std::string>());
    }
  }
  return GramLattice::build(std::move(g), std::move(labels));
}

IntMatrix isometry_matrix_from(const Json& j) { return matrix_from(member(j, "matrix", ""), "/matrix"); }

std::vector<IntMatrix> generator_matrices_from(const Json& j) {
  const Json& gens = member(j, "generators", "");
  if (!gens.is_array() || gens.empty()) malformed("/generators", "expected a nonempty array");
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string p = "/generators/" + std::to_string(i);
    out.push_back(matrix_from(member(gens[i], "matrix", p), p + "/matrix"));
  }
  return out;
}

// ---------------------------------------------------------------------------

Json to_json(const Integer& v) {
  if (auto small = to_int64(v)) return *small;
  return to_string(v);
}

Json to_json(const Rational& v) {
  if (denominator(v) == 1) return to_json(Integer(numerator(v)));
  return to_string(v);
}

Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json to_json(const std::vector<IntVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

Json lattice_json(const GramLattice& l) {
  Json j;
  j["gram"] = to_json(l.gram());
  if (!l.labels().empty()) j["labels"] = l.labels();
  return j;
}

double display(double x, int digits) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  const double r = std::strtod(buf, nullptr);
  return r == 0 ? 0.0 : r;  // no negative zero in output
}

Json display(const std::vector<double>& xs, int digits) {
  Json a = Json::array();
  for (double x : xs) a.push_back(display(x, digits));
  return a;
}

Json to_json(const CongruenceCertificate& c) {
  Json j;
  j["type"] = "congruence";
  j["modulus"] = to_json(c.modulus);
  j["target"] = to_json(c.target);
  j["primitive_at"] = to_json(c.primitive_at);
  j["residues_scanned"] = c.residues_scanned;
  return j;
}

Json to_json(const AnisotropyCertificate& c) {
  Json j;
  j["type"] = "local";
  j["target"] = to_json(c.target);
  j["diagonal"] = to_json(c.diagonal);
  j["place"] = c.place.str();
  j["test"] = std::string(to_string(c.test));
  j["observed"] = c.observed;
  j["required"] = c.required;
  return j;
}

Json to_json(const Certificate& c) {
  return std::visit([](const auto& x) { return to_json(x); }, c);
}

Json to_json(const SearchVerdict& v) {
  Json j;
  j["kind"] = std::string(to_string(v.kind));
  j["target"] = to_json(v.target);
  j["witness"] = v.witness ? to_json(*v.witness) : Json();
  j["certificate"] = v.certificate ? to_json(*v.certificate) : Json();
  j["height_bound"] = v.height_bound;
  return j;
}

Json to_json(const IsotropyVerdict& v) {
  Json j;
  j["kind"] = v.isotropic ? "Isotropic" : "Anisotropic";
  j["witness"] = v.witness ? to_json(*v.witness) : Json();
  j["certificate"] = v.certificate ? to_json(*v.certificate) : Json();
  return j;
}

Json to_json(const LatticeVerdict& v) {
  Json j;
  j["kind"] = std::string(to_string(v.kind));
  j["search"] = to_json(v.search);
  return j;
}

Json to_json(const FibrationVerdict& v) {
  Json j;
  j["kind"] = std::string(to_string(v.kind));
  j["witness"] = v.witness ? to_json(*v.witness) : Json();
  j["certificate"] = v.certificate ? to_json(*v.certificate) : Json();
  j["height"] = v.height;
  return j;
}

Json to_json(const EntropyReport& r, int digits) {
  Json j;
  Json findings = Json::array();
  for (const auto& f : r.findings) {
    Json x;
    x["word"] = word_string(f.word);
    x["class"] = std::string(to_string(f.kind));
    x["entropy"] = display(f.entropy, digits);
    findings.push_back(std::move(x));
  }
  j["findings"] = std::move(findings);
  j["positive_entropy_found"] = r.positive_entropy_found;
  j["word_budget"] = r.word_budget;
  j["verdict"] = r.verdict;
  j["context"] = r.context;
  j["conditional_flags"] = r.conditional_flags;
  return j;
}

Json to_json(const CriterionReport& r, int digits) {
  Json j;
  j["signature"] = {r.signature.positive, r.signature.negative};
  j["determinant"] = to_json(r.determinant);
  j["lattice_verdict"] = to_json(r.lattice_verdict);
  j["fibration_verdict"] = to_json(r.fibration_verdict);
  Json screen;
  screen["note"] = r.family_screen.note;
  if (r.family_screen.candidate) {
    const auto& c = *r.family_screen.candidate;
    screen["candidate"] = {{"family", c.kind == RankFiveSelector::Kind::D4 ? "D4" : "A2sq"}, {"parameter", c.parameter}};
  } else {
    screen["candidate"] = Json();
  }
  j["family_screen"] = std::move(screen);
  j["convex_cocompact_note"] = r.convex_cocompact_note;
  j["entropy"] = r.entropy ? to_json(*r.entropy, digits) : Json();
  j["conditional_flags"] = r.conditional_flags;
  return j;
}

}  // namespace hyperlat::json_io
