#include "fqco/problem_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "fqco/error.hpp"

namespace fqco {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& what) {
  throw ParseError("problem file: " + pointer + ": " + what);
}

double number_at(const json& j, const std::string& pointer) {
  if (!j.is_number()) schema_error(pointer, "expected a number");
  return j.get<double>();
}

std::vector<double> numbers_at(const json& j, const std::string& pointer) {
  if (!j.is_array()) schema_error(pointer, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(number_at(j[i], pointer + "/" + std::to_string(i)));
  return out;
}

BinaryPolynomial polynomial_at(const json& j, std::size_t n,
                               const std::string& pointer) {
  if (!j.is_object()) schema_error(pointer, "expected an object with Q, c, a");
  for (const auto& [key, value] : j.items())
    if (key != "Q" && key != "c" && key != "a")
      schema_error(pointer + "/" + key, "unknown field");

  std::vector<double> q;
  if (j.contains("Q")) {
    const json& jq = j["Q"];
    const std::string qp = pointer + "/Q";
    if (!jq.is_array()) schema_error(qp, "expected an array");
    if (!jq.empty() && jq[0].is_array()) {
      if (jq.size() != n)
        schema_error(qp, "expected " + std::to_string(n) + " rows");
      for (std::size_t r = 0; r < n; ++r) {
        auto row = numbers_at(jq[r], qp + "/" + std::to_string(r));
        if (row.size() != n)
          schema_error(qp + "/" + std::to_string(r),
                       "expected " + std::to_string(n) + " entries");
        q.insert(q.end(), row.begin(), row.end());
      }
    } else {
      q = numbers_at(jq, qp);
      if (q.size() != n * n)
        schema_error(qp, "expected " + std::to_string(n * n) + " entries");
    }
  }
  std::vector<double> c;
  if (j.contains("c")) {
    c = numbers_at(j["c"], pointer + "/c");
    if (c.size() != n)
      schema_error(pointer + "/c", "expected " + std::to_string(n) + " entries");
  }
  const double a = j.contains("a") ? number_at(j["a"], pointer + "/a") : 0.0;
  try {
    return BinaryPolynomial(n, std::move(q), std::move(c), a);
  } catch (const InputError& e) {
    schema_error(pointer + "/Q", e.what());
  }
}

std::vector<BinaryPolynomial> polynomial_list(const json& doc, const char* key,
                                              std::size_t n) {
  std::vector<BinaryPolynomial> out;
  if (!doc.contains(key)) return out;
  const json& list = doc[key];
  const std::string pointer = std::string("/") + key;
  if (!list.is_array()) schema_error(pointer, "expected an array");
  for (std::size_t i = 0; i < list.size(); ++i)
    out.push_back(polynomial_at(list[i], n, pointer + "/" + std::to_string(i)));
  return out;
}

}  // namespace

QcboProblem parse_problem_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("problem file: malformed JSON at byte " +
                     std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) schema_error("", "expected a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "n" && key != "objective" && key != "equalities" &&
        key != "inequalities" && key != "default_gamma" && key != "name" &&
        key != "description")
      schema_error("/" + key, "unknown field");
  if (!doc.contains("n") || !doc["n"].is_number_unsigned())
    schema_error("/n", "expected a non-negative integer");
  QcboProblem p;
  p.n = doc["n"].get<std::size_t>();
  if (p.n > 62) schema_error("/n", "too many variables");
  if (!doc.contains("objective")) schema_error("/objective", "missing");
  p.objective = polynomial_at(doc["objective"], p.n, "/objective");
  p.equalities = polynomial_list(doc, "equalities", p.n);
  p.inequalities = polynomial_list(doc, "inequalities", p.n);
  if (doc.contains("default_gamma")) {
    const double g = number_at(doc["default_gamma"], "/default_gamma");
    if (!(g >= 0)) schema_error("/default_gamma", "must be non-negative");
    p.default_gamma = g;
  }
  return p;
}

QcboProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open problem file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_json(buf.str());
}

json polynomial_to_json(const BinaryPolynomial& p) {
  json q = json::array();
  for (std::size_t i = 0; i < p.n(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < p.n(); ++j) row.push_back(p.q(i, j));
    q.push_back(std::move(row));
  }
  return json{{"Q", std::move(q)},
              {"c", std::vector<double>(p.linear().begin(), p.linear().end())},
              {"a", p.a()}};
}

json problem_to_json(const QcboProblem& p) {
  json doc{{"n", p.n}, {"objective", polynomial_to_json(p.objective)}};
  doc["equalities"] = json::array();
  for (const auto& v : p.equalities) doc["equalities"].push_back(polynomial_to_json(v));
  doc["inequalities"] = json::array();
  for (const auto& g : p.inequalities)
    doc["inequalities"].push_back(polynomial_to_json(g));
  if (p.default_gamma) doc["default_gamma"] = *p.default_gamma;
  return doc;
}

}  // namespace fqco
