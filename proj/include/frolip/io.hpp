#pragma once

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frolip/equivalence.hpp"
#include "frolip/selfsimilar.hpp"

// JSON documents and CSV tables used by the command-line tool.
//
// Ratio input:    {"rationals": ["1/3", "1/3"]}
//                 {"generators": ["l"], "monomials": [[5], [1]]}
// Defining data:  {"vectors": [[1, 0], [0, 1]]}
// A serialized system carries its ratio input, so it is valid input too.
namespace frolip::io {

using nlohmann::json;

inline constexpr const char* kVersionHeader = "# frobenius-lipschitz v0.1";

namespace detail {

inline std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline std::int64_t as_int(const json& v, const char* what) {
  if (!v.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return v.get<std::int64_t>();
}

inline ExponentVector as_vector(const json& v, const char* what) {
  if (!v.is_array()) throw ParseError(std::string(what) + " must be an array of integers");
  std::vector<std::int64_t> xs;
  for (const auto& x : v) xs.push_back(as_int(x, what));
  return ExponentVector(std::move(xs));
}

inline json vector_json(const ExponentVector& x) { return json(x.coords()); }

inline json rationals_json(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

}  // namespace detail

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("invalid JSON at " + detail::position(text, e.byte == 0 ? 0 : e.byte - 1));
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline json load_json(const std::string& path) { return parse_json(read_file(path)); }

inline bool has_ratios(const json& doc) { return doc.is_object() && (doc.contains("rationals") || doc.contains("monomials")); }

inline RatioList parse_ratio_list(const json& doc) {
  if (!doc.is_object()) throw ParseError("expected a JSON object");
  if (doc.contains("rationals")) {
    const auto& rs = doc.at("rationals");
    if (!rs.is_array()) throw ParseError("\"rationals\" must be an array");
    std::vector<Rational> out;
    for (const auto& r : rs) {
      if (r.is_string())
        out.push_back(parse_rational(r.get<std::string>()));
      else if (r.is_number_integer())
        out.emplace_back(r.get<std::int64_t>());
      else
        throw ParseError("ratios must be strings such as \"1/3\"");
    }
    return RatioList::from_rationals(out);
  }
  if (doc.contains("monomials")) {
    if (!doc.contains("generators") || !doc.at("generators").is_array())
      throw ParseError("\"monomials\" needs a \"generators\" array");
    std::vector<std::string> gens;
    for (const auto& g : doc.at("generators")) {
      if (!g.is_string()) throw ParseError("generator names must be strings");
      gens.push_back(g.get<std::string>());
    }
    std::vector<std::vector<std::int64_t>> mons;
    for (const auto& m : doc.at("monomials")) mons.push_back(detail::as_vector(m, "monomial").coords());
    return RatioList::from_monomials(std::move(gens), mons);
  }
  throw ParseError("expected \"rationals\" or \"generators\"/\"monomials\"");
}

inline ContractionSystem parse_system(const json& doc) { return build_system(parse_ratio_list(doc)); }

// Exponent vectors from either a ratio document or {"vectors": [...]}.
inline DefiningData parse_defining_data(const json& doc) {
  if (has_ratios(doc)) return parse_system(doc).defining_data();
  if (!doc.is_object() || !doc.contains("vectors") || !doc.at("vectors").is_array())
    throw ParseError("expected \"vectors\", \"rationals\" or \"monomials\"");
  std::vector<ExponentVector> xs;
  for (const auto& v : doc.at("vectors")) xs.push_back(detail::as_vector(v, "vector"));
  if (xs.empty()) throw DomainError("EmptyInput", "no vectors given");
  return DefiningData::from_vectors(xs);
}

inline json ratio_list_json(const RatioList& list) {
  json out = json::object();
  if (list.symbolic()) {
    out["generators"] = list.generators;
    json mons = json::array();
    for (const auto& r : list.ratios) mons.push_back(r.monomial());
    out["monomials"] = mons;
  } else {
    std::vector<Rational> rs;
    for (const auto& r : list.ratios) rs.push_back(r.rational());
    out["rationals"] = detail::rationals_json(rs);
  }
  return out;
}

inline json system_json(const ContractionSystem& sys) {
  json out = ratio_list_json(sys.ratios);
  json basis = json::object();
  basis["kind"] = sys.numeric() ? "prime" : "symbolic";
  if (sys.numeric()) {
    std::vector<std::string> ps;
    for (const auto& p : sys.basis.primes()) ps.push_back(to_string(p));
    basis["primes"] = ps;
  } else {
    basis["roots"] = sys.basis.root_names();
  }
  json elements = json::array();
  for (std::size_t i = 0; i < sys.basis.size(); ++i) elements.push_back(sys.basis.describe_element(i));
  basis["elements"] = elements;
  out["basis"] = basis;
  json exps = json::array();
  for (const auto& x : sys.exponents) exps.push_back(detail::vector_json(x));
  out["exponents"] = exps;
  out["delta"] = sys.delta ? json(*sys.delta) : json(nullptr);
  out["alpha"] = detail::rationals_json(sys.alpha.alpha);
  const auto eta = coplanar_functional(sys.exponents);
  out["coplanar_eta"] = eta.present() ? detail::rationals_json(*eta.eta) : json(nullptr);
  return out;
}

inline json cut_set_json(const CutSet& c, std::size_t alphabet) {
  json out = json::object();
  out["threshold"] = c.threshold.describe();
  json words = json::array();
  for (std::size_t i = 0; i < c.words.size(); ++i)
    words.push_back({{"word", word_to_string(c.words[i], alphabet)},
                     {"exponent_vector", detail::vector_json(c.exponents[i])},
                     {"ratio", c.ratios[i]}});
  out["words"] = words;
  return out;
}

inline json match_report_json(const MatchReport& r, std::size_t left_alphabet, std::size_t right_alphabet) {
  json out = json::object();
  out["feasible"] = r.feasible;
  out["m0"] = r.m0;
  out["left_words"] = to_string(r.left_size);
  out["right_words"] = to_string(r.right_size);
  out["relation_size"] = r.feasible ? json(r.relation_size) : json(nullptr);
  if (r.witness) {
    json pairs = json::array();
    for (const auto& [i, j] : *r.witness)
      pairs.push_back({word_to_string(i, left_alphabet), word_to_string(j, right_alphabet)});
    out["witness"] = pairs;
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

inline json verdict_json(const Verdict& v) {
  json out = json::object();
  out["result"] = to_string(v.result);
  out["reason"] = v.reason;
  if (v.certificate) {
    out["certificate"] = {{"kind", v.certificate->kind},
                          {"p", v.certificate->p},
                          {"q", v.certificate->q},
                          {"permutation", v.certificate->permutation}};
  } else {
    out["certificate"] = nullptr;
  }
  if (v.violation)
    out["violation"] = {
        {"invariant", v.violation->invariant}, {"first", v.violation->first}, {"second", v.violation->second}};
  json diag = json::array();
  for (const auto& d : v.diagnostics)
    diag.push_back({{"theta", d.theta}, {"gamma_first", d.first}, {"gamma_second", d.second}});
  out["diagnostics"] = {{"gamma", diag}};
  return out;
}

// CSV cells: doubles at 10 significant digits so output is stable across runs.
inline std::string cell(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) { out_ << kVersionHeader << "\n"; }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }

 private:
  std::ostream& out_;
};

}  // namespace frolip::io
