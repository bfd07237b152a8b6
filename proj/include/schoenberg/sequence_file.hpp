#pragma once

// JSON serialization of coefficient sequences:
//
//   {"dimension": 1, "kind": "exact", "n_max": 2, "values": ["1/2", "3/10", "1/5"]}
//
// Exact entries are reduced fractions "p/q" (or "p" for integers); float
// entries are shortest round-trip decimal strings. Writing is deterministic,
// so read -> write reproduces a written file byte for byte.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "json.hpp"

#include "schoenberg/dimension_walk.hpp"
#include "schoenberg/exactnum.hpp"

namespace schoenberg {

class sequence_file_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(x))
    throw sequence_file_error("not a finite decimal number: '" + std::string(s) + "'");
  return x;
}

/// Parses "p/q" or "p"; rejects zero or negative denominators and
/// fractions that are not in lowest terms.
inline Rational parse_rational(std::string_view s) {
  static const std::regex pattern(R"(^(-?[0-9]+)(?:/([0-9]+))?$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(s.begin(), s.end(), m, pattern))
    throw sequence_file_error("not a fraction: '" + std::string(s) + "'");
  const Integer num(m[1].str());
  const Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
  if (den == 0) throw sequence_file_error("zero denominator: '" + std::string(s) + "'");
  if (boost::multiprecision::gcd(num, den) != 1 && !(num == 0 && den == 1))
    throw sequence_file_error("fraction not in lowest terms: '" + std::string(s) + "'");
  return Rational(num, den);
}

inline const char* kind_name(NumericKind k) { return k == NumericKind::exact ? "exact" : "float"; }

template <Coefficient T>
nlohmann::json sequence_to_json(const CoeffSeq<T>& seq) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : seq.values) {
    if constexpr (std::is_same_v<T, Rational>)
      values.push_back(to_string(v));
    else
      values.push_back(format_double(v));
  }
  return nlohmann::json{{"dimension", seq.dimension},
                        {"n_max", seq.n_max()},
                        {"kind", kind_name(seq.kind())},
                        {"values", std::move(values)}};
}

inline nlohmann::json sequence_to_json(const AnySeq& seq) {
  return std::visit([](const auto& s) { return sequence_to_json(s); }, seq);
}

inline AnySeq sequence_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw sequence_file_error("sequence file must hold a JSON object");
  for (const char* key : {"dimension", "n_max", "kind", "values"})
    if (!j.contains(key)) throw sequence_file_error(std::string("missing field '") + key + "'");
  if (!j["dimension"].is_number_integer() || j["dimension"].get<std::int64_t>() < 1)
    throw sequence_file_error("'dimension' must be a positive integer");
  if (!j["n_max"].is_number_integer() || j["n_max"].get<std::int64_t>() < 0)
    throw sequence_file_error("'n_max' must be a nonnegative integer");
  if (!j["kind"].is_string()) throw sequence_file_error("'kind' must be a string");
  if (!j["values"].is_array()) throw sequence_file_error("'values' must be an array");
  const int dim = j["dimension"].get<int>();
  const auto n_max = j["n_max"].get<std::int64_t>();
  const auto& vals = j["values"];
  if (static_cast<std::int64_t>(vals.size()) != n_max + 1)
    throw sequence_file_error("'values' has " + std::to_string(vals.size()) +
                              " entries but n_max = " + std::to_string(n_max));
  const std::string kind = j["kind"].get<std::string>();
  for (const auto& v : vals)
    if (!v.is_string()) throw sequence_file_error("'values' entries must be strings");
  if (kind == "exact") {
    std::vector<Rational> out;
    out.reserve(vals.size());
    for (const auto& v : vals) out.push_back(parse_rational(v.get<std::string>()));
    return ExactSeq(dim, std::move(out));
  }
  if (kind == "float") {
    std::vector<double> out;
    out.reserve(vals.size());
    for (const auto& v : vals) out.push_back(parse_double(v.get<std::string>()));
    return FloatSeq(dim, std::move(out));
  }
  throw sequence_file_error("'kind' must be \"exact\" or \"float\", got \"" + kind + "\"");
}

inline std::string serialize_sequence(const AnySeq& seq) { return sequence_to_json(seq).dump(2) + "\n"; }

inline AnySeq parse_sequence(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw sequence_file_error(std::string("malformed JSON: ") + e.what());
  }
  return sequence_from_json(j);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sequence_file_error("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline AnySeq read_sequence_file(const std::string& path) { return parse_sequence(read_text_file(path)); }

inline void write_sequence_file(const std::string& path, const AnySeq& seq) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw sequence_file_error("cannot write '" + path + "'");
  out << serialize_sequence(seq);
  if (!out) throw sequence_file_error("write to '" + path + "' failed");
}

}  // namespace schoenberg
