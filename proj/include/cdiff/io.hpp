#ifndef CDIFF_IO_HPP
#define CDIFF_IO_HPP

// JSON and CSV encodings of spectrum reports, distributions and verification
// records. JSON objects use nlohmann's sorted-key layout, so dump() output is
// canonical.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cdiff/function.hpp"
#include "cdiff/spectra.hpp"

namespace cdiff {

using json = nlohmann::json;

inline json to_json(const FunctionSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Monomial>) {
          return {{"kind", "monomial"}, {"d", s.exponent}};
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          return {{"kind", "poly"}, {"coeffs", s.coeffs}};
        } else if constexpr (std::is_same_v<T, Dickson>) {
          return {{"kind", "dickson"}, {"m", s.degree}};
        } else {
          json j = {{"kind", "family"}, {"name", family_name(s)}};
          if (s.family == Family::Gold || s.family == Family::HalfGold || (s.family == Family::HRS && s.item == 9))
            j["k"] = s.k;
          if (s.family == Family::Trinomial10_6_2) j["u"] = s.u;
          return j;
        }
      },
      spec);
}

inline FunctionSpec function_from_json(const json& j) {
  const std::string kind = j.at("kind");
  if (kind == "monomial") return Monomial{j.at("d").get<std::uint64_t>()};
  if (kind == "poly") return Polynomial{j.at("coeffs").get<std::vector<Element>>()};
  if (kind == "dickson") return Dickson{j.at("m").get<std::uint64_t>()};
  if (kind == "family") {
    NamedFamily f = parse_family(j.at("name").get<std::string>());
    if (j.contains("k")) f.k = j["k"].get<std::uint32_t>();
    if (j.contains("u")) f.u = j["u"].get<Element>();
    return f;
  }
  throw std::invalid_argument("unknown function kind '" + kind + "'");
}

inline json to_json(const FieldSummary& f) { return {{"p", f.p}, {"n", f.n}, {"modulus", f.modulus}}; }

inline FieldSummary field_from_json(const json& j) {
  return {j.at("p").get<std::uint32_t>(), j.at("n").get<std::uint32_t>(), j.at("modulus").get<Coefficients>()};
}

inline json to_json(const SpectrumReport& r) {
  json hist = json::object();
  for (const auto& [count, mult] : r.histogram) hist[std::to_string(count)] = mult;
  json wit = json::array();
  for (const auto& [a, b] : r.witnesses) wit.push_back({a, b});
  return {{"field", to_json(r.field)}, {"function", to_json(r.function)}, {"c", r.c},
          {"delta", r.delta},          {"histogram", hist},                {"witnesses", wit}};
}

inline SpectrumReport report_from_json(const json& j) {
  SpectrumReport r;
  r.field = field_from_json(j.at("field"));
  r.function = function_from_json(j.at("function"));
  r.c = j.at("c").get<Element>();
  r.delta = j.at("delta").get<std::uint32_t>();
  for (const auto& [key, mult] : j.at("histogram").items())
    r.histogram[static_cast<std::uint32_t>(std::stoul(key))] = mult.get<std::uint64_t>();
  for (const auto& w : j.at("witnesses")) r.witnesses.emplace_back(w.at(0).get<Element>(), w.at(1).get<Element>());
  r.includes_zero_a = r.c != 1;
  return r;
}

/// "k:v;k:v" in increasing k.
inline std::string flatten_histogram(const Histogram& h) {
  std::string out;
  for (const auto& [k, v] : h) {
    if (!out.empty()) out += ';';
    out += std::to_string(k) + ":" + std::to_string(v);
  }
  return out;
}

inline std::string reports_to_csv(const std::vector<SpectrumReport>& reports) {
  std::string out = "c,delta,histogram\n";
  for (const auto& r : reports)
    out += std::to_string(r.c) + "," + std::to_string(r.delta) + "," + flatten_histogram(r.histogram) + "\n";
  return out;
}

inline json to_json(const DistributionReport& d) {
  json freq = json::object();
  for (const auto& [size, count] : d.frequency) freq[std::to_string(size)] = count;
  return {{"frequency", freq}, {"max", d.max_size}, {"total", d.total()}};
}

}  // namespace cdiff

#endif  // CDIFF_IO_HPP
