#ifndef CDIFF_FUNCTION_HPP
#define CDIFF_FUNCTION_HPP

// Maps F_{p^n} -> F_{p^n}: monomials, dense polynomials, Dickson polynomials,
// and the named power-map families with their applicability conditions.

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "cdiff/field.hpp"
#include "cdiff/numeric.hpp"

namespace cdiff {

struct Monomial {
  std::uint64_t exponent = 1;  // stored unreduced
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct Polynomial {
  std::vector<Element> coeffs;  // ascending degree
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// First-kind Dickson polynomial D_m(x, 1).
struct Dickson {
  std::uint64_t degree = 0;
  friend bool operator==(const Dickson&, const Dickson&) = default;
};

enum class Family {
  Gold,                 // x^{p^k+1}
  Square,               // x^2
  InverseLike,          // x^{q-2}
  PN3,                  // x^{3^n-3}
  HalfGold,             // x^{(p^k+1)/2}
  ThreeNPlusThreeHalf,  // x^{(3^n+3)/2}
  HRS,                  // odd-characteristic APN table, items 1..9
  DobbertinA,
  DobbertinB,
  LeducqFive,
  ZhaWangFive,
  Trinomial10_6_2,      // x^10 - u x^6 - u^2 x^2
};

struct NamedFamily {
  Family family = Family::Gold;
  std::uint32_t k = 0;     // Gold, HalfGold, HRS item 9
  std::uint32_t item = 0;  // HRS item number
  std::uint32_t l = 0;     // Leducq parameter
  Element u = 0;           // trinomial parameter
  friend bool operator==(const NamedFamily&, const NamedFamily&) = default;
};

using FunctionSpec = std::variant<Monomial, Polynomial, Dickson, NamedFamily>;
using ResolvedFunction = std::variant<Monomial, Polynomial, Dickson>;

struct Condition {
  std::string name;
  bool satisfied = false;
  friend bool operator==(const Condition&, const Condition&) = default;
};

inline bool all_satisfied(const std::vector<Condition>& cs) {
  for (const auto& c : cs)
    if (!c.satisfied) return false;
  return true;
}

inline std::string failed_conditions(const std::vector<Condition>& cs) {
  std::string out;
  for (const auto& c : cs)
    if (!c.satisfied) out += (out.empty() ? "" : "; ") + c.name;
  return out;
}

class NotApplicable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline std::string family_name(const NamedFamily& f) {
  switch (f.family) {
    case Family::Gold: return "gold";
    case Family::Square: return "square";
    case Family::InverseLike: return "inverse";
    case Family::PN3: return "pn3";
    case Family::HalfGold: return "halfgold";
    case Family::ThreeNPlusThreeHalf: return "tnph";
    case Family::HRS: return "hrs" + std::to_string(f.item);
    case Family::DobbertinA: return "dobbertin-a";
    case Family::DobbertinB: return "dobbertin-b";
    case Family::LeducqFive: return "leducq" + std::to_string(f.l);
    case Family::ZhaWangFive: return "zha-wang";
    case Family::Trinomial10_6_2: return "trinomial";
  }
  return "?";
}

/// Inverse of family_name; parameters k and u are filled in separately.
inline NamedFamily parse_family(const std::string& name) {
  NamedFamily f;
  auto numbered = [&](const std::string& prefix, std::uint32_t& slot) {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return false;
    const std::string rest = name.substr(prefix.size());
    if (rest.find_first_not_of("0123456789") != std::string::npos) return false;
    slot = static_cast<std::uint32_t>(std::stoul(rest));
    return true;
  };
  if (name == "gold") f.family = Family::Gold;
  else if (name == "square") f.family = Family::Square;
  else if (name == "inverse") f.family = Family::InverseLike;
  else if (name == "pn3") f.family = Family::PN3;
  else if (name == "halfgold") f.family = Family::HalfGold;
  else if (name == "tnph") f.family = Family::ThreeNPlusThreeHalf;
  else if (name == "dobbertin-a") f.family = Family::DobbertinA;
  else if (name == "dobbertin-b") f.family = Family::DobbertinB;
  else if (name == "zha-wang") f.family = Family::ZhaWangFive;
  else if (name == "trinomial") f.family = Family::Trinomial10_6_2;
  else if (numbered("hrs", f.item)) f.family = Family::HRS;
  else if (numbered("leducq", f.l)) f.family = Family::LeducqFive;
  else throw std::invalid_argument("unknown function family '" + name + "'");
  return f;
}

/// Applicability predicate of a family over F_{p^n}, one entry per stated condition.
inline std::vector<Condition> family_conditions(const NamedFamily& f, std::uint32_t p, std::uint32_t n) {
  std::vector<Condition> cs;
  const std::uint64_t q = checked_pow(p, n);
  auto add = [&](std::string name, bool ok) { cs.push_back({std::move(name), ok}); };
  switch (f.family) {
    case Family::Gold:
      add("k >= 1", f.k >= 1);
      break;
    case Family::Square:
      break;
    case Family::InverseLike:
      add("q >= 3", q >= 3);
      break;
    case Family::PN3:
      add("p = 3", p == 3);
      add("n >= 2", n >= 2);
      break;
    case Family::HalfGold:
      add("p odd", p % 2 == 1);
      add("k >= 1", f.k >= 1);
      break;
    case Family::ThreeNPlusThreeHalf:
      add("p = 3", p == 3);
      break;
    case Family::HRS:
      add("p odd", p % 2 == 1);
      switch (f.item) {
        case 1:
          add("p > 3", p > 3);
          break;
        case 2:
          add("p > 2", p > 2);
          add("p = 2 mod 3", p % 3 == 2);
          break;
        case 3:
          add("p = 3,7 mod 20", p % 20 == 3 || p % 20 == 7);
          add("p^n > 7", q > 7);
          add("p^n != 27", q != 27);
          add("n odd", n % 2 == 1);
          break;
        case 4:
          add("p^n = 3 mod 8", q % 8 == 3);
          break;
        case 5:
          add("p^n = 7 mod 8", q % 8 == 7);
          break;
        case 6:
          add("p^n = 2 mod 3", q % 3 == 2);
          add("(2p^n - 1)/4 integral", (2 * q - 1) % 4 == 0);
          break;
        case 7:
          add("p = 3", p == 3);
          add("n > 1", n > 1);
          add("n odd", n % 2 == 1);
          break;
        case 8:
          add("n = 2m", n % 2 == 0);
          add("p^m = 1 mod 3", n % 2 == 0 && checked_pow(p, n / 2) % 3 == 1);
          break;
        case 9:
          add("p = 5", p == 5);
          add("k >= 1", f.k >= 1);
          add("gcd(2n, k) = 1", std::gcd<std::uint64_t>(2 * n, f.k) == 1);
          break;
        default:
          add("item in 1..9", false);
      }
      break;
    case Family::DobbertinA:
    case Family::DobbertinB:
      add("p = 3", p == 3);
      add("n = 1,3 mod 4", n % 2 == 1);
      break;
    case Family::LeducqFive:
      add("p = 5", p == 5);
      add("1 <= l <= 2", f.l >= 1 && f.l <= 2);
      add("n = -1 mod 2^l", f.l >= 1 && f.l <= 2 && (n + 1) % (1u << f.l) == 0);
      break;
    case Family::ZhaWangFive:
      add("p = 5", p == 5);
      add("n odd", n % 2 == 1);
      break;
    case Family::Trinomial10_6_2:
      add("p = 3", p == 3);
      break;
  }
  return cs;
}

/// The exponent of a power-map family, unreduced. Throws NotApplicable naming
/// the failed conditions.
inline std::uint64_t family_exponent_value(const NamedFamily& f, std::uint32_t p, std::uint32_t n) {
  const auto cs = family_conditions(f, p, n);
  if (!all_satisfied(cs)) throw NotApplicable(family_name(f) + " not applicable: " + failed_conditions(cs));
  const std::uint64_t q = checked_pow(p, n);
  switch (f.family) {
    case Family::Gold: return checked_pow(p, f.k) + 1;
    case Family::Square: return 2;
    case Family::InverseLike: return q - 2;
    case Family::PN3: return q - 3;
    case Family::HalfGold: return (checked_pow(p, f.k) + 1) / 2;
    case Family::ThreeNPlusThreeHalf: return (q + 3) / 2;
    case Family::HRS:
      switch (f.item) {
        case 1: return 3;
        case 2: return q - 2;
        case 3: return (q - 1) / 2 - 1;
        case 4: return (q + 1) / 4 + (q - 1) / 2;
        case 5: return (q + 1) / 4;
        case 6: return (2 * q - 1) / 4;
        case 7: return q - 3;
        case 8: return checked_pow(p, n / 2) + 2;
        case 9: return (checked_pow(5, f.k) + 1) / 2;
      }
      break;
    case Family::DobbertinA: {
      std::uint64_t d = (checked_pow(3, (n + 1) / 2) - 1) / 2;
      if (n % 4 == 1) d += (q - 1) / 2;
      return d;
    }
    case Family::DobbertinB: {
      std::uint64_t d = (checked_pow(3, n + 1) - 1) / 8;
      if (n % 4 == 1) d += (q - 1) / 2;
      return d;
    }
    case Family::LeducqFive: {
      const std::uint64_t num = checked_pow(5, n + 1) - 1;
      const std::uint64_t den = checked_pow(5, (n + 1) >> f.l) + 1;
      return num / den / 2 + (q - 1) / 4;
    }
    case Family::ZhaWangFive:
      return (q - 1) / 4 + (checked_pow(5, (n + 1) / 2) - 1) / 2;
    case Family::Trinomial10_6_2:
      break;
  }
  throw NotApplicable(family_name(f) + " is not a power map");
}

/// Resolves a family against a field: a monomial, or the trinomial's coefficients.
inline ResolvedFunction family_exponent(const NamedFamily& f, const Field& field) {
  if (f.family == Family::Trinomial10_6_2) {
    const auto cs = family_conditions(f, field.characteristic(), field.degree());
    if (!all_satisfied(cs)) throw NotApplicable(family_name(f) + " not applicable: " + failed_conditions(cs));
    if (!field.contains(f.u)) throw FieldError("trinomial parameter u is not a field element");
    Polynomial poly;
    poly.coeffs.assign(11, 0);
    poly.coeffs[10] = 1;
    poly.coeffs[6] = field.neg(f.u);
    poly.coeffs[2] = field.neg(field.mul(f.u, f.u));
    return poly;
  }
  return Monomial{family_exponent_value(f, field.characteristic(), field.degree())};
}

inline ResolvedFunction resolve(const FunctionSpec& spec, const Field& field) {
  return std::visit(
      [&](const auto& s) -> ResolvedFunction {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NamedFamily>) {
          return family_exponent(s, field);
        } else if constexpr (std::is_same_v<T, Monomial>) {
          if (s.exponent < 1) throw std::invalid_argument("monomial exponent must be >= 1");
          return s;
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          if (s.coeffs.empty()) throw std::invalid_argument("empty polynomial");
          if (s.coeffs.size() > field.order()) throw std::invalid_argument("polynomial degree must be < q");
          for (Element c : s.coeffs)
            if (!field.contains(c)) throw FieldError("polynomial coefficient is not a field element");
          return s;
        } else {
          return s;
        }
      },
      spec);
}

/// D_m(x) for parameter a = 1 via the doubling form of D_{i+1} = x D_i - D_{i-1}.
inline Element dickson_eval(const Field& field, std::uint64_t m, Element x) {
  const std::uint64_t q = field.order();
  if (m >= q * q) m %= lcm_u64(q - 1, q + 1);
  const Element two = field.scalar(2);
  if (m == 0) return two;
  Element lo = two, hi = x;  // (D_k, D_{k+1}), k = 0
  for (int bit = 63 - __builtin_clzll(m); bit >= 0; --bit) {
    const Element cross = field.sub(field.mul(lo, hi), x);
    if (m >> bit & 1u) {
      lo = cross;
      hi = field.sub(field.mul(hi, hi), two);
    } else {
      hi = cross;
      lo = field.sub(field.mul(lo, lo), two);
    }
  }
  return lo;
}

inline Element evaluate(const Field& field, const ResolvedFunction& f, Element x) {
  return std::visit(
      [&](const auto& s) -> Element {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Monomial>) {
          return field.pow(x, s.exponent);
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          Element acc = 0;
          for (std::size_t i = s.coeffs.size(); i-- > 0;) acc = field.add(field.mul(acc, x), s.coeffs[i]);
          return acc;
        } else {
          return dickson_eval(field, s.degree, x);
        }
      },
      f);
}

inline Element evaluate(const Field& field, const FunctionSpec& f, Element x) {
  return evaluate(field, resolve(f, field), x);
}

/// F(x) for every x in index order.
inline std::vector<Element> value_table(const Field& field, const ResolvedFunction& f) {
  std::vector<Element> values(field.order());
  for (Element x = 0; x < field.order(); ++x) values[x] = evaluate(field, f, x);
  return values;
}

inline bool is_permutation(std::span<const Element> values) {
  std::vector<bool> seen(values.size(), false);
  for (Element v : values) {
    if (v >= seen.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

inline bool is_permutation(const Field& field, const FunctionSpec& f) {
  const auto values = value_table(field, resolve(f, field));
  return is_permutation(std::span<const Element>(values));
}

inline std::string describe(const FunctionSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Monomial>) {
          return "x^" + std::to_string(s.exponent);
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          return "poly[" + format_coefficients(s.coeffs) + "]";
        } else if constexpr (std::is_same_v<T, Dickson>) {
          return "D_" + std::to_string(s.degree);
        } else {
          std::string out = family_name(s);
          if (s.family == Family::Gold || s.family == Family::HalfGold || (s.family == Family::HRS && s.item == 9))
            out += "(k=" + std::to_string(s.k) + ")";
          if (s.family == Family::Trinomial10_6_2) out += "(u=" + std::to_string(s.u) + ")";
          return out;
        }
      },
      spec);
}

}  // namespace cdiff

#endif  // CDIFF_FUNCTION_HPP
