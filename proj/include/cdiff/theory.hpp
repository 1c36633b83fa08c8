#ifndef CDIFF_THEORY_HPP
#define CDIFF_THEORY_HPP

// Closed-form predictions for c-differential uniformity and the related
// distributions. Each prediction carries its applicability conditions; a
// prediction with an unsatisfied condition is inapplicable and makes no claim.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdiff/field.hpp"
#include "cdiff/function.hpp"
#include "cdiff/numeric.hpp"
#include "cdiff/spectra.hpp"

namespace cdiff {

enum class PredictionKind { Exact, LowerBound, UpperBound, Class, Attains };
enum class PredictedClass { PcN, APcN, NotPcN };

struct Prediction {
  PredictionKind kind = PredictionKind::Exact;
  std::int64_t value = 0;  // unused for Class
  PredictedClass predicted_class = PredictedClass::PcN;
  std::vector<Condition> conditions;
  std::string source;
  std::vector<std::string> notes;

  bool applicable() const { return all_satisfied(conditions); }
  friend bool operator==(const Prediction&, const Prediction&) = default;

  bool consistent_with(std::int64_t observed) const {
    switch (kind) {
      case PredictionKind::Exact:
      case PredictionKind::Attains: return observed == value;
      case PredictionKind::LowerBound: return observed >= value;
      case PredictionKind::UpperBound: return observed <= value;
      case PredictionKind::Class:
        switch (predicted_class) {
          case PredictedClass::PcN: return observed == 1;
          case PredictedClass::APcN: return observed == 2;
          case PredictedClass::NotPcN: return observed >= 2;
        }
    }
    return false;
  }

  static Prediction exact(std::int64_t v, std::string source, std::vector<Condition> cs = {}) {
    return {PredictionKind::Exact, v, PredictedClass::PcN, std::move(cs), std::move(source), {}};
  }
  static Prediction lower(std::int64_t v, std::string source, std::vector<Condition> cs = {}) {
    return {PredictionKind::LowerBound, v, PredictedClass::PcN, std::move(cs), std::move(source), {}};
  }
  static Prediction upper(std::int64_t v, std::string source, std::vector<Condition> cs = {}) {
    return {PredictionKind::UpperBound, v, PredictedClass::PcN, std::move(cs), std::move(source), {}};
  }
  static Prediction of_class(PredictedClass c, std::string source, std::vector<Condition> cs = {}) {
    return {PredictionKind::Class, 0, c, std::move(cs), std::move(source), {}};
  }
  static Prediction attains(std::int64_t v, std::string source, std::vector<Condition> cs = {}) {
    return {PredictionKind::Attains, v, PredictedClass::PcN, std::move(cs), std::move(source), {}};
  }
};

inline std::string class_name(PredictedClass c) {
  switch (c) {
    case PredictedClass::PcN: return "PcN";
    case PredictedClass::APcN: return "APcN";
    case PredictedClass::NotPcN: return "NotPcN";
  }
  return "?";
}

inline std::string kind_name(PredictionKind k) {
  switch (k) {
    case PredictionKind::Exact: return "exact";
    case PredictionKind::LowerBound: return "lower";
    case PredictionKind::UpperBound: return "upper";
    case PredictionKind::Class: return "class";
    case PredictionKind::Attains: return "attains";
  }
  return "?";
}

/// Short form used in tables and CSV: "=3", ">=4", "<=5", "PcN", "attains 4".
inline std::string format_prediction(const Prediction& p) {
  switch (p.kind) {
    case PredictionKind::Exact: return "=" + std::to_string(p.value);
    case PredictionKind::LowerBound: return ">=" + std::to_string(p.value);
    case PredictionKind::UpperBound: return "<=" + std::to_string(p.value);
    case PredictionKind::Class: return class_name(p.predicted_class);
    case PredictionKind::Attains: return "attains " + std::to_string(p.value);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// gcd(p^k + 1, p^n - 1)

/// Closed form: (2^{gcd(2k,n)} - 1)/(2^{gcd(k,n)} - 1) for p = 2; for odd p,
/// 2 when n/gcd(n,k) is odd and p^{gcd(k,n)} + 1 otherwise.
inline wide_uint gcd_closed_form(std::uint64_t p, unsigned k, unsigned n) {
  if (k < 1 || n < 1) throw std::invalid_argument("need k, n >= 1");
  const unsigned g = std::gcd(k, n);
  if (p == 2) return (wide_pow(2, std::gcd(2 * k, n)) - 1) / (wide_pow(2, g) - 1);
  if ((n / g) % 2 == 1) return 2;
  return wide_pow(p, g) + 1;
}

inline wide_uint gcd_direct(std::uint64_t p, unsigned k, unsigned n) {
  return wide_gcd(wide_pow(p, k) + 1, wide_pow(p, n) - 1);
}

// ---------------------------------------------------------------------------
// Gold functions over F_{2^n}

inline std::vector<Condition> gold_m_conditions(unsigned n, unsigned k) {
  const unsigned d = std::gcd(n, k), m = n / d;
  return {{"n >= 3", n >= 3},
          {n % 2 == 1 ? "m = n/gcd(n,k) >= 3 (n odd)" : "m = n/gcd(n,k) >= 4 (n even)",
           n % 2 == 1 ? m >= 3 : m >= 4}};
}

/// x^{2^k+1} over F_{2^n}, c != 1: uniformity 2^{gcd(n,k)} + 1.
inline Prediction predict_gold(unsigned n, unsigned k, Element c) {
  if (k < 2 || k >= n) throw std::invalid_argument("gold prediction needs 2 <= k < n");
  if (c == 1) throw std::invalid_argument("gold prediction needs c != 1");
  const unsigned d = std::gcd(n, k);
  return Prediction::exact((std::int64_t{1} << d) + 1, "gold", gold_m_conditions(n, k));
}

struct RootCountPrediction {
  Histogram counts;           // root count -> number of nonzero beta
  bool complete = false;      // true when every root count is predicted
  std::vector<Condition> conditions;
  std::vector<std::string> notes;
  bool applicable() const { return all_satisfied(conditions); }
};

/// Distribution of root counts of z^{2^k+1} + z + beta over nonzero beta.
inline RootCountPrediction predict_gold_root_counts(unsigned n, unsigned k) {
  if (k < 1 || k >= n) throw std::invalid_argument("need 1 <= k < n");
  RootCountPrediction out;
  const unsigned d = std::gcd(n, k), m = n / d;
  const std::uint64_t half = std::uint64_t{1} << (n - 1), full = std::uint64_t{1} << n;
  if (d == 1) {
    out.complete = true;
    out.conditions = {{"n >= 3", n >= 3}};
    if (n % 2 == 1) {
      out.counts = {{0, (full + 1) / 3}, {1, half - 1}, {3, (half - 1) / 3}};
    } else {
      out.counts = {{0, (full - 1) / 3}, {1, half}, {3, (half - 2) / 3}};
    }
    return out;
  }
  out.conditions = gold_m_conditions(n, k);
  const std::uint64_t denom = (std::uint64_t{1} << (2 * d)) - 1;
  const std::uint64_t top = std::uint64_t{1} << ((m - 1) * d);
  const std::uint64_t numer = n % 2 == 1 ? top - 1 : top - (std::uint64_t{1} << d);
  out.counts = {{static_cast<std::uint32_t>((1u << d) + 1), numer / denom}};
  if (numer % denom != 0)
    out.notes.push_back("formula value " + std::to_string(numer) + "/" + std::to_string(denom) + " is not an integer");
  return out;
}

/// The same count with the branch chosen by the parity of m = n/gcd(n,k)
/// instead of n. Agrees with the n-parity form whenever m and n share parity.
inline std::uint64_t gold_root_count_by_m_parity(unsigned n, unsigned k) {
  const unsigned d = std::gcd(n, k), m = n / d;
  const std::uint64_t denom = (std::uint64_t{1} << (2 * d)) - 1;
  const std::uint64_t top = std::uint64_t{1} << ((m - 1) * d);
  return (m % 2 == 1 ? top - 1 : top - (std::uint64_t{1} << d)) / denom;
}

// ---------------------------------------------------------------------------
// x^{3^n - 3} over F_{3^n}

inline Prediction predict_pn3(const Field& field, Element c) {
  if (c == 1) throw std::invalid_argument("pn3 prediction does not cover c = 1");
  const unsigned n = field.degree();
  std::vector<Condition> cs = {{"p = 3", field.characteristic() == 3}, {"n >= 2", n >= 2}};
  if (c == 0) return Prediction::exact(2, "pn3", std::move(cs));
  if (field.characteristic() == 3 && c == field.scalar(-1))
    return Prediction::exact(n % 4 == 0 ? 6 : 4, "pn3", std::move(cs));
  Prediction p = Prediction::upper(5, "pn3", std::move(cs));
  p.notes.push_back("4 attained for some c when n >= 3");
  if (n % 4 == 0) p.notes.push_back("5 attained for some c");
  return p;
}

/// Existential claims over all c not in {0, 1, -1}.
inline std::vector<Prediction> pn3_attainment(unsigned n) {
  std::vector<Prediction> out;
  if (n >= 3) out.push_back(Prediction::attains(4, "pn3", {{"n >= 3", true}}));
  if (n % 4 == 0) out.push_back(Prediction::attains(5, "pn3", {{"n = 0 mod 4", true}}));
  return out;
}

// ---------------------------------------------------------------------------
// x^{(p^k+1)/2}, c = -1

/// PcN condition for x^{(p^k+1)/2} at c = -1: 2n/gcd(2n,k) odd.
inline bool halfgold_pcn_condition(unsigned n, unsigned k) { return (2 * n / std::gcd(2 * n, k)) % 2 == 1; }

/// The weaker predicate n/gcd(n,k) odd, which misclassifies k with the same 2-adic valuation as n.
inline bool halfgold_literal_condition(unsigned n, unsigned k) { return (n / std::gcd(n, k)) % 2 == 1; }

/// max{g1/2, g2/2, (g1+g2)/4} with g1 = gcd(p^k+1, p^n-1), g2 = gcd(p^k+1, p^n+1).
inline std::uint64_t halfgold_ell(std::uint64_t p, unsigned n, unsigned k) {
  const wide_uint base = wide_pow(p, k) + 1;
  const auto g1 = static_cast<std::uint64_t>(wide_gcd(base, wide_pow(p, n) - 1));
  const auto g2 = static_cast<std::uint64_t>(wide_gcd(base, wide_pow(p, n) + 1));
  return std::max({g1 / 2, g2 / 2, (g1 + g2) / 4});
}

inline Prediction predict_halfgold(std::uint32_t p, unsigned n, unsigned k) {
  if (p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("halfgold prediction needs an odd prime p");
  if (k < 1 || k >= n) throw std::invalid_argument("halfgold prediction needs 1 <= k < n");
  std::vector<Condition> cs = {{"n >= 3", n >= 3}};
  if (halfgold_pcn_condition(n, k)) return Prediction::of_class(PredictedClass::PcN, "halfgold", std::move(cs));
  return Prediction::exact(static_cast<std::int64_t>((checked_pow(p, std::gcd(k, n)) + 1) / 2), "halfgold",
                           std::move(cs));
}

// ---------------------------------------------------------------------------
// x^{(3^n+3)/2} over F_{3^n}

inline Prediction predict_3n3half(unsigned n, int c_sign) {
  std::vector<Condition> cs = {{"n >= 2", n >= 2}};
  if (c_sign == -1)
    return Prediction::of_class(n % 2 == 1 ? PredictedClass::PcN : PredictedClass::APcN, "tnph", std::move(cs));
  if (c_sign == 1) return Prediction::exact(n % 2 == 0 ? 1 : 4, "tnph", std::move(cs));
  throw std::invalid_argument("tnph prediction covers c = 1 and c = -1 only");
}

/// gcd((3^n - 3)/2, 3^{2n} - 1) by n mod 4: 1 (even), 4 (3 mod 4), 8 (1 mod 4).
inline std::uint64_t tnph_gcd_table(unsigned n) {
  if (n % 2 == 0) return 1;
  return n % 4 == 3 ? 4 : 8;
}

// ---------------------------------------------------------------------------
// Earlier results on monomials, c != 1

enum class PriorCase { Square = 1, GoldOdd = 2, HalfGoldThree = 3, Trinomial = 4 };

struct PriorParams {
  std::uint32_t k = 0;
  Element c = 0;
};

inline Prediction predict_prior_results(PriorCase which, const Field& field, const PriorParams& params) {
  const std::uint32_t p = field.characteristic();
  const unsigned n = field.degree();
  if (params.c == 1) throw std::invalid_argument("prior results cover c != 1 only");
  switch (which) {
    case PriorCase::Square:
      return Prediction::exact(2, "prior(i)", {{"p odd", p % 2 == 1}});
    case PriorCase::GoldOdd: {
      const unsigned g = std::gcd(n, params.k);
      std::vector<Condition> cs = {{"p > 2", p > 2}, {"k >= 1", params.k >= 1}};
      const std::uint64_t pk = checked_pow(p, params.k);
      const Element one_minus_c = field.sub(1, params.c);
      const bool power_one = field.pow(one_minus_c, pk - 1) == 1;
      const bool even_ratio = params.k >= 1 && (n / g) % 2 == 0;
      if (power_one && even_ratio) {
        Prediction pr = Prediction::lower(static_cast<std::int64_t>(checked_pow(p, g)) + 1, "prior(ii)", cs);
        pr.notes.push_back("(1-c)^{p^k-1} = 1 and n/gcd(n,k) even");
        return pr;
      }
      return Prediction::of_class(PredictedClass::NotPcN, "prior(ii)", cs);
    }
    case PriorCase::HalfGoldThree: {
      std::vector<Condition> cs = {{"p = 3", p == 3}, {"c = -1", params.c == field.scalar(-1)},
                                   {"k >= 1", params.k >= 1}};
      const bool operative = halfgold_pcn_condition(n, params.k);
      const bool literal = halfgold_literal_condition(n, params.k);
      Prediction pr = Prediction::of_class(operative ? PredictedClass::PcN : PredictedClass::NotPcN, "prior(iii)", cs);
      if (operative != literal)
        pr.notes.push_back(std::string("literal predicate n/gcd(n,k) odd says ") + (literal ? "PcN" : "not PcN"));
      return pr;
    }
    case PriorCase::Trinomial:
      return Prediction::lower(2, "prior(iv)", {{"p = 3", p == 3}});
  }
  throw std::invalid_argument("unknown prior-results case");
}

// ---------------------------------------------------------------------------
// Dickson fibers

/// Predicted |D_d^{-1}(D_d(x0))| over F_q, q = p^n odd.
inline std::uint64_t cgm_preimage_formula(const Field& field, std::uint64_t d, Element x0) {
  if (field.characteristic() == 2) throw FieldError("Dickson fiber formula needs odd characteristic");
  if (d == 0) throw std::invalid_argument("degree must be positive");
  const std::uint64_t q = field.order();
  const std::uint64_t m = std::gcd(d, q - 1);
  const std::uint64_t ell = std::gcd(d, q + 1);
  const unsigned r = two_adic_valuation(q * q - 1);
  const unsigned t = two_adic_valuation(d);
  const Element two = field.scalar(2), minus_two = field.scalar(-2);
  const int eta = field.quadratic_character(field.sub(field.mul(x0, x0), field.scalar(4)));
  const Element image = dickson_eval(field, d, x0);
  if (image != two && image != minus_two) {
    if (eta == 1) return m;
    if (eta == -1) return ell;
  }
  if (image == minus_two && t >= 1 && t + 2 <= r) {
    if (eta == 1) return m / 2;
    if (eta == -1) return ell / 2;
  }
  return (m + ell) / 2;
}

// ---------------------------------------------------------------------------
// Quadratic character sums

/// sum_x eta(a2 x^2 + a1 x + a0): -eta(a2) unless the discriminant vanishes,
/// then (q-1) eta(a2).
inline std::int64_t jacobsthal_closed_form(const Field& field, Element a2, Element a1, Element a0) {
  if (field.characteristic() == 2) throw FieldError("Jacobsthal sums need odd characteristic");
  if (a2 == 0) throw std::invalid_argument("leading coefficient must be nonzero");
  const Element disc = field.sub(field.mul(a1, a1), field.mul(field.scalar(4), field.mul(a2, a0)));
  const int eta = field.quadratic_character(a2);
  return disc == 0 ? static_cast<std::int64_t>(field.order() - 1) * eta : -eta;
}

/// |{x != 0, +-1 : eta(x^2 - x) = 1}|, and likewise for x^2 + x, over F_{3^n}.
inline Prediction predict_square_pair_count(const Field& field) {
  const std::int64_t q = field.order();
  const std::int64_t eta = field.characteristic() == 3 ? field.quadratic_character(field.scalar(-1)) : 0;
  return Prediction::exact((q - 4 - eta) / 2, "pn3-counts",
                           {{"p = 3", field.characteristic() == 3}, {"n >= 3", field.degree() >= 3}});
}

// ---------------------------------------------------------------------------
// APN power maps in odd characteristic, c = 1

inline Prediction predict_hrs_apn(const NamedFamily& family, std::uint32_t p, unsigned n) {
  switch (family.family) {
    case Family::HRS:
    case Family::LeducqFive:
    case Family::ZhaWangFive:
      return Prediction::exact(2, family_name(family), family_conditions(family, p, n));
    case Family::DobbertinA:
    case Family::DobbertinB: {
      Prediction pr = Prediction::upper(2, family_name(family), family_conditions(family, p, n));
      pr.notes.push_back("sharpened to exactly 2 by later work");
      return pr;
    }
    default:
      throw std::invalid_argument(family_name(family) + " is not an APN family");
  }
}

}  // namespace cdiff

#endif  // CDIFF_THEORY_HPP
