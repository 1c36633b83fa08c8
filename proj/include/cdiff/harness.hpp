#ifndef CDIFF_HARNESS_HPP
#define CDIFF_HARNESS_HPP

// Theorem verification: sweeps parameter points, compares each prediction
// against a measurement and emits one record per comparison. Points run on a
// bounded worker pool; records come back in parameter order whatever the
// thread count.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdiff/cache.hpp"
#include "cdiff/field.hpp"
#include "cdiff/function.hpp"
#include "cdiff/io.hpp"
#include "cdiff/spectra.hpp"
#include "cdiff/theory.hpp"

namespace cdiff {

enum class Verdict { Pass, Fail, Skip };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skip: return "SKIP";
  }
  return "?";
}

inline Verdict parse_verdict(const std::string& s) {
  if (s == "PASS") return Verdict::Pass;
  if (s == "FAIL") return Verdict::Fail;
  if (s == "SKIP") return Verdict::Skip;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

struct VerificationRecord {
  std::string theorem;  // theorem id, optionally "/subject"
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::optional<std::uint32_t> k;
  std::optional<Element> c;
  std::string family;
  Prediction prediction;
  std::int64_t observed = 0;
  Verdict verdict = Verdict::Skip;
  double ms = 0;
  std::vector<std::string> notes;

  friend bool operator==(const VerificationRecord&, const VerificationRecord&) = default;
};

inline Verdict judge(const Prediction& p, std::int64_t observed) {
  if (!p.applicable()) return Verdict::Skip;
  return p.consistent_with(observed) ? Verdict::Pass : Verdict::Fail;
}

inline bool any_failed(const std::vector<VerificationRecord>& records) {
  for (const auto& r : records)
    if (r.verdict == Verdict::Fail) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Configuration

struct PrimeRange {
  std::uint32_t p = 0;
  std::uint32_t n_min = 1;
  std::uint32_t n_max = 1;
};

struct CPolicy {
  /// Auto sweeps every c when q <= full_limit and samples otherwise.
  enum class Mode { Auto, All, List, Sample };
  Mode mode = Mode::Auto;
  std::vector<std::string> values;  // List: signed integers or idx:N
  std::size_t sample = 64;
  std::uint64_t seed = 0;
  std::uint64_t full_limit = 1024;
};

struct VerifyConfig {
  std::vector<PrimeRange> ranges;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> k_range;
  CPolicy c;
  std::vector<Element> u_values = {1, 2};  // trinomial parameter
  std::uint64_t d_min = 2, d_max = 20;     // Dickson degrees
  std::size_t quadratic_samples = 200;
  std::vector<PrimeRange> count_ranges;    // square-pair counts
  unsigned threads = 1;
  std::uint64_t budget = kDefaultBudget;
  bool timing = false;
  ReportCache* cache = nullptr;
};

inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {"gold",  "gold-roots", "pn3",       "halfgold",    "tnph",
                                               "prior", "hrs",        "gcd-lemma", "dickson-cgm", "jacobsthal"};
  return ids;
}

/// Default parameter ranges for each theorem id.
inline VerifyConfig default_config(const std::string& theorem) {
  VerifyConfig cfg;
  if (theorem == "gold") {
    cfg.ranges = {{2, 3, 12}};
  } else if (theorem == "gold-roots") {
    cfg.ranges = {{2, 3, 14}};
  } else if (theorem == "pn3") {
    cfg.ranges = {{3, 2, 7}};
    cfg.c.mode = CPolicy::Mode::All;
  } else if (theorem == "halfgold") {
    cfg.ranges = {{3, 3, 6}, {5, 3, 4}, {7, 3, 4}};
  } else if (theorem == "tnph") {
    cfg.ranges = {{3, 2, 7}};
  } else if (theorem == "prior") {
    cfg.ranges = {{3, 1, 4}, {5, 1, 3}, {7, 1, 2}};
  } else if (theorem == "hrs") {
    cfg.ranges = {{3, 1, 8}, {5, 1, 5}, {7, 1, 4}, {11, 1, 3}, {13, 1, 3}};
    cfg.k_range = {1, 5};
  } else if (theorem == "gcd-lemma") {
    cfg.ranges = {{2, 1, 24}, {3, 1, 24}, {5, 1, 24}, {7, 1, 24}};
    cfg.k_range = {1, 24};
  } else if (theorem == "dickson-cgm") {
    cfg.ranges = {{3, 1, 4}, {5, 1, 3}};
  } else if (theorem == "jacobsthal") {
    cfg.ranges = {{3, 2, 3}, {5, 2, 2}, {7, 2, 2}};
    cfg.count_ranges = {{3, 3, 6}};
  } else {
    throw std::invalid_argument("unknown theorem '" + theorem + "'");
  }
  return cfg;
}

/// Parses a c token: a signed integer is read as an element of the prime
/// subfield, "idx:N" as the element with index N.
inline Element parse_c(const Field& field, const std::string& token) {
  Element c = 0;
  if (token.rfind("idx:", 0) == 0) {
    const std::string rest = token.substr(4);
    std::size_t used = 0;
    const unsigned long long v = std::stoull(rest, &used);
    if (used != rest.size() || v >= field.order()) throw FieldError("c index '" + token + "' is not a field element");
    c = static_cast<Element>(v);
  } else {
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument("cannot parse c value '" + token + "'");
    c = field.scalar(v);
  }
  return c;
}

namespace detail {

/// Per-field sample seed so that different fields do not share draws.
inline std::uint64_t field_seed(std::uint64_t seed, const Field& f) {
  return seed * 0x9E3779B97F4A7C15ULL + (std::uint64_t{f.characteristic()} << 32) + f.degree();
}

/// c values for one field from `pool` (already stripped of excluded values).
inline std::vector<Element> select_c(const Field& field, const CPolicy& policy, std::vector<Element> pool,
                                     bool fast_path, std::uint64_t cost_per_c, std::uint64_t budget) {
  switch (policy.mode) {
    case CPolicy::Mode::List: {
      std::vector<Element> out;
      const std::set<Element> allowed(pool.begin(), pool.end());
      for (const auto& t : policy.values) {
        const Element c = parse_c(field, t);
        if (allowed.count(c) && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
      }
      return out;
    }
    case CPolicy::Mode::Sample: return sample_values(std::move(pool), policy.sample, field_seed(policy.seed, field));
    case CPolicy::Mode::Auto:
      if (field.order() <= policy.full_limit) return pool;
      return sample_values(std::move(pool), policy.sample, field_seed(policy.seed, field));
    case CPolicy::Mode::All:
      // Beyond full_limit a full sweep is still allowed for monomials, whose
      // per-c cost is linear in q, provided the total stays within budget.
      if (field.order() > policy.full_limit && (!fast_path || cost_per_c * pool.size() > budget))
        throw BudgetExceeded("sweeping all c over F_" + std::to_string(field.characteristic()) + "^" +
                             std::to_string(field.degree()) + " is over the limit; use --sample N --seed S");
      return pool;
  }
  return pool;
}

class Stopwatch {
 public:
  explicit Stopwatch(bool on) : on_(on), start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    if (!on_) return 0;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  bool on_;
  std::chrono::steady_clock::time_point start_;
};

inline VerificationRecord make_record(std::string theorem, std::uint32_t p, std::uint32_t n,
                                      std::optional<std::uint32_t> k, std::optional<Element> c, std::string family,
                                      Prediction prediction, std::int64_t observed) {
  VerificationRecord r;
  r.theorem = std::move(theorem);
  r.p = p;
  r.n = n;
  r.k = k;
  r.c = c;
  r.family = std::move(family);
  r.verdict = judge(prediction, observed);
  if (r.verdict == Verdict::Skip) r.notes.push_back("not applicable: " + failed_conditions(prediction.conditions));
  r.prediction = std::move(prediction);
  r.observed = observed;
  return r;
}

using Job = std::function<std::vector<VerificationRecord>()>;

/// Runs jobs on at most `threads` workers and concatenates results in job order.
inline std::vector<VerificationRecord> run_jobs(const std::vector<Job>& jobs, unsigned threads) {
  std::vector<std::vector<VerificationRecord>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  parallel_chunks(workers, workers, [&](std::size_t, std::size_t, unsigned) {
    for (std::size_t i = next++; i < jobs.size(); i = next++) results[i] = jobs[i]();
  });
  std::vector<VerificationRecord> out;
  for (auto& r : results)
    for (auto& rec : r) out.push_back(std::move(rec));
  return out;
}

inline SpectrumReport measure(const VerifyConfig& cfg, const Field& field, const FunctionSpec& f, Element c) {
  SpectrumOptions opt;
  opt.threads = 1;
  return cfg.cache ? cfg.cache->uniformity(field, f, c, opt) : uniformity(field, f, c, opt);
}

inline std::pair<std::uint32_t, std::uint32_t> k_bounds(const VerifyConfig& cfg, std::uint32_t lo, std::uint32_t hi) {
  if (cfg.k_range) return {std::max(lo, cfg.k_range->first), std::min(hi, cfg.k_range->second)};
  return {lo, hi};
}

template <class Fn>
void for_each_point(const VerifyConfig& cfg, Fn&& fn) {
  for (const auto& r : cfg.ranges)
    for (std::uint32_t n = r.n_min; n <= r.n_max; ++n) fn(r.p, n);
}

inline std::string set_text(const std::set<std::uint32_t>& s) {
  std::string out = "{";
  for (auto v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

// ---------------------------------------------------------------------------
// Theorem drivers. Each appends jobs in parameter order.

inline void gold_jobs(const VerifyConfig& cfg, std::vector<Job>& jobs) {
  for_each_point(cfg, [&](std::uint32_t p, std::uint32_t n) {
    if (p != 2) return;
    const auto [k_lo, k_hi] = k_bounds(cfg, 2, n - 1);
    for (std::uint32_t k = k_lo; k <= k_hi; ++k) {
      jobs.push_back([&cfg, n, k] {
        const Field field = Field::build(2, n);
        const NamedFamily fam{Family::Gold, k};
        const std::uint64_t q = field.order();
        const auto cs = select_c(field, cfg.c, all_c_values(field, true, false), true, 2 * q, cfg.budget);
        std::vector<VerificationRecord> out;
        for (Element c : cs) {
          Stopwatch sw(cfg.timing);
          Prediction pr = predict_gold(n, k, c);
          const auto rep = measure(cfg, field, fam, c);
          auto rec = make_record("gold", 2, n, k, c, family_name(fam), std::move(pr), rep.delta);
          if (field.pow(field.sub(1, c), (std::uint64_t{1} << k) - 1) == 1)
            rec.notes.push_back("1-c lies in the subfield of order 2^gcd(n,k)");
          rec.ms = sw.ms();
          out.push_back(std::move(rec));
        }
        return out;
      });
    }
  });
}

inline void gold_root_jobs(const VerifyConfig& cfg, std::vector<Job>& jobs) {
  for_each_point(cfg, [&](std::uint32_t p, std::uint32_t n) {
    if (p != 2) return;
    const auto [k_lo, k_hi] = k_bounds(cfg, 1, n - 1);
    for (std::uint32_t k = k_lo; k <= k_hi; ++k) {
      jobs.push_back([&cfg, n, k] {
        Stopwatch sw(cfg.timing);
        const Field field = Field::build(2, n);
        const auto dist = gold_equation_distribution(field, k);
        const auto pred = predict_gold_root_counts(n, k);
        std::set<std::uint32_t> sizes;
        for (const auto& [s, cnt] : pred.counts) sizes.insert(s);
        if (pred.complete)
          for (const auto& [s, cnt] : dist.nonzero_beta.frequency) sizes.insert(s);
        const unsigned d = std::gcd(n, k);
        std::vector<VerificationRecord> out;
        for (std::uint32_t s : sizes) {
          auto it = pred.counts.find(s);
          Prediction pr = Prediction::exact(it == pred.counts.end() ? 0 : static_cast<std::int64_t>(it->second),
                                            "gold-roots", pred.conditions);
          pr.notes = pred.notes;
          auto rec = make_record("gold-roots", 2, n, k, std::nullopt, "M_" + std::to_string(s), std::move(pr),
                                 static_cast<std::int64_t>(dist.nonzero_beta.at(s)));
          if (d > 1) rec.notes.push_back("branch on parity of m gives " + std::to_string(gold_root_count_by_m_parity(n, k)));
          rec.notes.push_back("beta = 0 has " + std::to_string(dist.zero_beta_roots) + " roots");
          rec.ms = sw.ms();
          out.push_back(std::move(rec));
        }
        return out;
      });
    }
  });
}

inline void pn3_jobs(const VerifyConfig& cfg, std::vector<Job>& jobs) {
  for_each_point(cfg, [&](std::uint32_t p, std::uint32_t n) {
    if (p != 3) return;
    jobs.push_back([&cfg, n] {
      const Field field = Field::build(3, n);
      const NamedFamily fam{Family::PN3};
      const Element minus_one = field.scalar(-1);
      const auto cs = select_c(field, cfg.c, all_c_values(field, true, false), true, 2 * field.order(), cfg.budget);
      const bool complete = cs.size() + 1 == field.order();
      std::vector<VerificationRecord> out;
      std::set<std::uint32_t> generic;
      for (Element c : cs) {
        Stopwatch sw(cfg.timing);
        const auto rep = measure(cfg, field, fam, c);
        if (c != 0 && c != minus_one) generic.insert(rep.delta);
        auto rec = make_record("pn3", 3, n, std::nullopt, c, "pn3", predict_pn3(field, c), rep.delta);
        rec.ms = sw.ms();
        out.push_back(std::move(rec));
      }
      for (Prediction pr : pn3_attainment(n)) {
        const std::int64_t target = pr.value;
        if (!complete) pr.conditions.push_back({"all c swept", false});
        const std::int64_t observed = generic.count(static_cast<std::uint32_t>(target))
                                          ? target
                                          : (generic.empty() ? 0 : static_cast<std::int64_t>(*generic.rbegin()));
        auto rec = make_record("pn3/attains", 3, n, std::nullopt, std::nullopt, "pn3", std::move(pr), observed);
        rec.notes.push_back("deltas over c not in {0,1,-1}: " + set_text(generic));
        out.push_back(std::move(rec));
      }
      return out;
    });
  });
}

inline void halfgold_jobs(const VerifyConfig& cfg, std::vector<Job>& jobs) {
  for_each_point(cfg, [&](std::uint32_t p, std::uint32_t n) {
    if (p % 2 == 0 || n < 2) return;
    const auto [k_lo, k_hi] = k_bounds(cfg, 1, n - 1);
    for (std::uint32_t k = k_lo; k <= k_hi; ++k) {
      jobs.push_back([&cfg, p, n, k] {
        Stopwatch sw(cfg.timing);
        const Field field = Field::build(p, n);
        const NamedFamily fam{Family::HalfGold, k};
        const Element c = field.scalar(-1);
        const auto rep = measure(cfg, field, fam, c);
        auto rec = make_record("halfgold", p, n, k, c, family_name(fam), predict_halfgold(p, n, k), rep.delta);
        if (p == 3 && halfgold_literal_condition(n, k) != halfgold_pcn_condition(n, k))
          rec.notes.push_back(std::string("finding: predicate n/gcd(n,k) odd says ") +
                              (halfgold_literal_condition(n, k) ? "PcN" : "not PcN") + ", observed delta " +
                              std::to_string(rep.delta));
        rec.ms = sw.ms();
        return std::vector<VerificationRecord>{std::move(rec)};
      });
    }
  });
}

inline void tnph_jobs(const VerifyConfig& cfg, std::vector<Job>& jobs) {
  for_each_point(cfg, [&](std::uint32_t p, std::uint32_t n) {
    if (p != 3) return;
    jobs.push_back([&cfg, n] {
      const Field field = Field::build(3, n);
      const NamedFamily fam{Family::ThreeNPlusThreeHalf};
      std::vector<VerificationRecord> out;
      for (int sign : {-1, 1}) {
        Stopwatch sw(cfg.timing);
        const Element c = field.scalar(sign);
        const auto rep = measure(cfg, field, fam, c);
        auto rec = make_record("tnph", 3, n, std::nullopt, c, "tnph", predict_3n3half(n, sign), rep.delta);
        rec.ms = sw.ms();
        out.push_back(std::move(rec));
      }
      const std::uint64_t q = field.order();
      for (int sign : {-1, 1}) {
        Stopwatch sw(cfg.timing);
        const std::uint64_t m = sign == -1 ? (q + 3) / 2 : (q - 3) / 2;
        const std::uint32_t fiber = m == 0 ? static_cast<std::uint32_t>(q) : dickson_preimage_distribution(field, m).max_size;
        Prediction pr = sign == -1 ? Prediction::exact(n % 2 == 1 ? 1 : 2, "tnph", {{"n >= 2", n >= 2}})
                                   : Prediction::exact(n % 2 == 0 ? 1 : 4, "tnph", {{"n >= 2", n >= 2}});
        auto rec = make_record("tnph/dickson-max-fiber", 3, n, std::nullopt, field.scalar(sign),
                               "dickson m=" + std::to_string(m), std::move(pr), fiber);
        rec.ms = sw.ms();
        out.push_back(std::move(rec));
      }
      const wide_uint half = (wide_pow(3, n) - 3) / 2;
      const auto g = static_cast<std::int64_t>(wide_gcd(half, wide_pow(3, 2 * n) - 1));
      out.push_back(make_record("tnph/gcd", 3, n, std::nullopt, std::nullopt, "gcd((3^n-3)/2, 3^2n-1)",
                                Prediction::exact(static_cast<std::int64_t>(tnph_gcd_table(n)), "tnph",
                                                  {{"n >= 2", n >= 2}}),
                                g));
      return out;
    });
  });
}

inline void prior_jobs(const VerifyConfig& cfg, std::vector<Job>& jobs) {
  for_each_point(cfg, [&](std::uint32_t p, std::uint32_t n) {
    if (p % 2 == 0) return;
    const auto sweep_c = [&cfg](const Field& field, bool fast) {
      const std::uint64_t q = field.order();
      return select_c(field, cfg.c, all_c_values(field, true, false), fast, fast ? 2 * q : q * q, cfg.budget);
    };
    // (i) x^2
    jobs.push_back([&cfg, p, n, sweep_c] {
      const Field field = Field::build(p, n);
      std::vector<VerificationRecord> out;
      for (Element c : sweep_c(field, true)) {
        Stopwatch sw(cfg.timing);
        const auto rep = measure(cfg, field, NamedFamily{Family::Square}, c);
        auto rec = make_record("prior/i", p, n, std::nullopt, c, "square",
                               predict_prior_results(PriorCase::Square, field, {0, c}), rep.delta);
        rec.ms = sw.ms();
        out.push_back(std::move(rec));
      }
      return out;
    });
    // (ii) x^{p^k+1}
    const auto [k2_lo, k2_hi] = k_bounds(cfg, 1, n);
    for (std::uint32_t k = k2_lo; k <= k2_hi; ++k) {
      jobs.push_back([&cfg, p, n, k, sweep_c] {
        const Field field = Field::build(p, n);
        const NamedFamily fam{Family::Gold, k};
        std::vector<VerificationRecord> out;
        for (Element c : sweep_c(field, true)) {
          Stopwatch sw(cfg.timing);
          const auto rep = measure(cfg, field, fam, c);
          auto rec = make_record("prior/ii", p, n, k, c, family_name(fam),
                                 predict_prior_results(PriorCase::GoldOdd, field, {k, c}), rep.delta);
          rec.ms = sw.ms();
          out.push_back(std::move(rec));
        }
        return out;
      });
    }
    // (iii) x^{(3^k+1)/2}, c = -1
    if (p == 3 && n >= 2) {
      const auto [k3_lo, k3_hi] = k_bounds(cfg, 1, n - 1);
      for (std::uint32_t k = k3_lo; k <= k3_hi; ++k) {
        jobs.push_back([&cfg, n, k] {
          Stopwatch sw(cfg.timing);
          const Field field = Field::build(3, n);
          const NamedFamily fam{Family::HalfGold, k};
          const Element c = field.scalar(-1);
          const auto rep = measure(cfg, field, fam, c);
          Prediction pr = predict_prior_results(PriorCase::HalfGoldThree, field, {k, c});
          const bool literal = halfgold_literal_condition(n, k);
          auto rec = make_record("prior/iii", 3, n, k, c, family_name(fam), std::move(pr), rep.delta);
          if (literal != halfgold_pcn_condition(n, k))
            rec.notes.push_back(std::string("finding: literal predicate ") + (literal ? "PcN" : "not PcN") +
                                (literal == (rep.delta == 1) ? " agrees" : " disagrees") + " with observation");
          rec.ms = sw.ms();
          return std::vector<VerificationRecord>{std::move(rec)};
        });
      }
    }
    // (iv) x^10 - u x^6 - u^2 x^2
    if (p == 3) {
      for (Element u : cfg.u_values) {
        jobs.push_back([&cfg, n, u, sweep_c] {
          const Field field = Field::build(3, n);
          if (u == 0 || !field.contains(u)) return std::vector<VerificationRecord>{};
          NamedFamily fam{Family::Trinomial10_6_2};
          fam.u = u;
          std::vector<VerificationRecord> out;
          for (Element c : sweep_c(field, false)) {
            Stopwatch sw(cfg.timing);
            const auto rep = measure(cfg, field, fam, c);
            auto rec = make_record("prior/iv", 3, n, std::nullopt, c, family_name(fam) + " u=" + std::to_string(u),
                                   predict_prior_results(PriorCase::Trinomial, field, {0, c}), rep.delta);
            rec.ms = sw.ms();
            out.push_back(std::move(rec));
          }
          return out;
        });
      }
    }
  });
}

inline std::vector<NamedFamily> apn_families(const VerifyConfig& cfg) {
  std::vector<NamedFamily> out;
  for (std::uint32_t item = 1; item <= 9; ++item) {
    NamedFamily f{Family::HRS};
    f.item = item;
    if (item == 9) {
      const auto lo = cfg.k_range ? cfg.k_range->first : 1, hi = cfg.k_range ? cfg.k_range->second : 5;
      for (std::uint32_t k = lo; k <= hi; ++k) {
        f.k = k;
        out.push_back(f);
      }
    } else {
      out.push_back(f);
    }
  }
  out.push_back(NamedFamily{Family::DobbertinA});
  out.push_back(NamedFamily{Family::DobbertinB});
  for (std::uint32_t l = 1; l <= 2; ++l) {
    NamedFamily f{Family::LeducqFive};
    f.l = l;
    out.push_back(f);
  }
  out.push_back(NamedFamily{Family::ZhaWangFive});
  return out;
}

inline std::string apn_label(const NamedFamily& f) {
  return f.family == Family::HRS && f.item == 9 ? family_name(f) + " k=" + std::to_string(f.k) : family_name(f);
}

/// Returns SKIP records for families with no applicable point; those go
/// after all measured records.
inline std::vector<VerificationRecord> hrs_jobs(const VerifyConfig& cfg, std::vector<Job>& jobs) {
  std::vector<VerificationRecord> skips;
  std::map<std::string, bool> seen;
  for (const NamedFamily& fam : apn_families(cfg)) {
    const std::string name = family_name(fam);
    seen.emplace(name, false);
    for_each_point(cfg, [&](std::uint32_t p, std::uint32_t n) {
      if (!all_satisfied(family_conditions(fam, p, n))) return;
      seen[name] = true;
      jobs.push_back([&cfg, fam, p, n] {
        Stopwatch sw(cfg.timing);
        const Field field = Field::build(p, n);
        const auto rep = measure(cfg, field, fam, 1);
        auto rec = make_record("hrs", p, n, fam.family == Family::HRS && fam.item == 9 ? std::optional(fam.k) : std::nullopt,
                               Element{1}, apn_label(fam), predict_hrs_apn(fam, p, n), rep.delta);
        rec.notes.push_back("exponent " + std::to_string(family_exponent_value(fam, p, n)));
        rec.ms = sw.ms();
        return std::vector<VerificationRecord>{std::move(rec)};
      });
    });
  }
  for (const auto& [name, any] : seen) {
    if (any) continue;
    VerificationRecord r;
    r.theorem = "hrs";
    r.family = name;
    r.c = 1;
    r.verdict = Verdict::Skip;
    r.prediction = Prediction::exact(2, name);
    r.notes.push_back("no applicable point in the configured ranges");
    skips.push_back(std::move(r));
  }
  return skips;
}

inline void gcd_jobs(const VerifyConfig& cfg, std::vector<Job>& jobs) {
  for (const auto& r : cfg.ranges) {
    jobs.push_back([&cfg, r] {
      std::vector<VerificationRecord> out;
      const auto [k_lo, k_hi] = cfg.k_range.value_or(std::pair<std::uint32_t, std::uint32_t>{1, r.n_max});
      for (std::uint32_t k = k_lo; k <= k_hi; ++k) {
        for (std::uint32_t n = r.n_min; n <= r.n_max; ++n) {
          const auto closed = static_cast<std::int64_t>(gcd_closed_form(r.p, k, n));
          const auto direct = static_cast<std::int64_t>(gcd_direct(r.p, k, n));
          out.push_back(make_record("gcd-lemma", r.p, n, k, std::nullopt, "gcd(p^k+1, p^n-1)",
                                    Prediction::exact(closed, "gcd-lemma"), direct));
        }
      }
      return out;
    });
  }
}

inline void cgm_jobs(const VerifyConfig& cfg, std::vector<Job>& jobs) {
  for_each_point(cfg, [&](std::uint32_t p, std::uint32_t n) {
    if (p % 2 == 0) return;
    jobs.push_back([&cfg, p, n] {
      const Field field = Field::build(p, n);
      std::vector<VerificationRecord> out;
      for (std::uint64_t d = cfg.d_min; d <= cfg.d_max; ++d) {
        Stopwatch sw(cfg.timing);
        const auto sizes = dickson_fiber_sizes(field, d);
        std::int64_t mismatches = 0;
        std::uint64_t predicted_max = 0, observed_max = 0;
        for (Element x = 0; x < field.order(); ++x) {
          const std::uint64_t f = cgm_preimage_formula(field, d, x);
          predicted_max = std::max(predicted_max, f);
          observed_max = std::max<std::uint64_t>(observed_max, sizes[x]);
          if (f != sizes[x]) ++mismatches;
        }
        auto rec = make_record("dickson-cgm", p, n, std::nullopt, std::nullopt, "dickson m=" + std::to_string(d),
                               Prediction::exact(0, "cgm mismatched fibers"), mismatches);
        rec.notes.push_back("max fiber " + std::to_string(observed_max) + ", formula max " + std::to_string(predicted_max));
        rec.ms = sw.ms();
        out.push_back(std::move(rec));
      }
      return out;
    });
  });
}

inline void jacobsthal_jobs(const VerifyConfig& cfg, std::vector<Job>& jobs) {
  for_each_point(cfg, [&](std::uint32_t p, std::uint32_t n) {
    if (p % 2 == 0) return;
    jobs.push_back([&cfg, p, n] {
      const Field field = Field::build(p, n);
      const Element q = field.order();
      std::mt19937_64 rng(detail::field_seed(cfg.c.seed, field));
      std::vector<VerificationRecord> out;
      for (std::size_t i = 0; i < cfg.quadratic_samples; ++i) {
        const Element a2 = 1 + static_cast<Element>(rng() % (q - 1));
        const Element a1 = static_cast<Element>(rng() % q);
        // Every other quadratic is forced to a zero discriminant so both
        // branches of the closed form are exercised.
        const Element a0 = i % 2 == 1 ? field.div(field.mul(a1, a1), field.mul(field.scalar(4), a2))
                                      : static_cast<Element>(rng() % q);
        out.push_back(make_record("jacobsthal", p, n, std::nullopt, std::nullopt,
                                  std::to_string(a2) + "x^2+" + std::to_string(a1) + "x+" + std::to_string(a0),
                                  Prediction::exact(jacobsthal_closed_form(field, a2, a1, a0), "jacobsthal"),
                                  jacobsthal_sum(field, a2, a1, a0)));
      }
      return out;
    });
  });
  for (const auto& r : cfg.count_ranges) {
    for (std::uint32_t n = r.n_min; n <= r.n_max; ++n) {
      jobs.push_back([p = r.p, n] {
        const Field field = Field::build(p, n);
        const auto [n1, n2] = square_pair_counts(field);
        std::vector<VerificationRecord> out;
        out.push_back(make_record("jacobsthal/N1", p, n, std::nullopt, std::nullopt, "x^2-x",
                                  predict_square_pair_count(field), static_cast<std::int64_t>(n1)));
        out.push_back(make_record("jacobsthal/N2", p, n, std::nullopt, std::nullopt, "x^2+x",
                                  predict_square_pair_count(field), static_cast<std::int64_t>(n2)));
        return out;
      });
    }
  }
}

}  // namespace detail

/// Runs the comparisons for one theorem id. Records are ordered by parameter
/// point independently of cfg.threads.
inline std::vector<VerificationRecord> run_verify(const std::string& theorem, const VerifyConfig& cfg) {
  std::vector<detail::Job> jobs;
  std::vector<VerificationRecord> trailing;
  if (theorem == "gold") detail::gold_jobs(cfg, jobs);
  else if (theorem == "gold-roots") detail::gold_root_jobs(cfg, jobs);
  else if (theorem == "pn3") detail::pn3_jobs(cfg, jobs);
  else if (theorem == "halfgold") detail::halfgold_jobs(cfg, jobs);
  else if (theorem == "tnph") detail::tnph_jobs(cfg, jobs);
  else if (theorem == "prior") detail::prior_jobs(cfg, jobs);
  else if (theorem == "hrs") trailing = detail::hrs_jobs(cfg, jobs);
  else if (theorem == "gcd-lemma") detail::gcd_jobs(cfg, jobs);
  else if (theorem == "dickson-cgm") detail::cgm_jobs(cfg, jobs);
  else if (theorem == "jacobsthal") detail::jacobsthal_jobs(cfg, jobs);
  else throw std::invalid_argument("unknown theorem '" + theorem + "'");
  auto out = detail::run_jobs(jobs, cfg.threads);
  for (auto& r : trailing) out.push_back(std::move(r));
  return out;
}

inline std::vector<VerificationRecord> run_verify(const std::string& theorem) {
  return run_verify(theorem, default_config(theorem));
}

// ---------------------------------------------------------------------------
// Record exports

inline json to_json(const Prediction& p) {
  json cs = json::array();
  for (const auto& c : p.conditions) cs.push_back({{"name", c.name}, {"satisfied", c.satisfied}});
  return {{"kind", kind_name(p.kind)}, {"value", p.value},   {"class", class_name(p.predicted_class)},
          {"conditions", cs},          {"source", p.source}, {"notes", p.notes}};
}

inline Prediction prediction_from_json(const json& j) {
  Prediction p;
  const std::string kind = j.at("kind");
  bool found = false;
  for (auto k : {PredictionKind::Exact, PredictionKind::LowerBound, PredictionKind::UpperBound, PredictionKind::Class,
                 PredictionKind::Attains})
    if (kind_name(k) == kind) p.kind = k, found = true;
  if (!found) throw std::invalid_argument("unknown prediction kind '" + kind + "'");
  const std::string cls = j.at("class");
  for (auto c : {PredictedClass::PcN, PredictedClass::APcN, PredictedClass::NotPcN})
    if (class_name(c) == cls) p.predicted_class = c;
  p.value = j.at("value").get<std::int64_t>();
  for (const auto& c : j.at("conditions")) p.conditions.push_back({c.at("name"), c.at("satisfied").get<bool>()});
  p.source = j.at("source");
  p.notes = j.at("notes").get<std::vector<std::string>>();
  return p;
}

inline json to_json(const VerificationRecord& r) {
  return {{"theorem", r.theorem},
          {"p", r.p},
          {"n", r.n},
          {"k", r.k ? json(*r.k) : json(nullptr)},
          {"c", r.c ? json(*r.c) : json(nullptr)},
          {"family", r.family},
          {"prediction", to_json(r.prediction)},
          {"predicted", format_prediction(r.prediction)},
          {"observed", r.observed},
          {"verdict", verdict_name(r.verdict)},
          {"ms", r.ms},
          {"notes", r.notes}};
}

inline VerificationRecord record_from_json(const json& j) {
  VerificationRecord r;
  r.theorem = j.at("theorem");
  r.p = j.at("p");
  r.n = j.at("n");
  if (!j.at("k").is_null()) r.k = j["k"].get<std::uint32_t>();
  if (!j.at("c").is_null()) r.c = j["c"].get<Element>();
  r.family = j.at("family");
  r.prediction = prediction_from_json(j.at("prediction"));
  r.observed = j.at("observed").get<std::int64_t>();
  r.verdict = parse_verdict(j.at("verdict"));
  r.ms = j.at("ms").get<double>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

inline json records_to_json(const std::vector<VerificationRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  return arr;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

inline std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

inline std::string records_to_csv(const std::vector<VerificationRecord>& records) {
  std::string out = "theorem,p,n,k,c,predicted,observed,verdict,ms\n";
  for (const auto& r : records) {
    out += csv_field(r.theorem) + "," + std::to_string(r.p) + "," + std::to_string(r.n) + "," +
           (r.k ? std::to_string(*r.k) : "") + "," + (r.c ? std::to_string(*r.c) : "") + "," +
           csv_field(format_prediction(r.prediction)) + "," + std::to_string(r.observed) + "," +
           verdict_name(r.verdict) + "," + format_ms(r.ms) + "\n";
  }
  return out;
}

}  // namespace cdiff

#endif  // CDIFF_HARNESS_HPP
