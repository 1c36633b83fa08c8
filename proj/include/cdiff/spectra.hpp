#ifndef CDIFF_SPECTRA_HPP
#define CDIFF_SPECTRA_HPP

// Exhaustive c-differential spectra and the auxiliary distributions: root
// counts of z^{2^k+1} + z + beta, Dickson fibers, and Jacobsthal sums.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdiff/field.hpp"
#include "cdiff/function.hpp"
#include "cdiff/parallel.hpp"

namespace cdiff {

/// count value -> number of (a, b) pairs (or indices) attaining it
using Histogram = std::map<std::uint32_t, std::uint64_t>;

struct FieldSummary {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  Coefficients modulus;

  static FieldSummary of(const Field& f) { return {f.characteristic(), f.degree(), f.modulus()}; }
  friend bool operator==(const FieldSummary&, const FieldSummary&) = default;
};

struct SpectrumReport {
  FieldSummary field;
  FunctionSpec function;
  Element c = 0;
  std::uint32_t delta = 0;
  Histogram histogram;
  std::vector<std::pair<Element, Element>> witnesses;  // (a, b), ascending
  bool includes_zero_a = true;

  friend bool operator==(const SpectrumReport&, const SpectrumReport&) = default;
};

struct DistributionReport {
  Histogram frequency;  // size -> how many indices have it
  std::uint32_t max_size = 0;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& [size, freq] : frequency) t += freq;
    return t;
  }
  std::uint64_t at(std::uint32_t size) const {
    auto it = frequency.find(size);
    return it == frequency.end() ? 0 : it->second;
  }
  friend bool operator==(const DistributionReport&, const DistributionReport&) = default;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FastPath { Auto, Never };

struct SpectrumOptions {
  unsigned threads = 1;
  FastPath fast_path = FastPath::Auto;
  std::size_t witness_cap = 16;
};

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 34;

/// Number of x with F(x + a) - c F(x) = b.
inline std::uint32_t delta_count(const Field& field, const std::vector<Element>& values, Element c, Element a,
                                 Element b) {
  std::uint32_t count = 0;
  for (Element x = 0; x < field.order(); ++x)
    if (field.sub(values[field.add(x, a)], field.mul(c, values[x])) == b) ++count;
  return count;
}

inline std::uint32_t delta_count(const Field& field, const FunctionSpec& f, Element c, Element a, Element b) {
  return delta_count(field, value_table(field, resolve(f, field)), c, a, b);
}

namespace detail {

struct RowSummary {
  std::uint32_t max = 0;
  std::vector<Element> argmax;  // b values attaining max, ascending
};

/// counts[b] = #{x : F(x + a) - c F(x) = b}
inline void fill_row(const Field& field, const std::vector<Element>& values, const std::vector<Element>& scaled,
                     Element a, std::vector<std::uint32_t>& counts) {
  std::fill(counts.begin(), counts.end(), 0u);
  const Element q = field.order();
  for (Element x = 0; x < q; ++x) ++counts[field.sub(values[field.add(x, a)], scaled[x])];
}

inline RowSummary summarize_row(const std::vector<std::uint32_t>& counts, std::vector<std::uint64_t>& hist,
                                std::uint64_t weight, std::size_t cap) {
  RowSummary row;
  for (std::uint32_t c : counts) {
    hist[c] += weight;
    row.max = std::max(row.max, c);
  }
  for (Element b = 0; b < counts.size(); ++b) {
    if (counts[b] != row.max) continue;
    if (row.argmax.size() == cap) break;
    row.argmax.push_back(b);
  }
  return row;
}

inline Histogram compress(const std::vector<std::uint64_t>& hist) {
  Histogram h;
  for (std::uint32_t v = 0; v < hist.size(); ++v)
    if (hist[v] != 0) h[v] = hist[v];
  return h;
}

inline SpectrumReport full_scan(const Field& field, const std::vector<Element>& values, Element c,
                                const SpectrumOptions& opt, SpectrumReport report) {
  const Element q = field.order();
  const Element first_a = c == 1 ? 1 : 0;
  const std::size_t rows = q - first_a;
  std::vector<Element> scaled(q);
  for (Element x = 0; x < q; ++x) scaled[x] = field.mul(c, values[x]);

  std::vector<RowSummary> summaries(rows);
  const unsigned workers = std::max(1u, opt.threads);
  std::vector<std::vector<std::uint64_t>> hists(workers);
  parallel_chunks(rows, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
    std::vector<std::uint32_t> counts(q);
    auto& hist = hists[w];
    hist.assign(std::size_t{q} + 1, 0);
    for (std::size_t r = begin; r < end; ++r) {
      fill_row(field, values, scaled, static_cast<Element>(first_a + r), counts);
      summaries[r] = summarize_row(counts, hist, 1, opt.witness_cap);
    }
  });

  std::vector<std::uint64_t> hist(std::size_t{q} + 1, 0);
  for (const auto& h : hists)
    for (std::size_t i = 0; i < h.size(); ++i) hist[i] += h[i];
  report.histogram = compress(hist);
  for (const auto& s : summaries) report.delta = std::max(report.delta, s.max);
  for (std::size_t r = 0; r < rows && report.witnesses.size() < opt.witness_cap; ++r) {
    if (summaries[r].max != report.delta) continue;
    for (Element b : summaries[r].argmax) {
      if (report.witnesses.size() == opt.witness_cap) break;
      report.witnesses.emplace_back(static_cast<Element>(first_a + r), b);
    }
  }
  return report;
}

// For F = x^d, counts in row a (a != 0) are those of row 1 with b scaled by a^d.
inline SpectrumReport monomial_scan(const Field& field, const std::vector<Element>& values, std::uint64_t d,
                                    Element c, const SpectrumOptions& opt, SpectrumReport report) {
  const Element q = field.order();
  std::vector<Element> scaled(q);
  for (Element x = 0; x < q; ++x) scaled[x] = field.mul(c, values[x]);
  std::vector<std::uint32_t> counts(q);
  std::vector<std::uint64_t> hist(std::size_t{q} + 1, 0);

  RowSummary zero_row;
  if (c != 1) {
    fill_row(field, values, scaled, 0, counts);
    zero_row = summarize_row(counts, hist, 1, opt.witness_cap);
  }
  fill_row(field, values, scaled, 1, counts);
  const RowSummary one_row = summarize_row(counts, hist, q - 1, q);

  report.histogram = compress(hist);
  report.delta = std::max(zero_row.max, one_row.max);
  if (c != 1 && zero_row.max == report.delta)
    for (Element b : zero_row.argmax) report.witnesses.emplace_back(0, b);
  if (one_row.max == report.delta) {
    std::vector<Element> mapped(one_row.argmax.size());
    for (Element a = 1; a < q && report.witnesses.size() < opt.witness_cap; ++a) {
      const Element ad = field.pow(a, d);
      for (std::size_t i = 0; i < mapped.size(); ++i) mapped[i] = field.mul(ad, one_row.argmax[i]);
      std::sort(mapped.begin(), mapped.end());
      for (Element b : mapped) {
        if (report.witnesses.size() == opt.witness_cap) break;
        report.witnesses.emplace_back(a, b);
      }
    }
  }
  return report;
}

}  // namespace detail

/// c-differential uniformity of F with its full spectrum. a ranges over the
/// whole field for c != 1 and over nonzero a for c = 1.
inline SpectrumReport uniformity(const Field& field, const FunctionSpec& f, Element c,
                                 const SpectrumOptions& opt = {}) {
  if (!field.contains(c)) throw FieldError("c is not a field element");
  const ResolvedFunction resolved = resolve(f, field);
  const auto values = value_table(field, resolved);
  SpectrumReport report;
  report.field = FieldSummary::of(field);
  report.function = f;
  report.c = c;
  report.includes_zero_a = c != 1;
  if (const auto* mono = std::get_if<Monomial>(&resolved); mono && opt.fast_path == FastPath::Auto)
    return detail::monomial_scan(field, values, mono->exponent, c, opt, std::move(report));
  return detail::full_scan(field, values, c, opt, std::move(report));
}

enum class Classification { PcN, APcN, Uniform };

inline Classification classify(std::uint32_t delta) {
  if (delta == 1) return Classification::PcN;
  if (delta == 2) return Classification::APcN;
  return Classification::Uniform;
}

inline Classification classify(const SpectrumReport& r) { return classify(r.delta); }

inline std::string classification_label(const SpectrumReport& r) {
  switch (classify(r)) {
    case Classification::PcN: return "PcN";
    case Classification::APcN: return "APcN";
    default: return "(c," + std::to_string(r.delta) + ")-uniform";
  }
}

struct SweepOptions {
  bool exclude_one = true;
  bool exclude_zero = false;
  std::uint64_t budget = kDefaultBudget;
  SpectrumOptions spectrum;
};

inline std::vector<Element> all_c_values(const Field& field, bool exclude_one, bool exclude_zero) {
  std::vector<Element> out;
  for (Element c = 0; c < field.order(); ++c) {
    if ((exclude_one && c == 1) || (exclude_zero && c == 0)) continue;
    out.push_back(c);
  }
  return out;
}

/// `count` distinct values drawn from `pool` by a seeded partial Fisher-Yates
/// shuffle, returned ascending. The draw uses raw mt19937_64 output so the
/// sample is identical on every platform.
inline std::vector<Element> sample_values(std::vector<Element> pool, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  count = std::min(count, pool.size());
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

/// Estimated table operations for one spectrum.
inline std::uint64_t spectrum_cost(const Field& field, const FunctionSpec& f, const SpectrumOptions& opt) {
  const std::uint64_t q = field.order();
  const bool fast = opt.fast_path == FastPath::Auto && std::holds_alternative<Monomial>(resolve(f, field));
  return fast ? 2 * q : q * q;
}

inline std::vector<SpectrumReport> sweep(const Field& field, const FunctionSpec& f, std::vector<Element> c_set,
                                         const SweepOptions& opt = {}) {
  c_set.erase(std::remove_if(c_set.begin(), c_set.end(),
                             [&](Element c) { return (opt.exclude_one && c == 1) || (opt.exclude_zero && c == 0); }),
              c_set.end());
  const std::uint64_t cost = spectrum_cost(field, f, opt.spectrum) * c_set.size();
  if (cost > opt.budget)
    throw BudgetExceeded("sweep needs about " + std::to_string(cost) + " operations, over the budget of " +
                         std::to_string(opt.budget) + "; sample c values with --sample N --seed S instead");
  std::vector<SpectrumReport> out;
  out.reserve(c_set.size());
  for (Element c : c_set) out.push_back(uniformity(field, f, c, opt.spectrum));
  return out;
}

/// Max fiber size |F^{-1}(b)| over b.
inline std::uint32_t max_preimage(const Field& field, const FunctionSpec& f) {
  std::vector<std::uint32_t> counts(field.order(), 0);
  for (Element v : value_table(field, resolve(f, field))) ++counts[v];
  return *std::max_element(counts.begin(), counts.end());
}

struct GoldRootDistribution {
  DistributionReport nonzero_beta;    // root count -> number of beta != 0
  std::uint32_t zero_beta_roots = 0;  // roots of z^{2^k+1} + z
};

/// Root counts of z^{2^k+1} + z + beta = 0 over F_{2^n} for each beta.
inline GoldRootDistribution gold_equation_distribution(const Field& field, std::uint32_t k) {
  if (field.characteristic() != 2) throw FieldError("gold root distribution needs p = 2");
  if (k < 1 || k >= field.degree()) throw std::invalid_argument("need 1 <= k < n");
  const std::uint64_t e = (std::uint64_t{1} << k) + 1;
  std::vector<std::uint32_t> roots(field.order(), 0);
  for (Element z = 0; z < field.order(); ++z) ++roots[field.add(field.pow(z, e), z)];
  GoldRootDistribution out;
  out.zero_beta_roots = roots[0];
  for (Element beta = 1; beta < field.order(); ++beta) {
    ++out.nonzero_beta.frequency[roots[beta]];
    out.nonzero_beta.max_size = std::max(out.nonzero_beta.max_size, roots[beta]);
  }
  return out;
}

/// |D_m^{-1}(D_m(x0))| for every x0 in index order.
inline std::vector<std::uint32_t> dickson_fiber_sizes(const Field& field, std::uint64_t m) {
  if (field.characteristic() == 2) throw FieldError("Dickson fibers need odd characteristic");
  const Element q = field.order();
  std::vector<Element> image(q);
  std::vector<std::uint32_t> counts(q, 0);
  for (Element x = 0; x < q; ++x) ++counts[image[x] = dickson_eval(field, m, x)];
  std::vector<std::uint32_t> sizes(q);
  for (Element x = 0; x < q; ++x) sizes[x] = counts[image[x]];
  return sizes;
}

/// Fiber size -> number of x0 whose fiber has that size.
inline DistributionReport dickson_preimage_distribution(const Field& field, std::uint64_t m) {
  DistributionReport out;
  for (std::uint32_t s : dickson_fiber_sizes(field, m)) {
    ++out.frequency[s];
    out.max_size = std::max(out.max_size, s);
  }
  return out;
}

/// sum_x eta(a2 x^2 + a1 x + a0) by direct summation.
inline std::int64_t jacobsthal_sum(const Field& field, Element a2, Element a1, Element a0) {
  if (field.characteristic() == 2) throw FieldError("Jacobsthal sums need odd characteristic");
  if (a2 == 0) throw std::invalid_argument("a2 must be nonzero");
  std::int64_t sum = 0;
  for (Element x = 0; x < field.order(); ++x) {
    const Element v = field.add(field.mul(field.add(field.mul(a2, x), a1), x), a0);
    sum += field.quadratic_character(v);
  }
  return sum;
}

/// (N1, N2): counts of x not in {0, 1, -1} with x^2 - x, resp. x^2 + x, a nonzero square.
inline std::pair<std::uint64_t, std::uint64_t> square_pair_counts(const Field& field) {
  if (field.characteristic() == 2) throw FieldError("square counts need odd characteristic");
  const Element minus_one = field.scalar(-1);
  std::uint64_t n1 = 0, n2 = 0;
  for (Element x = 2; x < field.order(); ++x) {
    if (x == minus_one) continue;
    const Element sq = field.mul(x, x);
    if (field.quadratic_character(field.sub(sq, x)) == 1) ++n1;
    if (field.quadratic_character(field.add(sq, x)) == 1) ++n2;
  }
  return {n1, n2};
}

}  // namespace cdiff

#endif  // CDIFF_SPECTRA_HPP
