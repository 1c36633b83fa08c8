// Acceptance runner: one PASS/FAIL line per criterion. `--only N` runs a
// single criterion, which is how ctest drives it.

#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cdiff/cdiff.hpp"

using namespace cdiff;

namespace {

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;  // printed indented under the verdict line
};

struct Tally {
  std::size_t pass = 0, fail = 0, skip = 0;
  std::vector<const VerificationRecord*> failures;
};

Tally tally(const std::vector<VerificationRecord>& records) {
  Tally t;
  for (const auto& r : records) {
    if (r.verdict == Verdict::Pass) ++t.pass;
    if (r.verdict == Verdict::Skip) ++t.skip;
    if (r.verdict == Verdict::Fail) {
      ++t.fail;
      t.failures.push_back(&r);
    }
  }
  return t;
}

std::string describe_record(const VerificationRecord& r) {
  std::ostringstream os;
  os << r.theorem << " p=" << r.p << " n=" << r.n;
  if (r.k) os << " k=" << *r.k;
  if (r.c) os << " c=" << *r.c;
  if (!r.family.empty()) os << " [" << r.family << "]";
  os << " predicted " << format_prediction(r.prediction) << " observed " << r.observed;
  for (const auto& n : r.notes) os << "; " << n;
  return os.str();
}

std::string counts_text(const Tally& t) {
  return "pass " + std::to_string(t.pass) + ", fail " + std::to_string(t.fail) + ", skip " + std::to_string(t.skip);
}

// Folds a record tally into an outcome, listing a few failures.
void absorb(Outcome& o, const std::string& label, const Tally& t, std::size_t shown = 4) {
  if (t.fail > 0) o.pass = false;
  if (!o.summary.empty()) o.summary += "; ";
  o.summary += label + ": " + counts_text(t);
  for (std::size_t i = 0; i < std::min(shown, t.failures.size()); ++i)
    o.details.push_back("FAIL " + describe_record(*t.failures[i]));
  if (t.failures.size() > shown) o.details.push_back("... " + std::to_string(t.failures.size() - shown) + " more");
}

std::string set_string(const std::set<std::uint32_t>& s) {
  std::string out = "{";
  for (auto v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

Outcome criterion1() {
  Outcome o;
  VerifyConfig cfg = default_config("gold");
  cfg.c.mode = CPolicy::Mode::Auto;
  cfg.c.full_limit = 256;  // every c for n <= 8, seeded samples above
  cfg.c.sample = 64;
  cfg.c.seed = 1;
  cfg.threads = worker_count();
  absorb(o, "gold n=3..12", tally(run_verify("gold", cfg)));

  // Fast path against the full O(q^2) scan for q <= 243.
  std::size_t checked = 0, mismatched = 0;
  SpectrumOptions full;
  full.fast_path = FastPath::Never;
  for (std::uint32_t n = 3; n <= 7; ++n) {
    const Field f = Field::build(2, n);
    for (std::uint32_t k = 1; k < n; ++k) {
      const FunctionSpec F = Monomial{(std::uint64_t{1} << k) + 1};
      for (Element c = 0; c < f.order(); ++c) {
        ++checked;
        if (uniformity(f, F, c) != uniformity(f, F, c, full)) ++mismatched;
      }
    }
  }
  for (std::uint32_t p : {3u, 5u, 7u})
    for (std::uint32_t n = 1; checked_pow(p, n) <= 243; ++n) {
      const Field f = Field::build(p, n);
      for (std::uint64_t d : std::vector<std::uint64_t>{2, 3, checked_pow(p, n) - 3, (checked_pow(p, n) + 3) / 2}) {
        if (d == 0) continue;
        for (Element c = 0; c < f.order(); ++c) {
          ++checked;
          if (uniformity(f, FunctionSpec{Monomial{d}}, c) != uniformity(f, FunctionSpec{Monomial{d}}, c, full)) ++mismatched;
        }
      }
    }
  if (mismatched) o.pass = false;
  o.summary += "; fast path vs full scan: " + std::to_string(checked) + " spectra, " + std::to_string(mismatched) +
               " mismatched";
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::size_t bad = 0;
  std::string x5, x13;
  for (std::uint32_t n = 3; n <= 8; ++n) {
    const Field f = Field::build(2, n);
    const std::uint32_t expected = n % 2 == 1 ? 3 : 5;
    std::set<std::uint32_t> d5, d13;
    std::size_t wrong = 0;
    for (Element c : all_c_values(f, true, false)) {
      const auto delta = uniformity(f, FunctionSpec{Monomial{5}}, c).delta;
      d5.insert(delta);
      if (delta != expected) ++wrong;
      d13.insert(uniformity(f, FunctionSpec{Monomial{13}}, c).delta);
    }
    bad += wrong;
    x5 += " n=" + std::to_string(n) + set_string(d5);
    x13 += " n=" + std::to_string(n) + set_string(d13);
    if (wrong)
      o.details.push_back("x^5 n=" + std::to_string(n) + ": " + std::to_string(wrong) + " of " +
                          std::to_string(f.order() - 1) + " c values differ from " + std::to_string(expected));
  }
  o.pass = bad == 0;
  o.summary = "x^5 deltas" + x5 + "; x^13 deltas (reported only)" + x13;
  return o;
}

Outcome criterion3() {
  Outcome o;
  VerifyConfig cfg = default_config("pn3");
  cfg.c.mode = CPolicy::Mode::All;
  cfg.threads = worker_count();
  const auto records = run_verify("pn3", cfg);
  absorb(o, "pn3 n=2..7", tally(records));

  const std::map<std::uint32_t, std::set<std::uint32_t>> remark = {
      {2, {2}}, {3, {3, 4}}, {4, {2, 4, 5}}, {5, {4}}, {6, {4, 5}}};
  std::map<std::uint32_t, std::set<std::uint32_t>> seen;
  for (const auto& r : records) {
    if (r.theorem != "pn3") continue;
    const Field f = Field::build(3, r.n);
    if (*r.c != 0 && *r.c != f.scalar(-1)) seen[r.n].insert(static_cast<std::uint32_t>(r.observed));
  }
  std::string text;
  for (const auto& [n, want] : remark) {
    const bool ok = seen[n] == want;
    if (!ok) o.pass = false;
    text += " n=" + std::to_string(n) + set_string(seen[n]) + (ok ? "" : " (want " + set_string(want) + ")");
  }
  o.summary += "; remark sets" + text;
  return o;
}

Outcome simple_theorem(const std::string& id, const std::string& label) {
  Outcome o;
  VerifyConfig cfg = default_config(id);
  cfg.threads = worker_count();
  const auto records = run_verify(id, cfg);
  absorb(o, label, tally(records));
  std::size_t findings = 0;
  for (const auto& r : records)
    for (const auto& n : r.notes)
      if (n.rfind("finding:", 0) == 0) ++findings;
  if (findings) o.summary += "; " + std::to_string(findings) + " predicate findings logged";
  return o;
}

Outcome criterion4() { return simple_theorem("halfgold", "halfgold c=-1"); }
Outcome criterion5() { return simple_theorem("tnph", "tnph n=2..7 with Dickson max fibers"); }
Outcome criterion6() { return simple_theorem("gcd-lemma", "gcd lemma p in {2,3,5,7}, k,n <= 24"); }

Outcome criterion7() {
  Outcome o = simple_theorem("gold-roots", "root counts n=3..14");
  const auto d = gold_equation_distribution(Field::build(2, 9), 3).nonzero_beta;
  const bool m9 = d.at(9) == 1;
  if (!m9) o.pass = false;
  o.summary += "; M_9 at (9,3) = " + std::to_string(d.at(9));
  return o;
}

Outcome criterion8() { return simple_theorem("dickson-cgm", "fiber formula p=3 n<=4, p=5 n<=3, d=2..20"); }
Outcome criterion9() { return simple_theorem("jacobsthal", "Jacobsthal sums and square-pair counts"); }
Outcome criterion10() { return simple_theorem("hrs", "APN families at c=1"); }

// Independent per-(a, b) count straight from the definition.
std::uint32_t naive_delta(const Field& f, const std::vector<Element>& values, Element c) {
  std::uint32_t best = 0;
  for (Element a = (c == 1 ? 1 : 0); a < f.order(); ++a)
    for (Element b = 0; b < f.order(); ++b) {
      std::uint32_t count = 0;
      for (Element x = 0; x < f.order(); ++x)
        if (f.sub(values[f.add(x, a)], f.mul(c, values[x])) == b) ++count;
      best = std::max(best, count);
    }
  return best;
}

Outcome criterion11() {
  Outcome o;
  std::mt19937_64 rng(11);
  std::size_t checked = 0, mismatched = 0;
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u})
    for (std::uint32_t n = 1; checked_pow(p, n) <= 27; ++n) {
      const Field f = Field::build(p, n);
      for (int t = 0; t < 5; ++t) {
        Polynomial poly;
        const std::size_t degree = 1 + rng() % std::min<std::size_t>(f.order() - 1, 9);
        for (std::size_t i = 0; i <= degree; ++i) poly.coeffs.push_back(static_cast<Element>(rng() % f.order()));
        const FunctionSpec F = poly;
        const auto values = value_table(f, resolve(F, f));
        // Also a monomial so the fast path is exercised.
        const FunctionSpec M = Monomial{1 + rng() % (2 * f.order())};
        const auto mvalues = value_table(f, resolve(M, f));
        for (int s = 0; s < 5; ++s) {
          const Element c = static_cast<Element>(rng() % f.order());
          checked += 2;
          if (uniformity(f, F, c).delta != naive_delta(f, values, c)) ++mismatched;
          if (uniformity(f, M, c).delta != naive_delta(f, mvalues, c)) ++mismatched;
        }
      }
    }
  o.pass = mismatched == 0;
  o.summary = std::to_string(checked) + " spectra over q <= 27, " + std::to_string(mismatched) + " mismatched";
  return o;
}

Outcome criterion12() {
  Outcome o;
  std::size_t runs = 0, differing = 0;
  for (const char* id : {"gold", "pn3", "jacobsthal", "prior"}) {
    VerifyConfig cfg = default_config(id);
    cfg.c.seed = 7;
    if (std::string(id) == "gold") cfg.ranges = {{2, 3, 11}};
    const auto first = run_verify(id, cfg);
    const std::string json0 = records_to_json(first).dump(2), csv0 = records_to_csv(first);
    for (unsigned threads : {1u, worker_count()}) {
      cfg.threads = threads;
      const auto again = run_verify(id, cfg);
      ++runs;
      if (records_to_json(again).dump(2) != json0 || records_to_csv(again) != csv0) {
        ++differing;
        o.details.push_back(std::string(id) + " export changed with threads=" + std::to_string(threads));
      }
    }
  }
  o.pass = differing == 0;
  o.summary = std::to_string(runs) + " repeated verify runs, " + std::to_string(differing) + " with differing bytes";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3,  criterion4,
                                                          criterion5, criterion6, criterion7,  criterion8,
                                                          criterion9, criterion10, criterion11, criterion12};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only N]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("error: ") + e.what();
    }
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.summary << ")\n";
    for (const auto& d : o.details) std::cout << "    " << d << "\n";
    std::cout.flush();
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
