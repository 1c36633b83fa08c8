// cdiff: command-line front end for the c-differential toolkit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cdiff/cdiff.hpp"

namespace {

using namespace cdiff;

struct Globals {
  std::uint32_t p = 2;
  std::uint32_t n = 1;
  std::string modulus;
  std::string format = "table";
  std::string out;
  unsigned threads = 1;
  std::string cache_dir;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
};

struct FunctionFlags {
  std::optional<std::uint64_t> monomial;
  std::string poly;
  std::string family;
  std::optional<std::uint64_t> dickson;
  std::uint32_t k = 1;
  std::string u = "1";
};

Field make_field(const Globals& g) {
  std::optional<Coefficients> mod;
  if (!g.modulus.empty()) mod = parse_coefficients(g.modulus);
  return Field::build(g.p, g.n, mod);
}

void add_function_flags(CLI::App* sub, FunctionFlags& f) {
  auto* group = sub->add_option_group("function");
  group->add_option("--monomial", f.monomial, "x^D");
  group->add_option("--poly", f.poly, "coefficient indices c0,c1,... (ascending degree)");
  group->add_option("--family", f.family, "named family, e.g. gold, pn3, hrs3, leducq2, trinomial");
  group->add_option("--dickson", f.dickson, "Dickson polynomial D_M(x, 1)");
  group->require_option(1);
  sub->add_option("--k", f.k, "family parameter k")->capture_default_str();
  sub->add_option("--u", f.u, "trinomial parameter u")->capture_default_str();
}

FunctionSpec make_function(const FunctionFlags& f, const Field& field) {
  if (f.monomial) return Monomial{*f.monomial};
  if (f.dickson) return Dickson{*f.dickson};
  if (!f.poly.empty()) {
    const Coefficients c = parse_coefficients(f.poly);
    return Polynomial{std::vector<Element>(c.begin(), c.end())};
  }
  NamedFamily fam = parse_family(f.family);
  fam.k = f.k;
  fam.u = parse_c(field, f.u);
  return fam;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + g.out + " for writing");
  file << text;
  if (!file) throw std::runtime_error("write to " + g.out + " failed");
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string report_table(const std::vector<SpectrumReport>& reports) {
  std::ostringstream os;
  os << pad("c", 8) << pad("delta", 7) << pad("class", 18) << "histogram\n";
  for (const auto& r : reports)
    os << pad(std::to_string(r.c), 8) << pad(std::to_string(r.delta), 7) << pad(classification_label(r), 18)
       << flatten_histogram(r.histogram) << "\n";
  return os.str();
}

std::string record_table(const std::vector<VerificationRecord>& records) {
  std::ostringstream os;
  os << pad("theorem", 24) << pad("p", 4) << pad("n", 4) << pad("k", 4) << pad("c", 7) << pad("family", 16)
     << pad("predicted", 12) << pad("observed", 10) << "verdict\n";
  for (const auto& r : records) {
    os << pad(r.theorem, 24) << pad(std::to_string(r.p), 4) << pad(std::to_string(r.n), 4)
       << pad(r.k ? std::to_string(*r.k) : "-", 4) << pad(r.c ? std::to_string(*r.c) : "-", 7) << pad(r.family, 16)
       << pad(format_prediction(r.prediction), 12) << pad(std::to_string(r.observed), 10) << verdict_name(r.verdict);
    for (const auto& note : r.notes) os << "  [" << note << "]";
    os << "\n";
  }
  return os.str();
}

// "P:A..B" or "P:N"
PrimeRange parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("range '" + text + "' is not P:A..B");
  PrimeRange r;
  r.p = static_cast<std::uint32_t>(std::stoul(text.substr(0, colon)));
  const std::string rest = text.substr(colon + 1);
  const auto dots = rest.find("..");
  r.n_min = static_cast<std::uint32_t>(std::stoul(rest.substr(0, dots)));
  r.n_max = dots == std::string::npos ? r.n_min : static_cast<std::uint32_t>(std::stoul(rest.substr(dots + 2)));
  if (r.n_min == 0 || r.n_max < r.n_min) throw std::invalid_argument("empty range '" + text + "'");
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"c-differential uniformity toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--p", g.p, "characteristic")->capture_default_str();
  app.add_option("--n", g.n, "extension degree")->capture_default_str();
  app.add_option("--modulus", g.modulus, "modulus coefficients c0,...,cn (monic); default: smallest primitive");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"table", "json", "csv"}))->capture_default_str();
  app.add_option("--out", g.out, "write output to PATH instead of stdout");
  app.add_option("--threads", g.threads, "worker threads")->capture_default_str();
  app.add_option("--cache-dir", g.cache_dir, "spectrum cache directory (caching off when unset)");
  app.add_option("--seed", g.seed, "seed for sampled c values and quadratics")->capture_default_str();
  app.add_option("--budget", g.budget, "maximum table operations for a sweep")->capture_default_str();

  // field-info
  auto* info_cmd = app.add_subcommand("field-info", "describe F_{p^n} and its modulus");

  // eval
  FunctionFlags eval_fn;
  std::vector<std::string> eval_x;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a function");
  add_function_flags(eval_cmd, eval_fn);
  eval_cmd->add_option("--x", eval_x, "points (signed integer or idx:N); all points when omitted");

  // uniformity
  FunctionFlags uni_fn;
  std::string uni_c = "1";
  bool uni_no_fast = false;
  auto* uni_cmd = app.add_subcommand("uniformity", "c-differential spectrum for one c");
  add_function_flags(uni_cmd, uni_fn);
  uni_cmd->add_option("--c", uni_c, "multiplier c (signed integer or idx:N)")->capture_default_str();
  uni_cmd->add_flag("--no-fast-path", uni_no_fast, "always run the full O(q^2) scan");

  // sweep
  FunctionFlags sw_fn;
  std::vector<std::string> sw_c;
  std::size_t sw_sample = 0;
  bool sw_zero = false, sw_no_fast = false;
  auto* sw_cmd = app.add_subcommand("sweep", "spectra over a set of c (all c != 1 by default)");
  add_function_flags(sw_cmd, sw_fn);
  sw_cmd->add_option("--c", sw_c, "explicit c values");
  sw_cmd->add_option("--sample", sw_sample, "sample this many c values with --seed");
  sw_cmd->add_flag("--exclude-zero", sw_zero, "skip c = 0");
  sw_cmd->add_flag("--no-fast-path", sw_no_fast, "always run the full O(q^2) scan");

  // verify
  std::string theorem;
  std::vector<std::string> ranges;
  std::optional<std::uint32_t> n_min, n_max, k_min, k_max;
  std::vector<std::string> v_c, v_u;
  bool v_all = false, v_timing = false;
  std::optional<std::size_t> v_sample, v_quadratics;
  std::optional<std::uint64_t> d_min, d_max;
  bool p_given = false;
  auto* v_cmd = app.add_subcommand("verify", "compare predictions with measurements");
  v_cmd->add_option("theorem", theorem, "theorem id")->required()->check(CLI::IsMember(theorem_ids()));
  v_cmd->add_option("--range", ranges, "parameter range P:A..B (repeatable); defaults per theorem");
  v_cmd->add_option("--n-min", n_min, "with --p: smallest n");
  v_cmd->add_option("--n-max", n_max, "with --p: largest n");
  v_cmd->add_option("--k-min", k_min);
  v_cmd->add_option("--k-max", k_max);
  v_cmd->add_option("--c", v_c, "explicit c values");
  v_cmd->add_flag("--c-all", v_all, "every admissible c");
  v_cmd->add_option("--sample", v_sample, "seeded sample of c values per field");
  v_cmd->add_option("--d-min", d_min, "dickson-cgm: smallest degree");
  v_cmd->add_option("--d-max", d_max, "dickson-cgm: largest degree");
  v_cmd->add_option("--quadratics", v_quadratics, "jacobsthal: quadratics per field");
  v_cmd->add_option("--u", v_u, "prior: trinomial parameters");
  v_cmd->add_flag("--timing", v_timing, "record elapsed milliseconds (exports are then not reproducible)");

  // dickson
  std::uint64_t dk_m = 1;
  auto* dk_cmd = app.add_subcommand("dickson", "fiber-size distribution of D_m over F_q");
  dk_cmd->add_option("--m", dk_m, "degree")->required();

  // gold-roots
  std::uint32_t gr_k = 1;
  auto* gr_cmd = app.add_subcommand("gold-roots", "root counts of z^{2^k+1} + z + beta over F_{2^n}");
  gr_cmd->add_option("--k", gr_k)->required();

  // jacobsthal
  std::string ja2 = "1", ja1 = "0", ja0 = "0";
  auto* ja_cmd = app.add_subcommand("jacobsthal", "sum of eta(a2 x^2 + a1 x + a0)");
  ja_cmd->add_option("--a2", ja2)->capture_default_str();
  ja_cmd->add_option("--a1", ja1)->capture_default_str();
  ja_cmd->add_option("--a0", ja0)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  p_given = app.count("--p") > 0;

  try {
    std::optional<ReportCache> cache;
    if (!g.cache_dir.empty()) cache.emplace(g.cache_dir);

    if (*info_cmd) {
      const Field f = make_field(g);
      json j = {{"p", f.characteristic()},
                {"n", f.degree()},
                {"q", f.order()},
                {"modulus", f.modulus()},
                {"polynomial", format_polynomial(f.modulus())},
                {"generator", f.generator()},
                {"tables", f.has_tables()}};
      if (g.format == "json") {
        emit(g, j.dump() + "\n");
      } else if (g.format == "csv") {
        emit(g, "p,n,q,modulus,generator\n" + std::to_string(f.characteristic()) + "," + std::to_string(f.degree()) +
                    "," + std::to_string(f.order()) + ",\"" + format_coefficients(f.modulus()) + "\"," +
                    std::to_string(f.generator()) + "\n");
      } else {
        std::ostringstream os;
        os << "F_" << f.characteristic() << "^" << f.degree() << "  q = " << f.order() << "\n"
           << "modulus   " << format_polynomial(f.modulus()) << "  [" << format_coefficients(f.modulus()) << "]\n"
           << "generator " << f.generator() << "\n"
           << "tables    " << (f.has_tables() ? "yes" : "no") << "\n";
        emit(g, os.str());
      }
      return 0;
    }

    if (*eval_cmd) {
      const Field f = make_field(g);
      const FunctionSpec spec = make_function(eval_fn, f);
      std::vector<Element> xs;
      if (eval_x.empty()) {
        for (Element x = 0; x < f.order(); ++x) xs.push_back(x);
      } else {
        for (const auto& t : eval_x) xs.push_back(parse_c(f, t));
      }
      const ResolvedFunction r = resolve(spec, f);
      json arr = json::array();
      std::string csv = "x,value\n", table;
      for (Element x : xs) {
        const Element v = evaluate(f, r, x);
        arr.push_back({x, v});
        csv += std::to_string(x) + "," + std::to_string(v) + "\n";
        table += pad(std::to_string(x), 8) + std::to_string(v) + "\n";
      }
      if (g.format == "json") emit(g, json{{"function", to_json(spec)}, {"values", arr}}.dump() + "\n");
      else if (g.format == "csv") emit(g, csv);
      else emit(g, describe(spec) + "\n" + table);
      return 0;
    }

    if (*uni_cmd) {
      const Field f = make_field(g);
      const FunctionSpec spec = make_function(uni_fn, f);
      SpectrumOptions opt;
      opt.threads = g.threads;
      opt.fast_path = uni_no_fast ? FastPath::Never : FastPath::Auto;
      const Element c = parse_c(f, uni_c);
      const SpectrumReport rep = cache ? cache->uniformity(f, spec, c, opt) : uniformity(f, spec, c, opt);
      if (g.format == "json") emit(g, to_json(rep).dump() + "\n");
      else if (g.format == "csv") emit(g, reports_to_csv({rep}));
      else emit(g, describe(spec) + " over F_" + std::to_string(g.p) + "^" + std::to_string(g.n) + "\n" +
                       report_table({rep}));
      return 0;
    }

    if (*sw_cmd) {
      const Field f = make_field(g);
      const FunctionSpec spec = make_function(sw_fn, f);
      SweepOptions opt;
      opt.exclude_zero = sw_zero;
      opt.budget = g.budget;
      opt.spectrum.threads = g.threads;
      opt.spectrum.fast_path = sw_no_fast ? FastPath::Never : FastPath::Auto;
      std::vector<Element> cs;
      if (!sw_c.empty()) {
        for (const auto& t : sw_c) cs.push_back(parse_c(f, t));
      } else {
        cs = all_c_values(f, true, sw_zero);
        if (sw_sample > 0) cs = sample_values(std::move(cs), sw_sample, g.seed);
        else if (f.order() > 1024)
          throw BudgetExceeded("sweeping every c is limited to q <= 1024; use --sample N --seed S");
      }
      std::vector<SpectrumReport> reports;
      if (cache) {
        const std::uint64_t cost = spectrum_cost(f, spec, opt.spectrum) * cs.size();
        if (cost > opt.budget) throw BudgetExceeded("sweep needs about " + std::to_string(cost) + " operations");
        for (Element c : cs)
          if (!(c == 1 && opt.exclude_one)) reports.push_back(cache->uniformity(f, spec, c, opt.spectrum));
      } else {
        reports = sweep(f, spec, cs, opt);
      }
      if (g.format == "json") {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        emit(g, arr.dump() + "\n");
      } else if (g.format == "csv") {
        emit(g, reports_to_csv(reports));
      } else {
        emit(g, report_table(reports));
      }
      return 0;
    }

    if (*v_cmd) {
      VerifyConfig cfg = default_config(theorem);
      if (!ranges.empty()) {
        cfg.ranges.clear();
        for (const auto& r : ranges) cfg.ranges.push_back(parse_range(r));
      } else if (p_given) {
        const std::uint32_t lo = n_min.value_or(g.n), hi = n_max.value_or(std::max(lo, g.n));
        cfg.ranges = {{g.p, lo, hi}};
        if (theorem == "jacobsthal") cfg.count_ranges.clear();
      }
      if (k_min || k_max) {
        const auto base = cfg.k_range.value_or(std::pair<std::uint32_t, std::uint32_t>{1, 1u << 20});
        cfg.k_range = {k_min.value_or(base.first), k_max.value_or(base.second)};
      }
      cfg.c.seed = g.seed;
      if (v_all) cfg.c.mode = CPolicy::Mode::All;
      if (!v_c.empty()) {
        cfg.c.mode = CPolicy::Mode::List;
        cfg.c.values = v_c;
      }
      if (v_sample) {
        cfg.c.mode = CPolicy::Mode::Sample;
        cfg.c.sample = *v_sample;
      }
      if (d_min) cfg.d_min = *d_min;
      if (d_max) cfg.d_max = *d_max;
      if (v_quadratics) cfg.quadratic_samples = *v_quadratics;
      if (!v_u.empty()) {
        cfg.u_values.clear();
        for (const auto& u : v_u) cfg.u_values.push_back(static_cast<Element>(std::stoul(u)));
      }
      cfg.threads = g.threads;
      cfg.budget = g.budget;
      cfg.timing = v_timing;
      if (cache) cfg.cache = &*cache;

      const auto records = run_verify(theorem, cfg);
      if (g.format == "json") emit(g, records_to_json(records).dump() + "\n");
      else if (g.format == "csv") emit(g, records_to_csv(records));
      else emit(g, record_table(records));
      std::size_t pass = 0, fail = 0, skip = 0;
      for (const auto& r : records)
        (r.verdict == Verdict::Pass ? pass : r.verdict == Verdict::Fail ? fail : skip)++;
      std::cerr << theorem << ": " << records.size() << " records, " << pass << " PASS, " << fail << " FAIL, " << skip
                << " SKIP\n";
      return fail == 0 ? 0 : 1;
    }

    if (*dk_cmd) {
      const Field f = make_field(g);
      const auto dist = dickson_preimage_distribution(f, dk_m);
      const auto sizes = dickson_fiber_sizes(f, dk_m);
      std::uint64_t mismatches = 0;
      for (Element x = 0; x < f.order(); ++x)
        if (cgm_preimage_formula(f, dk_m, x) != sizes[x]) ++mismatches;
      if (g.format == "json") {
        json j = to_json(dist);
        j["m"] = dk_m;
        j["formula_mismatches"] = mismatches;
        j["permutation"] = dist.max_size == 1;
        emit(g, j.dump() + "\n");
      } else if (g.format == "csv") {
        std::string out = "size,count\n";
        for (const auto& [s, cnt] : dist.frequency) out += std::to_string(s) + "," + std::to_string(cnt) + "\n";
        emit(g, out);
      } else {
        std::ostringstream os;
        os << "D_" << dk_m << " over F_" << g.p << "^" << g.n << "\n" << pad("size", 8) << "count\n";
        for (const auto& [s, cnt] : dist.frequency) os << pad(std::to_string(s), 8) << cnt << "\n";
        os << "max fiber " << dist.max_size << ", formula mismatches " << mismatches << "\n";
        emit(g, os.str());
      }
      return 0;
    }

    if (*gr_cmd) {
      const Field f = make_field(g);
      const auto dist = gold_equation_distribution(f, gr_k);
      const auto pred = predict_gold_root_counts(g.n, gr_k);
      json predicted = json::object();
      for (const auto& [s, cnt] : pred.counts) predicted[std::to_string(s)] = cnt;
      if (g.format == "json") {
        emit(g, json{{"n", g.n},
                     {"k", gr_k},
                     {"observed", to_json(dist.nonzero_beta)},
                     {"zero_beta_roots", dist.zero_beta_roots},
                     {"predicted", predicted},
                     {"complete", pred.complete},
                     {"applicable", pred.applicable()}}
                        .dump() +
                    "\n");
      } else if (g.format == "csv") {
        std::string out = "roots,observed,predicted\n";
        std::set<std::uint32_t> keys;
        for (const auto& [s, c] : dist.nonzero_beta.frequency) keys.insert(s);
        for (const auto& [s, c] : pred.counts) keys.insert(s);
        for (auto s : keys) {
          auto it = pred.counts.find(s);
          out += std::to_string(s) + "," + std::to_string(dist.nonzero_beta.at(s)) + "," +
                 (it == pred.counts.end() ? std::string(pred.complete ? "0" : "") : std::to_string(it->second)) + "\n";
        }
        emit(g, out);
      } else {
        std::ostringstream os;
        os << "z^" << ((1ull << gr_k) + 1) << " + z + beta over F_2^" << g.n << "\n" << pad("roots", 8) << pad("beta", 10) << "predicted\n";
        for (const auto& [s, cnt] : dist.nonzero_beta.frequency) {
          auto it = pred.counts.find(s);
          os << pad(std::to_string(s), 8) << pad(std::to_string(cnt), 10)
             << (it == pred.counts.end() ? "-" : std::to_string(it->second)) << "\n";
        }
        os << "beta = 0: " << dist.zero_beta_roots << " roots\n";
        if (!pred.applicable()) os << "prediction not applicable: " << failed_conditions(pred.conditions) << "\n";
        for (const auto& note : pred.notes) os << "note: " << note << "\n";
        emit(g, os.str());
      }
      return 0;
    }

    if (*ja_cmd) {
      const Field f = make_field(g);
      const Element a2 = parse_c(f, ja2), a1 = parse_c(f, ja1), a0 = parse_c(f, ja0);
      const std::int64_t sum = jacobsthal_sum(f, a2, a1, a0);
      const std::int64_t closed = jacobsthal_closed_form(f, a2, a1, a0);
      if (g.format == "json") emit(g, json{{"sum", sum}, {"closed_form", closed}}.dump() + "\n");
      else if (g.format == "csv") emit(g, "sum,closed_form\n" + std::to_string(sum) + "," + std::to_string(closed) + "\n");
      else emit(g, "sum " + std::to_string(sum) + ", closed form " + std::to_string(closed) + "\n");
      return 0;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
