#include "iwasawa/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "iwasawa/arith.hpp"
#include "iwasawa/cache.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/lvalues.hpp"
#include "iwasawa/mtt.hpp"
#include "iwasawa/selfcheck.hpp"

namespace iwasawa {

using json = nlohmann::json;

// ---- input files ----------------------------------------------------------

namespace {

std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> w;
  for (std::string t; is >> t;) w.push_back(t);
  return w;
}

[[noreturn]] void parse_error(const std::string& source, int line, const std::string& msg) {
  throw Error(Errc::ParseError, source + ":" + std::to_string(line) + ": " + msg);
}

Rational parse_rational(const std::string& s, const std::string& source, int line) {
  Rational q;
  bool ok = !s.empty() && s.find_first_not_of("+-0123456789/") == std::string::npos;
  if (ok) {
    try {
      q = Rational(s[0] == '+' ? s.substr(1) : s, 10);
      ok = q.get_den() != 0;
    } catch (const std::exception&) {
      ok = false;
    }
  }
  if (!ok) parse_error(source, line, "'" + s + "' is not a rational number");
  q.canonicalize();
  return q;
}

std::string read_all(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

std::vector<CurveModel> parse_curve_text(const std::string& text, const std::string& source) {
  std::vector<CurveModel> out;
  std::set<std::string> seen;
  std::istringstream in(text);
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    std::string body = strip_comment(line);
    if (split_ws(body).empty()) continue;
    auto colon = body.find(':');
    if (colon == std::string::npos) parse_error(source, lineno, "expected '<label> : a1 a2 a3 a4 a6'");
    auto lw = split_ws(body.substr(0, colon));
    if (lw.size() != 1) parse_error(source, lineno, "label must be one word");
    auto cw = split_ws(body.substr(colon + 1));
    if (cw.size() != 5) parse_error(source, lineno, "expected 5 coefficients, found " + std::to_string(cw.size()));
    std::array<Rational, 5> a;
    for (int i = 0; i < 5; ++i) a[static_cast<std::size_t>(i)] = parse_rational(cw[static_cast<std::size_t>(i)], source, lineno);
    if (!seen.insert(lw[0]).second) parse_error(source, lineno, "duplicate label " + lw[0]);
    CurveModel E(lw[0], a);
    if (E.discriminant() == 0) throw Error(Errc::SingularCurve, lw[0] + " (" + source + ":" + std::to_string(lineno) + ") is singular");
    out.push_back(std::move(E));
  }
  return out;
}

std::vector<CurveModel> parse_curve_file(const std::string& path) { return parse_curve_text(read_all(path), path); }

std::string format_curve_line(const CurveModel& E) {
  std::string s = E.label() + " :";
  for (const auto& a : E.a()) s += " " + a.get_str();
  return s;
}

std::vector<PairSpec> parse_pairs_text(const std::string& text, const std::string& source) {
  std::vector<PairSpec> out;
  std::istringstream in(text);
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    auto w = split_ws(strip_comment(line));
    if (w.empty()) continue;
    if (w.size() != 2) parse_error(source, lineno, "expected '<labelA> <labelB>' or '<labelA> tw:<D>'");
    PairSpec ps;
    ps.first = w[0];
    ps.line = lineno;
    if (w[1].rfind("tw:", 0) == 0) {
      std::string d = w[1].substr(3);
      std::size_t pos = 0;
      long D = 0;
      try {
        D = std::stol(d, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (d.empty() || pos != d.size()) parse_error(source, lineno, "bad discriminant '" + d + "'");
      ps.twist = D;
    } else {
      ps.second = w[1];
    }
    out.push_back(std::move(ps));
  }
  return out;
}

std::vector<PairSpec> parse_pairs_file(const std::string& path) { return parse_pairs_text(read_all(path), path); }

// ---- commands -------------------------------------------------------------

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"classify",      "lvalue",       "padic-l",     "verify-mtt",
                                              "verify-conj11", "verify-eq13",  "twist-search", "selfcheck"};
  return names;
}

namespace {

std::string real_str(const Real& x) { return format_real(x, 20); }
std::string sci(const Real& x) { return format_real(x, 3); }

std::string utc_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Shared L-function objects and cache for one run.
class Context {
 public:
  explicit Context(const CliConfig& cfg) : cfg_(cfg) {
    if (!cfg.cache_dir.empty()) cache_ = std::make_unique<Cache>(cfg.cache_dir);
    for (const auto& c : cfg.curves) models_.emplace(c.label(), c);
  }

  const CliConfig& cfg() const { return cfg_; }

  std::shared_ptr<LFunction> lfunction(const CurveModel& m) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = lfs_.find(m.label());
      if (it != lfs_.end()) return it->second;
    }
    auto L = std::make_shared<LFunction>(CurveData(m));
    if (cache_) cache_->warm(*L, std::min(cfg_.nmax, 20000L));
    std::lock_guard<std::mutex> lock(mu_);
    return lfs_.emplace(m.label(), L).first->second;
  }

  const CurveModel& model(const std::string& label) const {
    auto it = models_.find(label);
    if (it == models_.end()) throw Error(Errc::InvalidArgument, "curve " + label + " is not in the curves file");
    return it->second;
  }

  // Twisted tables through the cache, levels 1..K.
  void prepare(LFunction& L, long p, int K) {
    if (!cache_) return;
    for (int k = 1; k <= K; ++k) cache_->twisted_level(L, p, k);
  }

  std::vector<std::string> warnings() const { return cache_ ? cache_->warnings() : std::vector<std::string>{}; }

 private:
  const CliConfig& cfg_;
  std::unique_ptr<Cache> cache_;
  std::map<std::string, CurveModel> models_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<LFunction>> lfs_;
};

json params_json(const CliConfig& c) {
  return json{{"level", c.level},       {"precision", c.precision},     {"degree", c.degree},
              {"nmax", c.nmax},         {"tol", sci(c.tol)},            {"denom_bound", c.denom_bound},
              {"twist_bound", c.twist_bound}};
}

json base_record(const std::string& command, const CliConfig& cfg, std::vector<std::string> curves) {
  return json{{"schema", kSchemaVersion}, {"command", command}, {"curves", std::move(curves)}, {"p", cfg.p}, {"params", params_json(cfg)}};
}

json verdict_record(json rec, const Verdict& v) {
  rec["status"] = "ok";
  rec["claim"] = v.claim;
  rec["verdict"] = verdict_name(v.status);
  rec["result"] = v.evidence;
  rec["error_budget"] = json{{"tolerance", v.tolerance}};
  return rec;
}

json error_record(json rec, const std::exception& e) {
  rec["status"] = "error";
  if (auto* ie = dynamic_cast<const Error*>(&e))
    rec["error"] = json{{"code", errc_name(ie->code())}, {"message", ie->what()}};
  else
    rec["error"] = json{{"code", "Internal"}, {"message", e.what()}};
  return rec;
}

MttConfig mtt_config(const CliConfig& c) {
  MttConfig m;
  m.level = c.level;
  m.precision = c.precision;
  m.degree = c.degree;
  m.denom_bound = c.denom_bound;
  m.tol = c.tol;
  return m;
}

using Item = std::function<std::vector<json>()>;

std::vector<json> classify(Context& ctx, const CurveModel& m) {
  const auto& cfg = ctx.cfg();
  json rec = base_record("classify", cfg, {m.label()});
  try {
    CurveData E(m);
    ReductionData rd = reduce_at(E, cfg.p);
    json bad = json::array();
    for (const auto& ld : E.local_data())
      if (ld.conductor_exponent > 0)
        bad.push_back(json{{"p", ld.p}, {"kodaira", ld.kodaira}, {"f", ld.conductor_exponent}, {"c", ld.tamagawa}, {"type", reduction_name(ld.type)}});
    rec["status"] = "ok";
    rec["result"] = json{{"conductor", E.conductor()},
                         {"minimal_discriminant", E.minimal_discriminant().get_str()},
                         {"j_invariant", m.j_invariant().get_str()},
                         {"tamagawa_product", E.tamagawa_product()},
                         {"real_components", real_components(E)},
                         {"omega", real_str(real_period(E))},
                         {"bad_primes", bad},
                         {"reduction", json{{"type", reduction_name(rd.type)}, {"ap", rd.ap}, {"kodaira", rd.kodaira}, {"tamagawa", rd.tamagawa},
                                            {"conductor_exponent", rd.conductor_exponent}}}};
    rec["error_budget"] = json{{"arithmetic", "exact"}, {"omega_abs", "1e-30"}};
  } catch (const std::exception& e) {
    rec = error_record(rec, e);
  }
  return {rec};
}

std::vector<json> lvalue(Context& ctx, const CurveModel& m) {
  const auto& cfg = ctx.cfg();
  json rec = base_record("lvalue", cfg, {m.label()});
  try {
    auto L = ctx.lfunction(m);
    int w = L->root_number();
    json result{{"root_number", w}, {"omega", real_str(L->omega())}};
    json budget{{"tolerance", sci(cfg.tol)}};
    try {
      int r = L->analytic_rank(cfg.tol);
      ComplexLValue v = L->value(r);
      result["analytic_rank"] = r;
      result["derivative"] = real_str(v.value.real());
      result["derivative_over_factorial"] = real_str(v.value.real() / Real(r == 3 ? 6 : r == 2 ? 2 : 1));
      budget["derivative_abs"] = sci(v.error);
      budget["terms"] = v.terms;
    } catch (const Error& e) {
      if (e.code() != Errc::RankCapExceeded) throw;
      result["analytic_rank"] = "capped";
    }
    ComplexLValue v0 = L->value(0);
    result["l_value"] = real_str(v0.value.real());
    result["l_over_omega"] = real_str(v0.value.real() / L->omega());
    budget["l_value_abs"] = sci(v0.error);
    ReductionData rd = reduce_at(L->curve(), cfg.p);
    if (rd.type != ReductionType::Additive) {
      ComplexLValue vm = L->modified(cfg.p);
      result["modified_at_p"] = real_str(vm.value.real());
      budget["modified_abs"] = sci(vm.error);
    }
    rec["status"] = "ok";
    rec["result"] = result;
    rec["error_budget"] = budget;
  } catch (const std::exception& e) {
    rec = error_record(rec, e);
  }
  return {rec};
}

std::vector<json> padic_l(Context& ctx, const CurveModel& m) {
  const auto& cfg = ctx.cfg();
  json rec = base_record("padic-l", cfg, {m.label()});
  try {
    auto L = ctx.lfunction(m);
    ctx.prepare(*L, cfg.p, cfg.level + 1);
    PadicLData d = mtt_measure(*L, cfg.p, cfg.level, cfg.precision, cfg.denom_bound);
    PadicLSeries s = padic_l_series(d, cfg.degree);
    Verdict interp = interpolation_check(*L, d, cfg.tol);
    json coeffs = json::array(), ledger = json::array();
    for (int k = 0; k < s.series.degree(); ++k) {
      coeffs.push_back(s.series[k].to_string());
      int e = s.ledger.error_valuation[static_cast<std::size_t>(k)];
      ledger.push_back(e >= PadicNumber::kExact / 2 ? json("exact") : json(e));
    }
    auto ord = vanishing_order(s.series);
    json result{{"reduction", reduction_name(d.type)},
                {"ap", d.ap},
                {"alpha", d.alpha.to_string()},
                {"l_over_omega", d.l_over_omega.get_str()},
                {"augmentation_exact", d.exact.front()[0].to_string()},
                {"series", coeffs},
                {"order", ord.order ? json(*ord.order) : json("indeterminate")},
                {"tower_compatible", exact_tower_compatible(d)},
                {"iota_phi_consistent", s.iota_phi_consistent},
                {"interpolation", verdict_name(interp.status)},
                {"interpolation_deviation", interp.evidence["twisted_deviation"]},
                {"denominator_bound", d.symbols.denominator_bound()}};
    if (d.type == ReductionType::SplitMultiplicative) result["l_invariant"] = l_invariant(L->curve(), cfg.p, cfg.precision).to_string();
    rec["status"] = "ok";
    rec["result"] = result;
    rec["error_budget"] = json{{"ledger", ledger},
                               {"measure_valuation", d.measure_valuation},
                               {"reconstruction_residual", sci(d.symbols.max_residual())},
                               {"interpolation_tol", sci(cfg.tol)}};
  } catch (const std::exception& e) {
    rec = error_record(rec, e);
  }
  return {rec};
}

std::vector<json> verify_mtt(Context& ctx, const CurveModel& m) {
  const auto& cfg = ctx.cfg();
  std::vector<json> out;
  json rec = base_record("verify-mtt", cfg, {m.label()});
  try {
    auto L = ctx.lfunction(m);
    ctx.prepare(*L, cfg.p, std::max(cfg.level, 1) + 1);
    out.push_back(verdict_record(rec, conj_mtt_verdict(*L, cfg.p, mtt_config(cfg))));
    if (reduce_at(L->curve(), cfg.p).type == ReductionType::SplitMultiplicative && L->root_number() == 1 &&
        abs(L->value(0).value) > cfg.tol)
      out.push_back(verdict_record(rec, gs_check(*L, cfg.p, mtt_config(cfg))));
  } catch (const std::exception& e) {
    out.push_back(error_record(rec, e));
  }
  return out;
}

std::pair<CurveModel, CurveModel> resolve(Context& ctx, const PairSpec& ps) {
  const CurveModel& a = ctx.model(ps.first);
  if (ps.twist) return {a, quadratic_twist(a, *ps.twist)};
  return {a, ctx.model(ps.second)};
}

std::string pair_second(const PairSpec& ps) { return ps.twist ? ps.first + "_tw" + std::to_string(*ps.twist) : ps.second; }

std::vector<json> verify_pair(Context& ctx, const PairSpec& ps, const std::string& command) {
  const auto& cfg = ctx.cfg();
  std::vector<json> out;
  json rec = base_record(command, cfg, {ps.first, pair_second(ps)});
  try {
    auto [a, b] = resolve(ctx, ps);
    auto E = ctx.lfunction(a);
    auto F = ctx.lfunction(b);
    ctx.prepare(*E, cfg.p, std::max(cfg.level, 1) + 1);
    ctx.prepare(*F, cfg.p, std::max(cfg.level, 1) + 1);
    MttConfig mc = mtt_config(cfg);
    if (command == "verify-eq13") {
      out.push_back(verdict_record(rec, finite_level_product_check(*E, *F, cfg.p, mc)));
    } else {
      out.push_back(verdict_record(rec, conj11_verdict(*E, *F, cfg.p, mc)));
      try {
        out.push_back(verdict_record(rec, conj21_leading_check(*E, *F, cfg.p, mc)));
      } catch (const Error& e) {
        if (e.code() != Errc::RankPositive && e.code() != Errc::InvalidArgument) throw;
        out.push_back(error_record(rec, e));
      }
    }
  } catch (const std::exception& e) {
    out.push_back(error_record(rec, e));
  }
  return out;
}

std::vector<json> twist_cmd(Context& ctx, const CurveModel& m) {
  const auto& cfg = ctx.cfg();
  json rec = base_record("twist-search", cfg, {m.label()});
  try {
    auto list = twist_search(CurveData(m), cfg.p, cfg.twist_bound, {}, {}, 0, cfg.tol);
    json cands = json::array();
    for (const auto& c : list)
      cands.push_back(json{{"D", c.D},
                           {"label", c.label},
                           {"conductor", c.conductor},
                           {"l_value", real_str(c.l_value)},
                           {"l_over_omega", real_str(c.l_over_omega)},
                           {"sha_condition_verified", c.sha_condition_verified}});
    rec["status"] = "ok";
    rec["result"] = json{{"candidates", cands}, {"count", list.size()}};
    rec["error_budget"] = json{{"nonvanishing_tol", sci(cfg.tol)}};
  } catch (const std::exception& e) {
    rec = error_record(rec, e);
  }
  return {rec};
}

std::vector<json> selfcheck_cmd(const CliConfig& cfg) {
  std::filesystem::path scratch = std::filesystem::temp_directory_path() / ("iwasawa-selfcheck-" + std::to_string(::getpid()));
  auto results = run_selfcheck(scratch);
  std::vector<json> out;
  long pass = 0;
  for (const auto& r : results) {
    json rec = base_record("selfcheck", cfg, {});
    rec["status"] = "ok";
    rec["claim"] = r.module + ": " + r.name;
    rec["verdict"] = r.passed ? verdict_name(VerdictStatus::HoldsAtPrecision) : verdict_name(VerdictStatus::Fails);
    rec["result"] = json{{"module", r.module}, {"detail", r.detail}};
    rec["error_budget"] = json{{"tolerance", "per check"}};
    pass += r.passed;
    out.push_back(rec);
  }
  json sum = base_record("selfcheck", cfg, {});
  sum["status"] = "ok";
  sum["claim"] = "summary";
  sum["result"] = json{{"passed", pass}, {"failed", static_cast<long>(results.size()) - pass}};
  sum["error_budget"] = json{{"tolerance", "per check"}};
  out.push_back(sum);
  return out;
}

void tally(RunSummary& s, const json& rec) {
  ++s.records;
  if (rec.value("status", "") == "error") {
    ++s.errors;
    return;
  }
  if (!rec.contains("verdict")) return;
  std::string v = rec["verdict"];
  if (v == verdict_name(VerdictStatus::HoldsAtPrecision))
    ++s.holds;
  else if (v == verdict_name(VerdictStatus::Fails))
    ++s.fails;
  else
    ++s.indeterminate;
}

}  // namespace

RunSummary run_command(const std::string& name, const CliConfig& cfg, std::ostream& out) {
  RunSummary summary;
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    summary.exit_code = 2;
    return summary;
  }
  Context ctx(cfg);
  std::vector<Item> items;
  if (name == "selfcheck") {
    items.push_back([&] { return selfcheck_cmd(cfg); });
  } else if (name == "verify-conj11" || name == "verify-eq13") {
    if (cfg.pairs.empty()) {
      summary.exit_code = 2;
      return summary;
    }
    for (const auto& ps : cfg.pairs) items.push_back([&ctx, ps, name] { return verify_pair(ctx, ps, name); });
  } else {
    if (cfg.curves.empty()) {
      summary.exit_code = 2;
      return summary;
    }
    using Fn = std::vector<json> (*)(Context&, const CurveModel&);
    Fn fn = name == "classify" ? classify : name == "lvalue" ? lvalue : name == "padic-l" ? padic_l : name == "verify-mtt" ? verify_mtt : twist_cmd;
    for (const auto& m : cfg.curves) items.push_back([&ctx, m, fn] { return fn(ctx, m); });
  }

  // Bounded pool; records are emitted in input order so runs are reproducible.
  std::vector<std::vector<json>> results(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < items.size();) results[i] = items[i]();
  };
  unsigned nthreads = std::max(1U, std::min<unsigned>(cfg.threads, static_cast<unsigned>(items.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& recs : results)
    for (auto& rec : recs) {
      if (cfg.timestamps) rec["timestamp"] = utc_now();
      tally(summary, rec);
      out << rec.dump() << "\n";
    }
  for (const auto& w : ctx.warnings()) {
    json rec = base_record(name, cfg, {});
    rec["status"] = "warning";
    rec["result"] = json{{"message", w}};
    rec["error_budget"] = json{{"tolerance", "n/a"}};
    if (cfg.timestamps) rec["timestamp"] = utc_now();
    out << rec.dump() << "\n";
  }
  out.flush();
  if (!out) summary.exit_code = 2;
  else if (summary.fails > 0 || summary.errors > 0) summary.exit_code = 1;
  return summary;
}

}  // namespace iwasawa
