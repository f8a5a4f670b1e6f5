#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "spinfold/cli_config.hpp"
#include "spinfold/cli_ops.hpp"
#include "spinfold/cli_suites.hpp"

namespace spinfold::cli {

struct CheckResult {
  std::string id;
  bool expect_fail = false;
  nlohmann::json params;
  ResidualReport report;
  long elapsed_ms = 0;

  bool passed() const { return expect_fail ? report.status == Status::Fail : report.ok(); }
};

inline int thread_budget(std::size_t jobs) {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("SPINFOLD_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, std::min<int>(n, static_cast<int>(jobs)));
}

// Results come back sorted by check id regardless of completion order.
inline std::vector<CheckResult> run_checks(const std::vector<Check>& checks) {
  std::vector<CheckResult> out(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < checks.size();) {
      const Check& c = checks[k];
      auto t0 = std::chrono::steady_clock::now();
      ResidualReport rep;
      try {
        rep = c.run();
      } catch (const std::exception& e) {
        rep.status = Status::Fail;
        rep.witness = std::string("error: ") + e.what();
      }
      auto dt = std::chrono::steady_clock::now() - t0;
      out[k] = {c.id, c.expect_fail, c.params, rep,
                static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(dt).count())};
    }
  };
  int n = thread_budget(checks.size());
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

inline nlohmann::json result_json(const CheckResult& r) {
  nlohmann::json j;
  j["check"] = r.id;
  j["status"] = status_name(r.report.status);
  if (r.report.exact && r.report.max_interior == 0.0)
    j["max_interior"] = "0";
  else
    j["max_interior"] = r.report.max_interior;
  if (r.report.constant)
    j["constant"] = {r.report.constant->real(), r.report.constant->imag()};
  else
    j["constant"] = nullptr;
  if (r.report.witness)
    j["witness"] = *r.report.witness;
  else
    j["witness"] = nullptr;
  j["params"] = r.params;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline void print_results(const std::vector<CheckResult>& rs, const std::string& format, std::ostream& out) {
  if (format == "json") {
    for (const auto& r : rs) out << result_json(r).dump() << "\n";
    return;
  }
  std::size_t wid = 5;
  for (const auto& r : rs) wid = std::max(wid, r.id.size());
  out << fmt::format("{:<{}}  {:<13}  {:<6}  {:<4}  {:>12}  {}\n", "check", wid, "status", "expect", "ok", "max_interior",
                     "detail");
  int passed = 0;
  for (const auto& r : rs) {
    std::string detail;
    if (r.report.constant) detail = "constant " + to_string(*r.report.constant);
    if (r.report.witness) detail += (detail.empty() ? "" : "; ") + *r.report.witness;
    std::string mi = r.report.exact && r.report.max_interior == 0.0 ? "0" : fmt::format("{:.3e}", r.report.max_interior);
    out << fmt::format("{:<{}}  {:<13}  {:<6}  {:<4}  {:>12}  {}\n", r.id, wid, status_name(r.report.status),
                       r.expect_fail ? "fail" : "pass", r.passed() ? "yes" : "NO", mi, detail);
    passed += r.passed();
  }
  out << fmt::format("{} of {} checks passed\n", passed, rs.size());
}

struct Options {
  RunConfig cfg;
  std::string config_path;
  std::vector<std::string> op_tokens;
  std::string preset = "xxx-magnetic";
  std::string table;
  std::string k_pm;
  std::string diff;
  bool allow_constant = false;
  std::string form = "signed";
  int zmax = 5;
};

struct Resolved {
  RunConfig cfg;
  int L = 4;
  int window = 2;
  bool exact = true;
};

inline Resolved resolve(const RunConfig& in, bool force_float = false) {
  Resolved r{in};
  RunConfig& c = r.cfg;
  static const std::vector<std::string> models{"xxx", "ino", "double-xxx", "double-ino"};
  if (std::find(models.begin(), models.end(), c.model) == models.end()) throw UsageError("unknown model: " + c.model);
  if (c.boundary.empty()) c.boundary = default_boundary(c.model);
  std::vector<std::string> bounds = is_double_model(c.model) ? std::vector<std::string>{"bulk", "diagonal"}
                                                             : std::vector<std::string>{"bulk", "magnetic", "open"};
  if (std::find(bounds.begin(), bounds.end(), c.boundary) == bounds.end())
    throw UsageError("boundary " + c.boundary + " does not apply to model " + c.model);
  if (c.format != "text" && c.format != "json") throw UsageError("format must be text or json");
  bool ino = is_ino_model(c.model) || force_float;
  if (c.field.empty()) c.field = ino ? "float" : "exact";
  if (c.field != "exact" && c.field != "float") throw UsageError("field must be exact or float");
  if (ino && c.field == "exact") throw UsageError("long-range operators need --field float");
  if (is_ino_model(c.model) && !c.kappa) throw UsageError("model " + c.model + " needs --kappa");
  if (c.kappa && !(*c.kappa > 0)) throw UsageError("kappa must be positive");
  r.L = c.L.value_or(default_length(c.model));
  int max_L = is_double_model(c.model) ? 8 : 16;
  if (r.L < 2 || r.L > max_L) throw UsageError(fmt::format("L must lie in [2, {}]", max_L));
  try {
    parse_rational(c.lambda);
    parse_rational(c.mu);
  } catch (const std::exception&) {
    throw UsageError("lambda and mu must be numbers or p/q");
  }
  if (parse_rational(c.lambda) == 0) throw UsageError("lambda must be nonzero");
  if (c.boundary == "magnetic" && parse_rational(c.mu) == 0) throw UsageError("magnetic boundary needs mu != 0");
  if (c.edge_window && (*c.edge_window < 0 || *c.edge_window >= r.L))
    throw UsageError("edge window must lie in [0, L)");
  r.window = c.edge_window.value_or(std::min(ino ? r.L / 2 : 2, r.L - 1));
  r.exact = c.field == "exact";
  return r;
}

template <class S>
OpContext<S> op_context(const Resolved& r) {
  OpContext<S> c;
  c.L = r.L;
  c.lambda = parse_scalar<S>(r.cfg.lambda);
  c.mu = parse_scalar<S>(r.cfg.mu);
  c.kappa = r.cfg.kappa;
  c.kind = r.cfg.kind == "ino" || r.cfg.model == "double-ino" ? Kind::Ino : Kind::Xxx;
  return c;
}

inline nlohmann::json base_params(const Resolved& r) {
  const RunConfig& c = r.cfg;
  nlohmann::json p;
  p["model"] = c.model;
  p["boundary"] = c.boundary;
  p["L"] = r.L;
  p["lambda"] = c.lambda;
  p["mu"] = c.mu;
  p["kappa"] = c.kappa ? nlohmann::json(*c.kappa) : nlohmann::json(nullptr);
  p["edge_window"] = r.window;
  p["field"] = c.field;
  return p;
}

template <class S>
std::vector<Check> build_suite(const Resolved& r, const SuiteEnv<S>& env) {
  auto base = base_params(r);
  const std::string& m = r.cfg.model;
  if (m == "xxx") return xxx_suite(env, r.cfg.boundary, base);
  if (is_double_model(m)) return double_suite(env, r.cfg.boundary, base);
  if constexpr (!is_exact_v<S>) return ino_suite(env, r.cfg.boundary, base);
  throw UsageError("model " + m + " needs --field float");
}

inline std::vector<Check> select_suite(std::vector<Check> all, const std::string& suite) {
  if (suite == "all") return all;
  std::vector<Check> out;
  for (auto& c : all)
    if (c.id == suite || c.id.rfind(suite + ".", 0) == 0) out.push_back(std::move(c));
  if (out.empty()) throw UsageError("suite " + suite + " selects no checks");
  return out;
}

template <class S>
int verify_as(const Resolved& r, std::ostream& out) {
  SuiteEnv<S> env{op_context<S>(r), r.window, r.cfg.tol_identity, r.cfg.tol_edge, r.cfg.seed};
  auto checks = select_suite(build_suite(r, env), r.cfg.suite);
  auto results = run_checks(checks);
  print_results(results, r.cfg.format, out);
  bool ok = std::all_of(results.begin(), results.end(), [](const auto& x) { return x.passed(); });
  return ok ? 0 : 1;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  auto r = resolve(cfg);
  return r.exact ? verify_as<QComplex>(r, out) : verify_as<Complex>(r, out);
}

template <class S>
FoldingConstants<S> folding_table(const Options& o, const OpContext<S>& c) {
  if (!o.table.empty()) {
    std::ifstream in(o.table);
    if (!in) throw UsageError("cannot open table " + o.table);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw UsageError("bad table " + o.table + ": " + e.what());
    }
    return constants_from_json<S>(j);
  }
  if (o.preset == "all-ones") return all_ones<S>();
  if (o.preset == "ino-magnetic+") return ino_magnetic<S>(1);
  if (o.preset == "ino-magnetic-") return ino_magnetic<S>(-1);
  if (o.preset == "xxx-magnetic") {
    if (is_zero(c.mu)) throw UsageError("xxx-magnetic needs mu != 0");
    if (!o.k_pm.empty()) return xxx_magnetic(c.lambda, c.mu, parse_scalar<S>(o.k_pm));
    return xxx_magnetic(c.lambda, c.mu);
  }
  throw UsageError("unknown preset: " + o.preset);
}

inline std::string joined_id(const std::vector<std::string>& tokens) {
  std::string id;
  for (const auto& t : tokens) id += t;
  return id;
}

// Operator commands pick the model from the id, so the run config is relaxed here.
inline Resolved resolve_for_operator(const Options& o, const std::string& id) {
  RunConfig c = o.cfg;
  bool flt = needs_float(id, c.kind);
  if (!is_double_model(c.model) && is_two_row(id)) c.model = flt ? "double-ino" : "double-xxx";
  if (flt && c.field == "exact") throw UsageError(id + " needs --field float");
  if (flt && !c.kappa) throw UsageError(id + " needs --kappa");
  if (c.boundary.empty() || c.boundary == "magnetic" || c.boundary == "diagonal") c.boundary = "bulk";
  return resolve(c, flt);
}

template <class S>
int fold_as(const Options& o, const Resolved& r, const std::string& id, std::ostream& out) {
  auto c = op_context<S>(r);
  auto A = make_operator(c, id);
  auto K = folding_table(o, c);
  auto F = A.chain().rows == 2 ? fold_double(A, K) : fold(A, K);
  if (o.diff.empty()) {
    out << render(F);
    return 0;
  }
  auto B = make_scaled(c, o.diff);
  if (B.chain() != F.chain()) throw UsageError("--diff operand lives on " + describe(B.chain()) + ", fold on " +
                                               describe(F.chain()));
  auto rep = check_fold_identity(F, B, o.allow_constant, r.cfg.tol_identity);
  CheckResult res{"fold " + id + " - " + strip_spaces(o.diff), false, base_params(r), rep, 0};
  res.params["preset"] = o.table.empty() ? o.preset : o.table;
  res.params["expect"] = "pass";
  print_results({res}, r.cfg.format, out);
  return res.passed() ? 0 : 1;
}

inline int cmd_fold(const Options& o, std::ostream& out) {
  std::string id = joined_id(o.op_tokens);
  auto r = resolve_for_operator(o, id);
  return r.exact ? fold_as<QComplex>(o, r, id, out) : fold_as<Complex>(o, r, id, out);
}

template <class S>
int print_as(const Resolved& r, const std::string& id, std::ostream& out) {
  auto A = make_operator(op_context<S>(r), id);
  std::map<int, int> hist;
  for (const auto& [s, v] : A.terms()) hist[s.weight()]++;
  out << render(A);
  out << "chain: " << describe(A.chain()) << "\n";
  out << "terms: " << A.size() << "\n";
  out << "support:";
  for (auto [w, n] : hist) out << " " << w << ":" << n;
  out << "\n";
  if (A.size() > 0) {
    auto sorted = A.sorted();
    auto top = std::max_element(sorted.begin(), sorted.end(),
                                [](const auto& a, const auto& b) { return abs_value(a.second) < abs_value(b.second); });
    out << "dominant: " << render_term(top->first, top->second, A.chain()) << "\n";
  }
  out << "hermitian: " << (is_hermitian(A, r.exact ? 0.0 : r.cfg.tol_identity) ? "yes" : "no") << "\n";
  return 0;
}

inline int cmd_print(const Options& o, std::ostream& out) {
  std::string id = joined_id(o.op_tokens);
  auto r = resolve_for_operator(o, id);
  return r.exact ? print_as<QComplex>(r, id, out) : print_as<Complex>(r, id, out);
}

inline int cmd_kernels(const Options& o, std::ostream& out) {
  if (!o.cfg.kappa) throw UsageError("kernels needs --kappa");
  if (!(*o.cfg.kappa > 0)) throw UsageError("kappa must be positive");
  if (o.zmax < 1) throw UsageError("zmax must be positive");
  out << kernel_csv(KernelSet(*o.cfg.kappa), o.zmax);
  return 0;
}

template <class S>
int relations_as(const Options& o, const Resolved& r, const std::string& algebra, std::ostream& out) {
  auto c = op_context<S>(r);
  const int L = r.L;
  const ChainSpec full = ChainSpec::full(L), half = ChainSpec::half(L);
  const bool ino = is_ino_model(r.cfg.model);
  // XXX relations hold exactly, so nothing is excused at the edge unless asked for.
  RelationOptions ro = ino ? RelationOptions{r.window, r.cfg.tol_edge}
                                                        : RelationOptions{r.cfg.edge_window.value_or(0), r.cfg.tol_identity};
  RelationReport rep;
  if (algebra == "yangian") {
    auto J = triple_of<S>([&](Gen a) -> OperatorSum<S> {
      if constexpr (!is_exact_v<S>)
        if (ino) return build_e1_kappa(full, c.ino(), a, Variant::Full);
      return build_e1(full, c.lambda, a, Variant::Full);
    });
    rep = check_yangian(e0_triple<S>(full), J, c.lambda, {0, r.cfg.tol_identity});
  } else if (algebra == "twisted-plus") {
    if (is_zero(c.mu)) throw UsageError("twisted-plus needs mu != 0");
    OperatorSum<S> Xp(half), Xm(half);
    if constexpr (!is_exact_v<S>) {
      if (ino) {
        Xp = build_x_kappa(half, c.ino(), Gen::P);
        Xm = build_x_kappa(half, c.ino(), Gen::M);
      }
    }
    if (!ino) {
      Xp = build_x(half, XxxParams<S>{c.lambda, c.mu}, Gen::P, Variant::Full);
      Xm = build_x(half, XxxParams<S>{c.lambda, c.mu}, Gen::M, Variant::Full);
    }
    bool printed = o.form == "printed";
    S shift = printed ? S(-c.lambda / c.mu) : S(-c.lambda / (from_ratio<S>(2) * c.mu));
    rep = check_twisted_plus(build_e0<S>(half, Gen::Z), Xp, Xm, c.lambda, shift,
                             printed ? TwistedPlusForm::Printed : TwistedPlusForm::Signed, ro);
  } else if (algebra == "twisted-minus") {
    auto G = triple_of<S>([&](Gen a) -> OperatorSum<S> {
      if constexpr (!is_exact_v<S>)
        if (ino) return build_g_kappa(half, c.ino(), a);
      return build_g(half, c.lambda, a);
    });
    rep = check_twisted_minus(e0_triple<S>(half), G, c.lambda, ro);
  } else {
    const ChainSpec h2 = ChainSpec::half(L, 2);
    auto rp = c.rows();
    auto A = triple_of<S>([&](Gen a) { return build_ab(h2, rp, a, 0, AB::A); });
    auto Y = triple_of<S>([&](Gen a) { return build_y(h2, rp, a); });
    rep = check_diagonal(A, Y, c.lambda, ro);
  }
  auto base = base_params(r);
  std::vector<CheckResult> rs;
  for (const auto& [name, rr] : rep.relations) {
    CheckResult cr{algebra + "." + name, false, base, rr, 0};
    cr.params["expect"] = "pass";
    if (algebra == "twisted-plus") cr.params["form"] = o.form;
    rs.push_back(std::move(cr));
  }
  print_results(rs, r.cfg.format, out);
  return rep.pass() ? 0 : 1;
}

inline int cmd_relations(const Options& o, std::ostream& out) {
  if (o.op_tokens.size() != 1) throw UsageError("relations needs one algebra name");
  const std::string& algebra = o.op_tokens[0];
  const std::string& m = o.cfg.model;
  if (algebra == "diagonal") {
    if (!is_double_model(m)) throw UsageError("diagonal relations need model double-xxx or double-ino");
  } else if (algebra == "yangian" || algebra == "twisted-plus" || algebra == "twisted-minus") {
    if (m != "xxx" && m != "ino") throw UsageError(algebra + " relations need model xxx or ino");
  } else {
    throw UsageError("unknown algebra: " + algebra);
  }
  if (o.form != "signed" && o.form != "printed") throw UsageError("form must be signed or printed");
  RunConfig c = o.cfg;
  c.boundary = algebra == "yangian" ? "bulk" : (algebra == "diagonal" ? "diagonal" : (algebra == "twisted-plus" ? "magnetic" : "open"));
  auto r = resolve(c);
  return r.exact ? relations_as<QComplex>(o, r, algebra, out) : relations_as<Complex>(o, r, algebra, out);
}

inline void add_common(CLI::App* app, Options& o) {
  RunConfig& c = o.cfg;
  app->add_option("--config", o.config_path, "TOML file with run settings");
  app->add_option("--model", c.model, "xxx, ino, double-xxx or double-ino");
  app->add_option("--boundary", c.boundary, "bulk, magnetic, open or diagonal");
  app->add_option("--L", c.L, "sites per half chain");
  app->add_option("--lambda", c.lambda, "coupling, decimal or p/q");
  app->add_option("--mu", c.mu, "boundary field, decimal or p/q");
  app->add_option("--kappa", c.kappa, "long-range decay");
  app->add_option("--edge-window", c.edge_window, "sites excluded from the interior");
  app->add_option("--tol-identity", c.tol_identity, "float tolerance for identities");
  app->add_option("--tol-edge", c.tol_edge, "float tolerance for interior residuals");
  app->add_option("--field", c.field, "exact or float");
  app->add_option("--seed", c.seed, "seed for randomized checks");
  app->add_option("--format", c.format, "text or json");
  app->add_option("--kind", c.kind, "row kind for double-row operators: xxx or ino");
}

// Flags seen on the command line win over the config file.
inline void apply_config_file(Options& o, CLI::App* sub) {
  if (o.config_path.empty()) return;
  RunConfig flags = o.cfg;
  RunConfig merged;
  load_toml(merged, o.config_path);
  auto given = [&](const char* name) { return sub->count(name) > 0; };
  if (given("--model")) merged.model = flags.model;
  if (given("--boundary")) merged.boundary = flags.boundary;
  if (given("--L")) merged.L = flags.L;
  if (given("--lambda")) merged.lambda = flags.lambda;
  if (given("--mu")) merged.mu = flags.mu;
  if (given("--kappa")) merged.kappa = flags.kappa;
  if (given("--edge-window")) merged.edge_window = flags.edge_window;
  if (given("--tol-identity")) merged.tol_identity = flags.tol_identity;
  if (given("--tol-edge")) merged.tol_edge = flags.tol_edge;
  if (given("--field")) merged.field = flags.field;
  if (given("--seed")) merged.seed = flags.seed;
  if (given("--format")) merged.format = flags.format;
  if (given("--kind")) merged.kind = flags.kind;
  if (given("--suite")) merged.suite = flags.suite;
  o.cfg = merged;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"spinfold: folding checks for open spin chains"};
  app.require_subcommand(1);
  Options o;
  auto* verify = app.add_subcommand("verify", "run a check suite");
  add_common(verify, o);
  verify->add_option("--suite", o.cfg.suite, "check id prefix, or all");
  auto* foldc = app.add_subcommand("fold", "fold an operator onto the half chain");
  add_common(foldc, o);
  foldc->add_option("operator", o.op_tokens, "operator id")->required();
  foldc->add_option("--preset", o.preset, "xxx-magnetic, all-ones, ino-magnetic+ or ino-magnetic-");
  foldc->add_option("--table", o.table, "JSON folding-constant table");
  foldc->add_option("--kpm", o.k_pm, "k^{+-} for the xxx-magnetic preset");
  foldc->add_option("--diff", o.diff, "compare against [coef*]id");
  foldc->add_flag("--allow-constant", o.allow_constant, "accept a multiple of the identity");
  auto* rel = app.add_subcommand("relations", "check algebra relations");
  add_common(rel, o);
  rel->add_option("algebra", o.op_tokens, "yangian, twisted-plus, twisted-minus or diagonal")->required();
  rel->add_option("--form", o.form, "twisted-plus quartic: signed or printed");
  auto* print = app.add_subcommand("print", "print an operator");
  add_common(print, o);
  print->add_option("operator", o.op_tokens, "operator id")->required();
  auto* kern = app.add_subcommand("kernels", "dump the long-range kernels as CSV");
  kern->add_option("--kappa", o.cfg.kappa, "long-range decay")->required();
  kern->add_option("--zmax", o.zmax, "largest |z|");

  std::vector<const char*> argv{"spinfold"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_config_file(o, sub);
    if (sub == verify) return cmd_verify(o.cfg, out);
    if (sub == foldc) return cmd_fold(o, out);
    if (sub == rel) return cmd_relations(o, out);
    if (sub == print) return cmd_print(o, out);
    return cmd_kernels(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace spinfold::cli
