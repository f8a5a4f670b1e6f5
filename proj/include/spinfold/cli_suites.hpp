#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinfold/cli_ops.hpp"
#include "spinfold/matrix_oracle.hpp"
#include "spinfold/verify.hpp"

namespace spinfold::cli {

struct Check {
  std::string id;
  bool expect_fail = false;
  nlohmann::json params = nlohmann::json::object();
  std::function<ResidualReport()> run;
};

template <class S>
struct SuiteEnv {
  OpContext<S> op;
  int window = 2;
  double tol_identity = 1e-10;
  double tol_edge = 1e-5;
  std::uint64_t seed = 1;
};

inline ResidualReport summarize(const RelationReport& r) {
  ResidualReport out;
  out.status = r.worst();
  out.max_interior = r.max_interior();
  out.witness = r.witness();
  out.exact = r.exact;
  if (!r.relations.empty()) {
    out.edge_window = r.relations.front().second.edge_window;
    out.tolerance = r.relations.front().second.tolerance;
  }
  return out;
}

// Turns a passing report into a failure when the identity coefficient differs from `expected`.
template <class S>
ResidualReport expect_constant(ResidualReport r, const S& expected, double tol) {
  if (!r.ok()) return r;
  Complex got = r.constant.value_or(Complex{});
  Complex want = to_complex(expected);
  bool match = is_exact_v<S> ? got == want : std::abs(got - want) <= tol;
  if (!match) {
    r.status = Status::Fail;
    r.witness = "constant " + to_string(got) + " expected " + to_string(want);
  }
  return r;
}

template <class S>
ResidualReport oracle_report(const ChainSpec& c, std::uint64_t seed, OracleOp op, int pairs) {
  ResidualReport r;
  r.exact = false;
  r.tolerance = 1e-12;
  for (int k = 0; k < pairs; ++k) {
    auto a = random_operator<S>(c, seed + 2 * k, 4, 3);
    auto b = random_operator<S>(c, seed + 2 * k + 1, 4, 3);
    r.max_interior = std::max(r.max_interior, oracle_equiv(a, b, op));
  }
  if (r.max_interior > 1e-12) {
    r.status = Status::Fail;
    r.witness = "dense mismatch";
  }
  return r;
}

template <class S>
class SuiteBuilder {
 public:
  SuiteBuilder(const SuiteEnv<S>& env, nlohmann::json base) : env_(env), base_(std::move(base)) {}

  void add(const std::string& id, std::function<ResidualReport()> fn, bool expect_fail = false,
           nlohmann::json extra = nlohmann::json::object()) {
    Check c{id, expect_fail, base_, std::move(fn)};
    for (auto& [k, v] : extra.items()) c.params[k] = v;
    c.params["expect"] = expect_fail ? "fail" : "pass";
    checks_.push_back(std::move(c));
  }

  void identity(const std::string& id, std::function<OperatorSum<S>()> lhs, std::function<OperatorSum<S>()> rhs,
                bool expect_fail = false) {
    double tol = env_.tol_identity;
    add(id, [=] { return check_fold_identity(lhs(), rhs(), false, tol); }, expect_fail);
  }

  void symmetry(const std::string& id, std::function<OperatorSum<S>()> H, std::function<OperatorSum<S>()> Q, int w,
                bool expect_fail = false) {
    double tol = env_.tol_edge;
    add(id, [=] { return check_symmetry(H(), Q(), w, tol); }, expect_fail, {{"edge_window", w}});
  }

  // Dense products cost 8^positions, so the oracle runs on a shortened copy of the chain.
  void oracle(ChainSpec c) {
    while (c.positions() > 8 && c.L > 1) --c.L;
    std::uint64_t seed = env_.seed;
    add("oracle.commutator", [=] { return oracle_report<S>(c, seed, OracleOp::Commutator, 20); });
    add("oracle.product", [=] { return oracle_report<S>(c, seed, OracleOp::Product, 20); });
  }

  std::vector<Check> take() { return std::move(checks_); }

 private:
  const SuiteEnv<S>& env_;
  nlohmann::json base_;
  std::vector<Check> checks_;
};

template <class S>
Triple<S> e0_triple(const ChainSpec& c) {
  return {build_e0<S>(c, Gen::P), build_e0<S>(c, Gen::M), build_e0<S>(c, Gen::Z)};
}

template <class S, class F>
Triple<S> triple_of(F&& f) {
  return {f(Gen::P), f(Gen::M), f(Gen::Z)};
}

inline const char* gname(Gen a) { return a == Gen::P ? "+" : (a == Gen::M ? "-" : "z"); }

inline const char* primes(Variant v) { return v == Variant::Full ? "" : (v == Variant::Prime ? "'" : "''"); }

template <class S>
std::vector<Check> xxx_suite(const SuiteEnv<S>& env, const std::string& boundary, nlohmann::json base) {
  SuiteBuilder<S> b(env, std::move(base));
  const auto& c = env.op;
  const int L = c.L, w = env.window;
  const S l = c.lambda, mu = c.mu;
  const ChainSpec full = ChainSpec::full(L), half = ChainSpec::half(L);
  const S two = from_ratio<S>(2);
  const XxxParams<S> xp{l, mu};
  const double tol = env.tol_identity;
  const Gen gens[] = {Gen::P, Gen::M, Gen::Z};
  const Variant vars[] = {Variant::Full, Variant::Prime, Variant::DoublePrime};

  if (boundary == "magnetic") {
    const auto K = xxx_magnetic(l, mu);
    S want = S(-l) * from_ratio<S>(1, 2) * (from_ratio<S>(1) + K(Gen::P, Gen::M) + K(Gen::M, Gen::P));
    b.add("fold.Hxxx", [=] {
      auto r = check_fold_identity(fold(build_h_xxx(full, l), K), two * build_h_magnetic(half, xp), true, tol);
      return expect_constant(r, want, tol);
    });
    for (Gen a : gens)
      b.identity(std::string("fold.E0") + gname(a), [=] { return fold(build_e0<S>(full, a), K); },
                 [=] { return a == Gen::Z ? two * build_e0<S>(half, a) : OperatorSum<S>(half); });
    for (Gen a : {Gen::P, Gen::M})
      for (Variant v : vars)
        b.identity(std::string("fold.E1") + gname(a) + primes(v), [=] { return fold(build_e1(full, l, a, v), K); },
                   [=] { return two * build_x(half, xp, a, v); });
    b.identity("fold.E1z", [=] { return fold(build_e1(full, l, Gen::Z, Variant::Full), K); },
               [=] {
                 S h = l * from_ratio<S>(1, 2);
                 auto r = OperatorSum<S>::identity(half, h * from_ratio<S>(L) * (K(Gen::M, Gen::P) - K(Gen::P, Gen::M)));
                 r -= (h * (K(Gen::P, Gen::M) + K(Gen::M, Gen::P))) * build_e0<S>(half, Gen::Z);
                 return r;
               });
    auto Hm = [=] { return build_h_magnetic(half, xp); };
    b.symmetry("sym.E0z", Hm, [=] { return build_e0<S>(half, Gen::Z); }, 0);
    for (Gen a : {Gen::P, Gen::M})
      for (Variant v : vars)
        b.symmetry(std::string("sym.X") + primes(v) + gname(a), Hm, [=] { return build_x(half, xp, a, v); }, w);
    RelationOptions ro{0, env.tol_identity};
    auto plus = [=](TwistedPlusForm form, S cshift) {
      auto k = build_e0<S>(half, Gen::Z);
      return summarize(check_twisted_plus(k, build_x(half, xp, Gen::P, Variant::Full),
                                          build_x(half, xp, Gen::M, Variant::Full), l, cshift, form, ro));
    };
    b.add("rel.twisted-plus", [=] { return plus(TwistedPlusForm::Signed, S(-l / (two * mu))); });
    b.add("neg.rel.twisted-plus.printed", [=] { return plus(TwistedPlusForm::Printed, S(-l / mu)); }, true);
    b.symmetry("neg.sym.E1+.restricted", Hm, [=] { return build_e1(half, l, Gen::P, Variant::Full); }, w, true);
    b.oracle(half);
  } else if (boundary == "bulk") {
    auto H = [=] { return build_h_xxx(full, l); };
    for (Gen a : gens) b.symmetry(std::string("sym.E0") + gname(a), H, [=] { return build_e0<S>(full, a); }, 0);
    for (Gen a : gens)
      for (Variant v : vars)
        b.symmetry(std::string("sym.E1") + gname(a) + primes(v), H, [=] { return build_e1(full, l, a, v); }, w);
    RelationOptions ro{0, env.tol_identity};
    auto yang = [=](bool literal) {
      auto x = e0_triple<S>(full);
      auto J = triple_of<S>([&](Gen a) { return build_e1(full, l, a, Variant::Full); });
      if (literal) J.z = x.z;
      return summarize(check_yangian(x, J, l, ro));
    };
    b.add("rel.yangian", [=] { return yang(false); });
    b.add("neg.rel.yangian.J(h)=E0z", [=] { return yang(true); }, true);
    b.oracle(full);
  } else if (boundary == "open") {
    const auto K = all_ones<S>();
    S want = from_ratio<S>(-3, 2) * l;
    b.add("fold.Hxxx", [=] {
      auto r = check_fold_identity(fold(build_h_xxx(full, l), K), two * build_h_xxx(half, l), true, tol);
      return expect_constant(r, want, tol);
    });
    for (Gen a : gens)
      b.identity(std::string("fold.E1") + gname(a), [=] { return fold(build_e1(full, l, a, Variant::Full), K); },
                 [=] { return S(-l) * build_e0<S>(half, a); });
    for (Gen a : gens)
      b.identity(std::string("fold.E2t") + gname(a), [=] { return fold(build_e2(full, l, a, true), K); },
                 [=] { return from_ratio<S>(8, 3) * build_g(half, l, a); });
    auto H0 = [=] { return build_h_xxx(half, l); };
    for (Gen a : gens) b.symmetry(std::string("sym.G") + gname(a), H0, [=] { return build_g(half, l, a); }, w);
    RelationOptions ro{0, env.tol_identity};
    b.add("rel.twisted-minus", [=] {
      auto G = triple_of<S>([&](Gen a) { return build_g(half, l, a); });
      return summarize(check_twisted_minus(e0_triple<S>(half), G, l, ro));
    });
    b.add(
        "neg.rel.twisted-minus.untilded",
        [=] {
          auto G = triple_of<S>([&](Gen a) { return from_ratio<S>(3, 8) * fold(build_e2(full, l, a, false), K); });
          return summarize(check_twisted_minus(e0_triple<S>(half), G, l, ro));
        },
        true);
    b.oracle(half);
  }
  return b.take();
}

inline std::vector<Check> ino_suite(const SuiteEnv<Complex>& env, const std::string& boundary, nlohmann::json base) {
  SuiteBuilder<Complex> b(env, std::move(base));
  const auto& c = env.op;
  const int L = c.L, w = env.window;
  const InoParams p = c.ino();
  const ChainSpec full = ChainSpec::full(L), half = ChainSpec::half(L);
  const Complex two = cx(2), l = cx(p.lambda);
  const double tol = env.tol_identity;
  const Gen gens[] = {Gen::P, Gen::M, Gen::Z};
  const KernelSet ks(p.kappa);

  if (boundary == "magnetic") {
    const auto K = xxx_magnetic(cx(p.lambda), cx(p.mu));
    b.add("fold.Hk", [=] {
      return check_fold_identity(fold(build_h_kappa(full, p), K), two * build_h_mu_kappa(half, p), true, tol);
    });
    for (Gen a : {Gen::P, Gen::M})
      b.identity(std::string("fold.Ek1") + gname(a), [=] { return fold(build_e1_kappa(full, p, a, Variant::Full), K); },
                 [=] { return two * build_x_kappa_candidate(half, p, a); });
    b.identity("fold.Ek1z", [=] { return fold(build_e1_kappa(full, p, Gen::Z, Variant::Full), K); },
               [=] {
                 double kpm = K(Gen::P, Gen::M).real(), kmp = K(Gen::M, Gen::P).real();
                 FOp r(half);
                 double cst = 0;
                 for (int i = half.min_site(); i <= 0; ++i) {
                   r.add_term({{Gen::Z, i, 0}}, cx(-p.lambda / 2 * (kpm + kmp) * ks.w(2 * i - 1)));
                   cst += p.lambda / 2 * (kmp - kpm) * ks.w(2 * i - 1);
                 }
                 r.add(PauliString{}, cx(cst));
                 return r;
               });
    auto Hm = [=] { return build_h_mu_kappa(half, p); };
    bool balanced = std::abs(std::abs(p.mu) - std::abs(p.lambda)) <= 1e-12 * std::max(1.0, std::abs(p.lambda));
    for (Gen a : {Gen::P, Gen::M}) {
      auto X = [=] { return build_x_kappa_candidate(half, p, a); };
      if (balanced) {
        b.symmetry(std::string("sym.Xk") + gname(a), Hm, X, w);
        InoParams q = p;
        q.mu = 0.6 * p.lambda;
        b.add(std::string("neg.sym.Xk") + gname(a) + ".mu=0.6lambda",
              [=, tol = env.tol_edge] {
                return check_symmetry(build_h_mu_kappa(half, q), build_x_kappa_candidate(half, q, a), w, tol);
              },
              true, {{"edge_window", w}, {"mu", "0.6*lambda"}});
      } else {
        b.symmetry(std::string("neg.sym.Xk") + gname(a), Hm, X, w, true);
      }
    }
    if (balanced) {
      RelationOptions ro{w, env.tol_edge};
      b.add("rel.twisted-plus", [=] {
        auto k = build_e0<Complex>(half, Gen::Z);
        return summarize(check_twisted_plus(k, build_x_kappa(half, p, Gen::P), build_x_kappa(half, p, Gen::M), l,
                                            cx(-p.lambda / (2 * p.mu)), TwistedPlusForm::Signed, ro));
      });
      int sign = p.mu * p.lambda > 0 ? -1 : 1;
      b.identity("neg.fold.Ek1+.table-k1b",
                 [=] { return fold(build_e1_kappa(full, p, Gen::P, Variant::Full), ino_magnetic<Complex>(sign)); },
                 [=] { return two * build_x_kappa(half, p, Gen::P); }, true);
    }
    b.oracle(half);
  } else if (boundary == "bulk") {
    auto H = [=] { return build_h_kappa(full, p); };
    for (Gen a : gens)
      b.symmetry(std::string("sym.Ek1") + gname(a), H, [=] { return build_e1_kappa(full, p, a, Variant::Full); }, w);
    RelationOptions ro{0, env.tol_identity};
    b.add("rel.yangian", [=] {
      auto J = triple_of<Complex>([&](Gen a) { return build_e1_kappa(full, p, a, Variant::Full); });
      return summarize(check_yangian(e0_triple<Complex>(full), J, l, ro));
    });
    b.oracle(full);
  } else if (boundary == "open") {
    const auto K = all_ones<Complex>();
    double want = 0;
    for (int i = half.min_site(); i <= 0; ++i) want -= 1.5 * p.lambda * ks.p(2 * i - 1);
    b.add("fold.Hk", [=] {
      auto r = check_fold_identity(fold(build_h_kappa(full, p), K), two * build_h0_kappa(half, p), true, tol);
      return expect_constant(r, cx(want), tol);
    });
    for (Gen a : gens)
      b.identity(std::string("fold.Gk") + gname(a), [=] { return build_g_kappa_fold(L, p, a); },
                 [=] { return build_g_kappa(half, p, a); });
    auto H0 = [=] { return build_h0_kappa(half, p); };
    for (Gen a : gens) b.symmetry(std::string("sym.Gk") + gname(a), H0, [=] { return build_g_kappa(half, p, a); }, w);
    b.oracle(half);
  }
  return b.take();
}

template <class S>
std::vector<Check> double_suite(const SuiteEnv<S>& env, const std::string& boundary, nlohmann::json base) {
  SuiteBuilder<S> b(env, std::move(base));
  const auto& c = env.op;
  const int L = c.L, w = env.window;
  const RowParams<S> rp = c.rows();
  const ChainSpec full = ChainSpec::full(L, 2), half = ChainSpec::half(L, 2);
  const S two = from_ratio<S>(2);
  const Gen gens[] = {Gen::P, Gen::M, Gen::Z};

  if (boundary == "diagonal") {
    const auto K = all_ones<S>();
    b.identity("fold.Hoo", [=] { return fold_double(build_h_double(full, rp), K); },
               [=] { return two * build_h_delta(half, rp); });
    for (Gen a : gens) {
      std::string g = gname(a);
      b.identity("fold.A0" + g, [=] { return fold_double(build_ab(full, rp, a, 0, AB::A), K); },
                 [=] { return two * build_ab(half, rp, a, 0, AB::A); });
      b.identity("fold.B0" + g, [=] { return fold_double(build_ab(full, rp, a, 0, AB::B), K); },
                 [=] { return OperatorSum<S>(half); });
      b.identity("fold.A1" + g, [=] { return fold_double(build_ab(full, rp, a, 1, AB::A), K); },
                 [=] { return OperatorSum<S>(half); });
      b.identity("fold.B1" + g, [=] { return fold_double(build_ab(full, rp, a, 1, AB::B), K); },
                 [=] { return two * build_y(half, rp, a); });
    }
    auto Hd = [=] { return build_h_delta(half, rp); };
    for (Gen a : gens) b.symmetry(std::string("sym.Y") + gname(a), Hd, [=] { return build_y(half, rp, a); }, w);
    RelationOptions ro = rp.kind == Kind::Xxx ? RelationOptions{0, env.tol_identity} : RelationOptions{w, env.tol_edge};
    b.add("rel.diagonal", [=] {
      auto A = triple_of<S>([&](Gen a) { return build_ab(half, rp, a, 0, AB::A); });
      auto Y = triple_of<S>([&](Gen a) { return build_y(half, rp, a); });
      return summarize(check_diagonal(A, Y, rp.lambda, ro));
    });
    b.add(
        "neg.rel.diagonal.uncorrected",
        [=] {
          auto A = triple_of<S>([&](Gen a) { return build_ab(half, rp, a, 0, AB::A); });
          auto Y = triple_of<S>([&](Gen a) { return build_ab(half, rp, a, 1, AB::B); });
          return summarize(check_diagonal(A, Y, rp.lambda, ro));
        },
        true);
    b.oracle(half);
  } else if (boundary == "bulk") {
    auto H = [=] { return build_h_double(full, rp); };
    for (Gen a : gens) {
      std::string g = gname(a);
      b.symmetry("sym.A1" + g, H, [=] { return build_ab(full, rp, a, 1, AB::A); }, w);
      b.symmetry("sym.B1" + g, H, [=] { return build_ab(full, rp, a, 1, AB::B); }, w);
    }
    b.oracle(full);
  }
  return b.take();
}

}  // namespace spinfold::cli
