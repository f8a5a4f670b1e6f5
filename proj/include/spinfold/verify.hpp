#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinfold/folding.hpp"
#include "spinfold/model_inozemtsev.hpp"
#include "spinfold/model_xxx.hpp"

namespace spinfold {

enum class Status { ExactZero, ConstantOnly, EdgeLocalized, Fail };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::ExactZero: return "ExactZero";
    case Status::ConstantOnly: return "ConstantOnly";
    case Status::EdgeLocalized: return "EdgeLocalized";
    default: return "Fail";
  }
}

struct ResidualReport {
  Status status = Status::ExactZero;
  double max_interior = 0.0;
  std::optional<Complex> constant;
  std::optional<std::string> witness;
  int edge_window = 0;
  double tolerance = 0.0;
  bool exact = true;

  bool ok() const { return status != Status::Fail; }
};

// Exact inputs ignore tol; float inputs treat |c| <= tol as zero.
template <class S>
ResidualReport classify(const OperatorSum<S>& r, int edge_window, double tol, bool allow_constant) {
  ResidualReport rep;
  rep.edge_window = edge_window;
  rep.exact = is_exact_v<S>;
  rep.tolerance = rep.exact ? 0.0 : tol;
  auto small = [&](double v) { return rep.exact ? v == 0.0 : v <= tol; };
  auto is_small = [&](const S& c) {
    if constexpr (is_exact_v<S>)
      return is_zero(c);
    else
      return std::abs(c) <= tol;
  };

  S c0 = r.constant();
  double all_max = 0.0;
  for (const auto& [s, c] : r.terms())
    if (!s.is_identity()) all_max = std::max(all_max, abs_value(c));
  bool const_zero = is_small(c0);
  if (!const_zero) rep.constant = to_complex(c0);

  auto [edge, interior] = edge_partition(r, edge_window);
  const std::pair<PauliString, S>* worst = nullptr;
  auto sorted = interior.sorted();
  double imax = 0.0;
  for (const auto& t : sorted) {
    if (t.first.is_identity()) continue;
    double v = abs_value(t.second);
    if (v > imax) {
      imax = v;
      worst = &t;
    }
  }
  rep.max_interior = imax;

  if (small(all_max) && const_zero) {
    rep.status = Status::ExactZero;
  } else if (small(all_max)) {
    rep.status = allow_constant ? Status::ConstantOnly : Status::Fail;
    if (!allow_constant) rep.witness = render_term(PauliString{}, c0, r.chain());
  } else if (small(imax) && (const_zero || allow_constant)) {
    rep.status = Status::EdgeLocalized;
  } else {
    rep.status = Status::Fail;
    if (worst && !small(imax))
      rep.witness = render_term(worst->first, worst->second, r.chain());
    else
      rep.witness = render_term(PauliString{}, c0, r.chain());
  }
  return rep;
}

template <class S>
ResidualReport check_fold_identity(const OperatorSum<S>& lhs, const OperatorSum<S>& rhs, bool allow_constant,
                                   double tol = 1e-10) {
  return classify(lhs - rhs, 0, tol, allow_constant);
}

template <class S>
ResidualReport check_symmetry(const OperatorSum<S>& H, const OperatorSum<S>& Q, int edge_window, double tol = 1e-5) {
  return classify(commutator(H, Q), edge_window, tol, true);
}

struct RelationReport {
  std::string id;
  std::vector<std::pair<std::string, ResidualReport>> relations;
  bool exact = true;

  bool pass() const {
    return std::all_of(relations.begin(), relations.end(), [](const auto& r) { return r.second.ok(); });
  }
  Status worst() const {
    Status s = Status::ExactZero;
    for (const auto& r : relations) s = std::max(s, r.second.status);
    return s;
  }
  double max_interior() const {
    double m = 0.0;
    for (const auto& r : relations) m = std::max(m, r.second.max_interior);
    return m;
  }
  std::optional<std::string> witness() const {
    for (const auto& [name, r] : relations)
      if (!r.ok()) return name + ": " + r.witness.value_or("");
    return std::nullopt;
  }
};

template <class S>
struct Triple {
  OperatorSum<S> plus, minus, z;
  const OperatorSum<S>& operator[](Gen a) const { return a == Gen::P ? plus : (a == Gen::M ? minus : z); }
};

struct RelationOptions {
  int edge_window = 0;
  double tol = 1e-9;
};

namespace detail {

template <class S>
struct RelationSink {
  RelationReport& rep;
  RelationOptions opt;
  void operator()(const std::string& name, const OperatorSum<S>& residual) {
    rep.relations.emplace_back(name, classify(residual, opt.edge_window, opt.tol, false));
  }
};

template <class S>
void sl2_relations(RelationSink<S>& add, const Triple<S>& x) {
  add("[h,x+]=2x+", commutator(x.z, x.plus) - from_ratio<S>(2) * x.plus);
  add("[h,x-]=-2x-", commutator(x.z, x.minus) + from_ratio<S>(2) * x.minus);
  add("[x+,x-]=h", commutator(x.plus, x.minus) - x.z);
}

// [J(h),x+-] = [h,J(x+-)] = +-2 J(x+-), [J(x+-),x-+] = +-J(h).
template <class S>
void level1_relations(RelationSink<S>& add, const Triple<S>& x, const Triple<S>& J, const std::string& n) {
  S two = from_ratio<S>(2);
  add("[" + n + "(h),x+]=2" + n + "(x+)", commutator(J.z, x.plus) - two * J.plus);
  add("[" + n + "(h),x-]=-2" + n + "(x-)", commutator(J.z, x.minus) + two * J.minus);
  add("[h," + n + "(x+)]=2" + n + "(x+)", commutator(x.z, J.plus) - two * J.plus);
  add("[h," + n + "(x-)]=-2" + n + "(x-)", commutator(x.z, J.minus) + two * J.minus);
  add("[" + n + "(x+),x-]=" + n + "(h)", commutator(J.plus, x.minus) - J.z);
  add("[" + n + "(x-),x+]=-" + n + "(h)", commutator(J.minus, x.plus) + J.z);
}

template <class S>
OperatorSum<S> symmetrize3(const OperatorSum<S>& a, const OperatorSum<S>& b, const OperatorSum<S>& c) {
  const std::array<const OperatorSum<S>*, 3> v{&a, &b, &c};
  std::array<int, 3> idx{0, 1, 2};
  OperatorSum<S> r(a.chain());
  do {
    r += (*v[idx[0]]) * (*v[idx[1]]) * (*v[idx[2]]);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return from_ratio<S>(1, 6) * r;
}

}  // namespace detail

template <class S>
RelationReport check_yangian(const Triple<S>& x, const Triple<S>& J, const S& lambda, RelationOptions opt = {}) {
  RelationReport rep{"yangian", {}, is_exact_v<S>};
  detail::RelationSink<S> add{rep, opt};
  detail::sl2_relations(add, x);
  detail::level1_relations(add, x, J, "J");
  auto lhs = commutator(J.z, commutator(J.plus, J.minus));
  auto rhs = (lambda * lambda) * ((J.minus * x.plus - x.minus * J.plus) * x.z);
  add("cubic", lhs - rhs);
  return rep;
}

enum class TwistedPlusForm { Signed, Printed };

// Signed form: [B+-,[B+-,[B-+,B+-]]] = +-12 lambda^2 B+-(k+c)B+-.
template <class S>
RelationReport check_twisted_plus(const OperatorSum<S>& k, const OperatorSum<S>& Bp, const OperatorSum<S>& Bm,
                                  const S& lambda, const S& c, TwistedPlusForm form = TwistedPlusForm::Signed,
                                  RelationOptions opt = {}) {
  RelationReport rep{"twisted-plus", {}, is_exact_v<S>};
  detail::RelationSink<S> add{rep, opt};
  S two = from_ratio<S>(2);
  add("[k,B(x+)]=2B(x+)", commutator(k, Bp) - two * Bp);
  add("[k,B(x-)]=-2B(x-)", commutator(k, Bm) + two * Bm);
  auto kc = k + OperatorSum<S>::identity(k.chain(), c);
  S base = from_ratio<S>(12) * lambda * lambda;
  for (int sg : {1, -1}) {
    const auto& B = sg > 0 ? Bp : Bm;
    const auto& Bo = sg > 0 ? Bm : Bp;
    auto lhs = commutator(B, commutator(B, commutator(Bo, B)));
    S f = (form == TwistedPlusForm::Signed && sg < 0) ? S(-base) : base;
    add(sg > 0 ? "quartic+" : "quartic-", lhs - f * (B * kc * B));
  }
  return rep;
}

template <class S>
RelationReport check_twisted_minus(const Triple<S>& x, const Triple<S>& G, const S& lambda, RelationOptions opt = {}) {
  RelationReport rep{"twisted-minus", {}, is_exact_v<S>};
  detail::RelationSink<S> add{rep, opt};
  detail::sl2_relations(add, x);
  detail::level1_relations(add, x, G, "G");
  auto lhs = commutator(G.z, commutator(G.plus, G.minus));
  auto rhs = (from_ratio<S>(4) * lambda * lambda) *
             (detail::symmetrize3(x.plus, G.minus, G.z) - detail::symmetrize3(x.minus, G.plus, G.z));
  add("cubic", lhs - rhs);
  return rep;
}

template <class S>
RelationReport check_diagonal(const Triple<S>& A0, const Triple<S>& Y, const S& lambda, RelationOptions opt = {}) {
  RelationReport rep{"diagonal", {}, is_exact_v<S>};
  detail::RelationSink<S> add{rep, opt};
  detail::sl2_relations(add, A0);
  detail::level1_relations(add, A0, Y, "D");
  auto lhs = commutator(Y.z, commutator(Y.plus, Y.minus));
  auto rhs = (lambda * lambda) * ((Y.minus * A0.plus - A0.minus * Y.plus) * A0.z);
  add("cubic", lhs - rhs);
  return rep;
}

enum class SearchModel { XxxMagnetic, InoMagnetic };

struct SearchAxis {
  std::string key;
  double lo = 0.0, hi = 0.0, step = 0.1;
};

struct SearchCandidate {
  std::vector<double> values;
  double residual = 0.0;
  FoldingConstants<Complex> constants;
};

struct SearchSetup {
  SearchModel model = SearchModel::XxxMagnetic;
  int L = 4;
  double lambda = 1.0, mu = 1.0, kappa = 1.0;
  int objective_window = 2;
};

// Interior norm of [f(H), f(E_1^a)] summed over a; entries outside `free` follow k1 and k1a,
// and k^{z+-} = k^{+-z} track k2 when only k^{+-}, k^{-+} are free.
inline std::vector<SearchCandidate> search_folding_constants(const SearchSetup& st, const std::vector<SearchAxis>& free) {
  if (free.empty()) throw std::invalid_argument("search_folding_constants needs at least one free entry");
  ChainSpec full = ChainSpec::full(st.L);
  InoParams ip{st.lambda, st.kappa, st.mu};
  FOp H = st.model == SearchModel::XxxMagnetic ? build_h_xxx(full, cx(st.lambda)) : build_h_kappa(full, ip);
  std::array<FOp, 3> E;
  std::array<Gen, 3> gens{Gen::P, Gen::M, Gen::Z};
  for (int k = 0; k < 3; ++k)
    E[k] = st.model == SearchModel::XxxMagnetic ? build_e1(full, cx(st.lambda), gens[k], Variant::Full)
                                                : build_e1_kappa(full, ip, gens[k], Variant::Full);
  bool derive_z = true;
  bool pm_free = false;
  for (const auto& ax : free) {
    if (ax.key.size() != 2) throw std::invalid_argument("bad folding key: " + ax.key);
    if (ax.key.find('z') != std::string::npos && ax.key != "zz") derive_z = false;
    if (ax.key == "+-" || ax.key == "-+") pm_free = true;
    if (!(ax.step > 0) || ax.hi < ax.lo) throw std::invalid_argument("bad grid for " + ax.key);
  }
  derive_z = derive_z && pm_free;
  const auto base = xxx_magnetic(cx(st.lambda), cx(st.mu));

  std::vector<std::vector<double>> grids;
  for (const auto& ax : free) {
    std::vector<double> g;
    long n = std::lround((ax.hi - ax.lo) / ax.step);
    for (long k = 0; k <= n; ++k) g.push_back(ax.lo + ax.step * static_cast<double>(k));
    grids.push_back(std::move(g));
  }

  std::vector<SearchCandidate> out;
  std::vector<std::size_t> idx(free.size(), 0);
  while (true) {
    SearchCandidate cand;
    cand.constants = base;
    for (std::size_t a = 0; a < free.size(); ++a) {
      cand.values.push_back(grids[a][idx[a]]);
      cand.constants.at(free[a].key) = cx(grids[a][idx[a]]);
    }
    auto& K = cand.constants;
    double diff = (K(Gen::P, Gen::M) - K(Gen::M, Gen::P)).real();
    if (derive_z && std::abs(diff) < 1e-12) {
      cand.residual = std::numeric_limits<double>::infinity();
    } else {
      if (derive_z) {
        double t = -4.0 / diff;
        K(Gen::Z, Gen::P) = K(Gen::P, Gen::Z) = cx(t);
        K(Gen::Z, Gen::M) = K(Gen::M, Gen::Z) = cx(-t);
      }
      FOp fH = fold(H, K);
      double sum = 0.0;
      for (const auto& e : E) {
        auto [edge, interior] = edge_partition(commutator(fH, fold(e, K)), st.objective_window);
        for (const auto& [s, c] : interior.terms())
          if (!s.is_identity()) sum += std::norm(c);
      }
      cand.residual = std::sqrt(sum);
    }
    out.push_back(std::move(cand));
    std::size_t a = 0;
    while (a < idx.size() && ++idx[a] == grids[a].size()) idx[a++] = 0;
    if (a == idx.size()) break;
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.residual < y.residual; });
  return out;
}

}  // namespace spinfold
