#pragma once

#include <stdexcept>

#include "spinfold/model_inozemtsev.hpp"
#include "spinfold/model_xxx.hpp"

namespace spinfold {

enum class Kind { Xxx, Ino };

enum class AB { A, B };

// Couplings for either kind; kappa is ignored for XXX.
template <class S>
struct RowParams {
  Kind kind = Kind::Xxx;
  S lambda = from_ratio<S>(1);
  double kappa = 1.0;

  InoParams ino() const { return {to_complex(lambda).real(), kappa, 0.0}; }
};

namespace detail {
template <class S>
void require_two_rows(const ChainSpec& c) {
  if (c.rows != 2) throw std::invalid_argument("double-row builder needs a two-row chain");
}
template <class S>
void require_float(Kind k) {
  if constexpr (is_exact_v<S>)
    if (k == Kind::Ino) throw std::invalid_argument("Inozemtsev operators need the float field");
}
}  // namespace detail

template <class S>
OperatorSum<S> build_h_double(ChainSpec c, const RowParams<S>& p) {
  detail::require_two_rows<S>(c);
  detail::require_float<S>(p.kind);
  OperatorSum<S> r(c);
  for (int row = 0; row < 2; ++row) {
    if constexpr (is_exact_v<S>) {
      r += build_h_xxx(c, p.lambda, row);
    } else {
      r += p.kind == Kind::Xxx ? build_h_xxx(c, p.lambda, row) : build_h_kappa(c, p.ino(), row);
    }
  }
  return r;
}

template <class S>
OperatorSum<S> build_row_e(ChainSpec c, const RowParams<S>& p, Gen a, int n, int row) {
  if (n == 0) return build_e0<S>(c, a, row);
  if constexpr (is_exact_v<S>) {
    detail::require_float<S>(p.kind);
    return build_e1(c, p.lambda, a, Variant::Full, row);
  } else {
    return p.kind == Kind::Xxx ? build_e1(c, p.lambda, a, Variant::Full, row)
                               : build_e1_kappa(c, p.ino(), a, Variant::Full, row);
  }
}

template <class S>
OperatorSum<S> build_ab(ChainSpec c, const RowParams<S>& p, Gen a, int n, AB which) {
  detail::require_two_rows<S>(c);
  if (n != 0 && n != 1) throw std::invalid_argument("level must be 0 or 1");
  auto o = build_row_e(c, p, a, n, 0), b = build_row_e(c, p, a, n, 1);
  return which == AB::A ? o + b : o - b;
}

template <class S>
void add_cross_hop(OperatorSum<S>& r, int i, int j, const S& k) {
  add_hop(r, i, 0, j, 1, k);
  add_hop(r, i, 1, j, 0, k);
}

inline FOp build_d_kappa(ChainSpec c, const InoParams& p) {
  detail::require_two_rows<Complex>(c);
  if (c.geometry != Geometry::HalfLine) throw std::invalid_argument("D_k lives on the half line");
  KernelSet K(p.kappa);
  FOp r(c);
  for (int i = c.min_site(); i <= 0; ++i)
    for (int j = c.min_site(); j <= 0; ++j) add_hop(r, i, 0, j, 1, cx(-p.lambda * K.p(i + j - 1)));
  return r;
}

template <class S>
OperatorSum<S> build_h_delta(ChainSpec c, const RowParams<S>& p) {
  detail::require_two_rows<S>(c);
  if (c.geometry != Geometry::HalfLine) throw std::invalid_argument("H^Delta lives on the half line");
  auto r = build_h_double(c, p);
  if (p.kind == Kind::Xxx) {
    add_hop(r, 0, 0, 0, 1, S(-p.lambda));
  } else {
    if constexpr (!is_exact_v<S>) r += build_d_kappa(c, p.ino());
  }
  return r;
}

template <class S>
OperatorSum<S> build_y(ChainSpec c, const RowParams<S>& p, Gen a) {
  detail::require_two_rows<S>(c);
  if (c.geometry != Geometry::HalfLine) throw std::invalid_argument("Y lives on the half line");
  auto r = build_ab(c, p, a, 1, AB::B);
  const S& l = p.lambda;
  if (p.kind == Kind::Xxx) {
    auto A = [&](Gen b) { return build_ab(c, p, b, 0, AB::A); };
    auto B = [&](Gen b) { return build_ab(c, p, b, 0, AB::B); };
    if (a == Gen::Z)
      r -= (l * from_ratio<S>(1, 2)) * (B(Gen::P) * A(Gen::M) - A(Gen::P) * B(Gen::M));
    else
      r += (l * from_ratio<S>(sign_of(a), 4)) * (B(a) * A(Gen::Z) - A(a) * B(Gen::Z));
    return r;
  }
  if constexpr (!is_exact_v<S>) {
    KernelSet K(p.kappa);
    double lam = p.lambda.real();
    for (int i = c.min_site(); i <= 0; ++i) {
      for (int j = c.min_site(); j <= 0; ++j) {
        double w = K.w(i + j - 1);
        if (a == Gen::Z) {
          r.add_term({{Gen::P, i, 0}, {Gen::M, j, 1}}, cx(-lam * w));
          r.add_term({{Gen::P, j, 1}, {Gen::M, i, 0}}, cx(lam * w));
        } else {
          double k = sign_of(a) * lam / 2 * w;
          r.add_term({{a, i, 0}, {Gen::Z, j, 1}}, cx(k));
          r.add_term({{a, j, 1}, {Gen::Z, i, 0}}, cx(-k));
        }
      }
    }
  }
  return r;
}

template <class S>
OperatorSum<S> swap_rows(const OperatorSum<S>& a) {
  const ChainSpec& c = a.chain();
  detail::require_two_rows<S>(c);
  OperatorSum<S> r(c);
  for (const auto& [s, v] : a.terms()) {
    PauliString t;
    for (int p = 0; p < c.positions(); ++p) t.set(p ^ 1, s.at(p));
    r.add(t, v);
  }
  return r;
}

}  // namespace spinfold
