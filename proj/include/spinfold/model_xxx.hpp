#pragma once

#include <stdexcept>

#include "spinfold/pauli_algebra.hpp"

namespace spinfold {

template <class S>
struct XxxParams {
  S lambda = from_ratio<S>(1);
  S mu = from_ratio<S>(0);
};

enum class Variant { Full, Prime, DoublePrime };

inline int sign_of(Gen a) { return a == Gen::P ? 1 : -1; }

inline Gen flip(Gen a) { return a == Gen::P ? Gen::M : (a == Gen::M ? Gen::P : a); }

template <class S>
OperatorSum<S> build_e0(ChainSpec c, Gen a, int row = 0) {
  OperatorSum<S> r(c);
  for (int i = c.min_site(); i <= c.max_site(); ++i) r.add_term({{a, i, row}}, from_ratio<S>(1));
  return r;
}

// s+_i s-_j + s-_i s+_j + 1/2 sz_i sz_j with weight k.
template <class S>
void add_hop(OperatorSum<S>& r, int i, int ri, int j, int rj, const S& k) {
  r.add_term({{Gen::P, i, ri}, {Gen::M, j, rj}}, k);
  r.add_term({{Gen::M, i, ri}, {Gen::P, j, rj}}, k);
  r.add_term({{Gen::Z, i, ri}, {Gen::Z, j, rj}}, k * from_ratio<S>(1, 2));
}

template <class S>
OperatorSum<S> build_h_xxx(ChainSpec c, const S& lambda, int row = 0) {
  if (c.sites_per_row() < 2) throw std::invalid_argument("XXX Hamiltonian needs at least two sites");
  OperatorSum<S> r(c);
  for (int i = c.min_site(); i < c.max_site(); ++i) add_hop(r, i, row, i + 1, row, S(-lambda));
  return r;
}

template <class S>
OperatorSum<S> build_e1(ChainSpec c, const S& lambda, Gen a, Variant v, int row = 0) {
  OperatorSum<S> r(c);
  bool prime = v != Variant::DoublePrime, dprime = v != Variant::Prime;
  S half = lambda * from_ratio<S>(1, 2);
  for (int i = c.min_site(); i <= c.max_site(); ++i) {
    for (int j = i + 1; j <= c.max_site(); ++j) {
      if (a == Gen::Z) {
        if (prime) r.add_term({{Gen::M, i, row}, {Gen::P, j, row}}, lambda);
        if (dprime) r.add_term({{Gen::P, i, row}, {Gen::M, j, row}}, S(-lambda));
      } else {
        S k = sign_of(a) > 0 ? half : S(-half);
        if (prime) r.add_term({{a, i, row}, {Gen::Z, j, row}}, k);
        if (dprime) r.add_term({{Gen::Z, i, row}, {a, j, row}}, S(-k));
      }
    }
  }
  return r;
}

template <class S>
OperatorSum<S> build_h_magnetic(ChainSpec c, const XxxParams<S>& p) {
  if (c.geometry != Geometry::HalfLine) throw std::invalid_argument("H^mu lives on the half line");
  auto r = build_h_xxx(c, p.lambda);
  r.add_term({{Gen::Z, 0, 0}}, p.mu);
  return r;
}

template <class S>
OperatorSum<S> build_x(ChainSpec c, const XxxParams<S>& p, Gen a, Variant v) {
  if (c.geometry != Geometry::HalfLine) throw std::invalid_argument("X lives on the half line");
  if (is_zero(p.mu)) throw std::invalid_argument("X needs mu != 0");
  if (a == Gen::Z) throw std::invalid_argument("X is defined for + and - only");
  const S& l = p.lambda;
  S sg = from_ratio<S>(sign_of(a));
  S half = from_ratio<S>(1, 2);
  auto e0a = build_e0<S>(c, a);
  auto e0z = build_e0<S>(c, Gen::Z);
  auto r = build_e1(c, l, a, v);
  if (v == Variant::Prime) {
    r -= (sg * l * l / (from_ratio<S>(4) * p.mu)) * e0a;
    return r;
  }
  r += (sg * l * half) * (e0a * e0z);
  S shift = v == Variant::Full ? sg * l / p.mu : sg * l / (from_ratio<S>(2) * p.mu);
  r += (l * half * (from_ratio<S>(1) - shift)) * e0a;
  return r;
}

// Level-2 operators from any level-1 family e1(a, variant); tilde adds the open-boundary corrections.
template <class S, class E1>
OperatorSum<S> level2(ChainSpec c, const S& lambda, Gen a, bool tilde, E1&& e1) {
  const Variant F = Variant::Full, P = Variant::Prime, PP = Variant::DoublePrime;
  OperatorSum<S> r(c);
  if (a == Gen::Z)
    r = commutator(e1(Gen::P, F), e1(Gen::M, F));
  else
    r = from_ratio<S>(sign_of(a), 2) * commutator(e1(Gen::Z, F), e1(a, F));
  if (!tilde) return r;
  S l2 = lambda * lambda;
  if (a == Gen::Z) {
    auto z = build_e0<S>(c, Gen::Z);
    r += from_ratio<S>(2, 3) * (commutator(e1(Gen::P, P), e1(Gen::M, P)) + commutator(e1(Gen::P, PP), e1(Gen::M, PP)));
    r += (l2 * from_ratio<S>(1, 6)) * (z * z * z - from_ratio<S>(7, 2) * z);
    return r;
  }
  auto ea = build_e0<S>(c, a), eb = build_e0<S>(c, flip(a));
  if (a == Gen::P)
    r += from_ratio<S>(1, 3) * (commutator(e1(Gen::Z, P), e1(a, PP)) + commutator(e1(Gen::Z, PP), e1(a, P)));
  else
    r -= from_ratio<S>(1, 3) * (commutator(e1(Gen::Z, P), e1(a, P)) + commutator(e1(Gen::Z, PP), e1(a, PP)));
  r += (l2 * from_ratio<S>(1, 3)) * (ea * eb * ea - from_ratio<S>(9, 4) * ea);
  return r;
}

template <class S>
OperatorSum<S> build_e2(ChainSpec c, const S& lambda, Gen a, bool tilde) {
  return level2(c, lambda, a, tilde, [&](Gen b, Variant v) { return build_e1(c, lambda, b, v); });
}

template <class S>
OperatorSum<S> build_g(ChainSpec c, const S& lambda, Gen a) {
  if (c.geometry != Geometry::HalfLine) throw std::invalid_argument("G lives on the half line");
  auto e0 = [&](Gen b) { return build_e0<S>(c, b); };
  auto e1 = [&](Gen b) { return build_e1(c, lambda, b, Variant::Full); };
  S l2q = lambda * lambda * from_ratio<S>(1, 4);
  auto r = build_e2(c, lambda, a, false);
  if (a == Gen::Z) {
    r -= lambda * (e1(Gen::P) * e0(Gen::M) - e0(Gen::P) * e1(Gen::M));
  } else {
    S k = lambda * from_ratio<S>(sign_of(a), 2);
    r -= k * (e1(Gen::Z) * e0(a) - e0(Gen::Z) * e1(a));
  }
  r -= l2q * e0(a);
  return r;
}

}  // namespace spinfold
