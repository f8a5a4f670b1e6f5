#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "spinfold/folding.hpp"
#include "spinfold/model_xxx.hpp"

namespace spinfold {

struct InoParams {
  double lambda = 1.0;
  double kappa = 1.0;
  double mu = 0.0;
};

enum class KernelKind { P, W, WPrime, WDoublePrime };

struct KernelSet {
  double kappa;

  explicit KernelSet(double k) : kappa(k) {
    if (!(k > 0)) throw std::invalid_argument("kappa must be positive");
  }

  // sinh^2(kappa) / sinh^2(kappa z), written to stay finite for large kappa |z|.
  double p(int z) const {
    if (z == 0) throw std::domain_error("p is undefined at z = 0");
    double a = std::abs(static_cast<double>(z));
    double r = std::exp(kappa * (1.0 - a)) * (-std::expm1(-2.0 * kappa)) / (-std::expm1(-2.0 * kappa * a));
    return r * r;
  }
  double w(int z) const { return z == 0 ? 0.0 : -1.0 / std::tanh(kappa * z); }
  double w_prime(int z) const { return z == 0 ? 0.0 : -1.0 / std::expm1(2.0 * kappa * z); }
  double w_dprime(int z) const { return z == 0 ? 0.0 : 1.0 / std::expm1(-2.0 * kappa * z); }

  double eval(KernelKind k, int z) const {
    switch (k) {
      case KernelKind::P: return p(z);
      case KernelKind::W: return w(z);
      case KernelKind::WPrime: return w_prime(z);
      default: return w_dprime(z);
    }
  }
  double w_of(Variant v, int z) const {
    return v == Variant::Full ? w(z) : (v == Variant::Prime ? w_prime(z) : w_dprime(z));
  }
};

inline double kernel_eval(const KernelSet& k, KernelKind which, int z) { return k.eval(which, z); }

inline std::string kernel_csv(const KernelSet& k, int zmax) {
  std::string out = "z,p,w,w_prime,w_dprime\n";
  for (int z = -zmax; z <= zmax; ++z) {
    out += std::to_string(z) + "," + (z == 0 ? std::string("nan") : to_string(k.p(z))) + "," + to_string(k.w(z)) +
           "," + to_string(k.w_prime(z)) + "," + to_string(k.w_dprime(z)) + "\n";
  }
  return out;
}

using FOp = OperatorSum<Complex>;

inline Complex cx(double x) { return {x, 0.0}; }

inline FOp build_h_kappa(ChainSpec c, const InoParams& p, int row = 0) {
  KernelSet K(p.kappa);
  FOp r(c);
  for (int i = c.min_site(); i <= c.max_site(); ++i)
    for (int j = i + 1; j <= c.max_site(); ++j) add_hop(r, i, row, j, row, cx(-p.lambda * K.p(i - j)));
  return r;
}

inline FOp build_e1_kappa(ChainSpec c, const InoParams& p, Gen a, Variant v, int row = 0) {
  KernelSet K(p.kappa);
  FOp r(c);
  for (int i = c.min_site(); i <= c.max_site(); ++i) {
    for (int j = c.min_site(); j <= c.max_site(); ++j) {
      if (i == j) continue;
      double w = K.w_of(v, i - j);
      if (a == Gen::Z)
        r.add_term({{Gen::M, i, row}, {Gen::P, j, row}}, cx(p.lambda * w));
      else
        r.add_term({{a, i, row}, {Gen::Z, j, row}}, cx(sign_of(a) * p.lambda / 2 * w));
    }
  }
  return r;
}

inline FOp build_h_lo(ChainSpec c, const InoParams& p) {
  if (c.geometry != Geometry::HalfLine) throw std::invalid_argument("H^lo lives on the half line");
  KernelSet K(p.kappa);
  FOp r(c);
  for (int i = c.min_site(); i <= 0; ++i)
    for (int j = i + 1; j <= 0; ++j) add_hop(r, i, 0, j, 0, cx(p.lambda * K.p(i + j - 1)));
  return r;
}

inline FOp build_m_mu(ChainSpec c, const InoParams& p) {
  if (c.geometry != Geometry::HalfLine) throw std::invalid_argument("M^mu lives on the half line");
  KernelSet K(p.kappa);
  FOp r(c);
  for (int i = c.min_site(); i <= 0; ++i) {
    for (int j = i + 1; j <= 0; ++j) r.add_term({{Gen::Z, i, 0}, {Gen::Z, j, 0}}, cx(-p.lambda * K.p(i + j - 1)));
    r.add_term({{Gen::Z, i, 0}}, cx(p.mu * K.p(2 * i - 1)));
  }
  return r;
}

// Magnetic-boundary Hamiltonian H_k^- + H^lo + M^mu.
inline FOp build_h_mu_kappa(ChainSpec c, const InoParams& p) {
  return build_h_kappa(c, p) + build_h_lo(c, p) + build_m_mu(c, p);
}

// Open-boundary Hamiltonian; the through-boundary hopping enters with a minus sign under k = 1.
inline FOp build_h0_kappa(ChainSpec c, const InoParams& p) { return build_h_kappa(c, p) - build_h_lo(c, p); }

// No check on mu; used directly for negative controls.
inline FOp build_x_kappa_candidate(ChainSpec c, const InoParams& p, Gen a) {
  if (c.geometry != Geometry::HalfLine) throw std::invalid_argument("X_k lives on the half line");
  if (a == Gen::Z) throw std::invalid_argument("X_k is defined for + and - only");
  if (p.mu == 0.0) throw std::invalid_argument("X_k needs mu != 0");
  KernelSet K(p.kappa);
  double sg = sign_of(a);
  auto r = build_e1_kappa(c, p, a, Variant::Full);
  for (int i = c.min_site(); i <= 0; ++i) {
    for (int j = c.min_site(); j <= 0; ++j)
      if (i != j) r.add_term({{a, i, 0}, {Gen::Z, j, 0}}, cx(sg * p.lambda / 2 * K.w(i + j - 1)));
    r.add_term({{a, i, 0}}, cx(-sg * p.lambda * p.lambda / (2 * p.mu) * K.w(2 * i - 1)));
  }
  return r;
}

inline FOp build_x_kappa(ChainSpec c, const InoParams& p, Gen a) {
  double tol = 1e-12 * std::max(1.0, std::abs(p.lambda));
  if (std::abs(std::abs(p.mu) - std::abs(p.lambda)) > tol || p.lambda == 0.0)
    throw std::invalid_argument("X_k requires mu = +-lambda");
  return build_x_kappa_candidate(c, p, a);
}

inline FOp build_e2_kappa(ChainSpec c, const InoParams& p, Gen a, bool tilde) {
  return level2(c, cx(p.lambda), a, tilde, [&](Gen b, Variant v) { return build_e1_kappa(c, p, b, v); });
}

// (3/8) fold(Etilde_{k,2}) with all folding constants equal to 1.
inline FOp build_g_kappa_fold(int L, const InoParams& p, Gen a) {
  return cx(3.0 / 8.0) * fold(build_e2_kappa(ChainSpec::full(L), p, a, true), all_ones<Complex>());
}

inline double coeff_a(const KernelSet& K, int i, int j, int k) {
  auto w = [&](int z) { return K.w(z); };
  return 2 - w(i - j) * (w(j - k) + w(i + k - 1) - w(i - k) - w(j + k - 1)) -
         w(i + j - 1) * (w(i - k) + w(j - k) + w(i + k - 1) + w(j + k - 1));
}

// The -1/4 w(1-2i)^2 part of the double sum is carried by the single sum in build_g_kappa.
inline double coeff_b(const KernelSet& K, int i, int j) {
  auto w = [&](int z) { return K.w(z); };
  return 5 + w(i - j) * w(i - j) - w(i + j - 1) * (w(i + j - 1) - 4 * w(1 - 2 * j)) -
         2 * w(i - j) * (w(i + j - 1) + 2 * w(1 - 2 * j));
}

inline FOp build_g_kappa(ChainSpec c, const InoParams& p, Gen a) {
  if (c.geometry != Geometry::HalfLine) throw std::invalid_argument("G_k lives on the half line");
  KernelSet K(p.kappa);
  double l2 = p.lambda * p.lambda;
  FOp r = cx(16.0 / 3.0) * build_e2_kappa(c, p, a, false);
  for (int i = c.min_site(); i <= 0; ++i) {
    for (int j = c.min_site(); j <= 0; ++j) {
      if (j == i) continue;
      for (int k = c.min_site(); k <= 0; ++k) {
        if (k == i || k == j) continue;
        double aijk = l2 / 3 * coeff_a(K, i, j, k);
        r.add_term({{Gen::Z, i, 0}, {Gen::Z, j, 0}, {a, k, 0}}, cx(aijk));
        r.add_term({{Gen::P, i, 0}, {Gen::M, j, 0}, {a, k, 0}}, cx(4 * aijk));
      }
      r.add_term({{a, i, 0}}, cx(2 * l2 / 3 * coeff_b(K, i, j)));
    }
    double w = K.w(1 - 2 * i);
    r.add_term({{a, i, 0}}, cx(-2 * l2 / 3 * w * w));
  }
  return cx(3.0 / 8.0) * r;
}

}  // namespace spinfold
