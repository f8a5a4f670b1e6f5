#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "spinfold/pauli_algebra.hpp"

namespace spinfold {

template <class S>
struct FoldingConstants {
  std::array<S, 16> k;

  FoldingConstants() { k.fill(from_ratio<S>(1)); }

  S& operator()(Gen a, Gen b) { return k[idx(a, b)]; }
  const S& operator()(Gen a, Gen b) const { return k[idx(a, b)]; }
  S& at(const std::string& key) { return (*this)(gen_from_char(key.at(0)), gen_from_char(key.at(1))); }

  static int idx(Gen a, Gen b) { return static_cast<int>(a) * 4 + static_cast<int>(b); }
};

inline const std::array<const char*, 16>& folding_keys() {
  static const std::array<const char*, 16> keys = {"00", "0+", "0-", "0z", "+0", "++", "+-", "+z",
                                                   "-0", "-+", "--", "-z", "z0", "z+", "z-", "zz"};
  return keys;
}

enum class PresetKind { XxxMagnetic, AllOnes, InoMagnetic };

template <class S>
FoldingConstants<S> all_ones() {
  return {};
}

// Constraints k1 plus k1a/k2; k^{+-} defaults to the symmetric split -2 mu / lambda.
template <class S>
FoldingConstants<S> xxx_magnetic(const S& lambda, const S& mu) {
  if (is_zero(lambda) || is_zero(mu)) throw std::invalid_argument("xxx-magnetic needs nonzero lambda and mu");
  FoldingConstants<S> K;
  K(Gen::P, Gen::I) = K(Gen::M, Gen::I) = from_ratio<S>(1);
  K(Gen::I, Gen::P) = K(Gen::I, Gen::M) = from_ratio<S>(-1);
  S r = mu / lambda;
  K(Gen::P, Gen::M) = from_ratio<S>(-2) * r;
  K(Gen::M, Gen::P) = from_ratio<S>(2) * r;
  S t = lambda / mu;
  K(Gen::Z, Gen::P) = K(Gen::P, Gen::Z) = t;
  K(Gen::Z, Gen::M) = K(Gen::M, Gen::Z) = -t;
  return K;
}

template <class S>
FoldingConstants<S> xxx_magnetic(const S& lambda, const S& mu, const S& k_pm) {
  auto K = xxx_magnetic(lambda, mu);
  K(Gen::P, Gen::M) = k_pm;
  K(Gen::M, Gen::P) = k_pm + from_ratio<S>(4) * mu / lambda;
  return K;
}

// Table k1b taken as printed; sign = +1 gives k^{+-} = 2.
template <class S>
FoldingConstants<S> ino_magnetic(int sign) {
  FoldingConstants<S> K;
  K(Gen::I, Gen::P) = K(Gen::I, Gen::M) = from_ratio<S>(-1);
  K(Gen::P, Gen::M) = from_ratio<S>(2 * sign);
  K(Gen::M, Gen::P) = from_ratio<S>(-2 * sign);
  K(Gen::Z, Gen::M) = K(Gen::M, Gen::Z) = from_ratio<S>(-sign, 2);
  K(Gen::Z, Gen::P) = K(Gen::P, Gen::Z) = from_ratio<S>(sign, 2);
  return K;
}

namespace detail {

template <class S>
void fold_pair(Gen a, Gen b, int out_pos, const S& factor, std::vector<std::pair<PauliString, S>>& branches,
               std::vector<std::pair<PauliString, S>>& scratch) {
  std::array<SiteTerm, 2> t{};
  int n = site_product(a, b, t);
  if (n == 0) {
    branches.clear();
    return;
  }
  if (n == 1 && t[0].num == 1 && t[0].den == 1) {
    for (auto& [s, c] : branches) {
      s.set(out_pos, t[0].g);
      c *= factor;
    }
    return;
  }
  scratch.clear();
  for (const auto& [s, c] : branches) {
    for (int k = 0; k < n; ++k) {
      PauliString u = s;
      u.set(out_pos, t[k].g);
      scratch.emplace_back(u, c * factor * from_ratio<S>(t[k].num, t[k].den));
    }
  }
  branches.swap(scratch);
}

}  // namespace detail

// Sites i > 0 are relabelled 1 - i; the left generator stays on the left.
template <class S>
OperatorSum<S> fold(const OperatorSum<S>& a, const FoldingConstants<S>& K) {
  const ChainSpec& c = a.chain();
  if (c.geometry != Geometry::FullLine || c.rows != 1) throw std::invalid_argument("fold needs a single-row full line");
  ChainSpec h = c.halved();
  OperatorSum<S> r(h);
  std::vector<std::pair<PauliString, S>> br, scratch;
  for (const auto& [s, coef] : a.terms()) {
    br.assign(1, {PauliString{}, coef});
    for (int i = c.min_site(); i <= 0 && !br.empty(); ++i) {
      Gen left = s.at(c.pos(i)), right = s.at(c.pos(1 - i));
      if (left == Gen::I && right == Gen::I) continue;
      const S& k = K(left, right);
      if (is_zero(k)) {
        br.clear();
        break;
      }
      detail::fold_pair(left, right, h.pos(i), k, br, scratch);
    }
    for (const auto& [u, v] : br) r.add(u, v);
  }
  return r;
}

// Row o at site i receives (a_i, b_{1-i}); row b receives (b_i, a_{1-i}).
template <class S>
OperatorSum<S> fold_double(const OperatorSum<S>& a, const FoldingConstants<S>& K) {
  const ChainSpec& c = a.chain();
  if (c.geometry != Geometry::FullLine || c.rows != 2)
    throw std::invalid_argument("fold_double needs a two-row full line");
  ChainSpec h = c.halved();
  OperatorSum<S> r(h);
  std::vector<std::pair<PauliString, S>> br, scratch;
  for (const auto& [s, coef] : a.terms()) {
    br.assign(1, {PauliString{}, coef});
    for (int i = c.min_site(); i <= 0 && !br.empty(); ++i) {
      for (int row = 0; row < 2 && !br.empty(); ++row) {
        Gen left = s.at(c.pos(i, row)), right = s.at(c.pos(1 - i, 1 - row));
        if (left == Gen::I && right == Gen::I) continue;
        const S& k = K(left, right);
        if (is_zero(k)) {
          br.clear();
          break;
        }
        detail::fold_pair(left, right, h.pos(i, row), k, br, scratch);
      }
    }
    for (const auto& [u, v] : br) r.add(u, v);
  }
  return r;
}

template <class S>
nlohmann::json constants_to_json(const FoldingConstants<S>& K) {
  nlohmann::json j = nlohmann::json::object();
  for (const char* key : folding_keys()) {
    const S& v = K(gen_from_char(key[0]), gen_from_char(key[1]));
    if constexpr (is_exact_v<S>)
      j[key] = {v.re.get_str(), v.im.get_str()};
    else
      j[key] = {v.real(), v.imag()};
  }
  return j;
}

// Missing keys keep the all-ones default.
template <class S>
FoldingConstants<S> constants_from_json(const nlohmann::json& j) {
  FoldingConstants<S> K;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key.size() != 2) throw std::invalid_argument("bad folding key: " + key);
    const auto& v = it.value();
    if (!v.is_array() || v.size() != 2) throw std::invalid_argument("folding entry must be [re, im]: " + key);
    auto part = [](const nlohmann::json& x) {
      return x.is_string() ? parse_rational(x.get<std::string>()) : parse_rational(fmt::format("{:.17g}", x.get<double>()));
    };
    mpq_class re = part(v[0]), im = part(v[1]);
    if constexpr (is_exact_v<S>)
      K.at(key) = QComplex(re, im);
    else
      K.at(key) = Complex(re.get_d(), im.get_d());
  }
  if (!is_zero(K(Gen::I, Gen::I) - from_ratio<S>(1))) throw std::invalid_argument("k(0,0) must be 1");
  return K;
}

}  // namespace spinfold
