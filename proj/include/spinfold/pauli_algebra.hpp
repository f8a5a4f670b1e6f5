#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spinfold/scalar.hpp"

namespace spinfold {

// Two bits per site; identity is 0 so an absent site costs nothing.
enum class Gen : std::uint8_t { I = 0, P = 1, M = 2, Z = 3 };

inline char gen_char(Gen g) {
  switch (g) {
    case Gen::P: return '+';
    case Gen::M: return '-';
    case Gen::Z: return 'z';
    default: return '0';
  }
}

inline Gen gen_from_char(char c) {
  switch (c) {
    case '+': return Gen::P;
    case '-': return Gen::M;
    case 'z': return Gen::Z;
    case '0': return Gen::I;
    default: throw std::invalid_argument(std::string("unknown generator '") + c + "'");
  }
}

enum class Geometry { FullLine, HalfLine };

enum class Row : std::uint8_t { Single, Circle, Bullet };

struct SiteId {
  int index = 0;
  Row row = Row::Single;
  friend auto operator<=>(const SiteId&, const SiteId&) = default;
};

struct ChainSpec {
  int L = 1;
  Geometry geometry = Geometry::FullLine;
  int rows = 1;

  static ChainSpec full(int L, int rows = 1) { return {L, Geometry::FullLine, rows}; }
  static ChainSpec half(int L, int rows = 1) { return {L, Geometry::HalfLine, rows}; }

  int min_site() const { return -L + 1; }
  int max_site() const { return geometry == Geometry::FullLine ? L : 0; }
  int sites_per_row() const { return geometry == Geometry::FullLine ? 2 * L : L; }
  int positions() const { return sites_per_row() * rows; }
  bool contains(int i) const { return i >= min_site() && i <= max_site(); }

  // Canonical order: ascending index, and (i,o) before (i,b) on two rows.
  int pos(int i, int row = 0) const {
    if (!contains(i) || row < 0 || row >= rows) throw std::out_of_range("site outside chain: " + std::to_string(i));
    return (i - min_site()) * rows + row;
  }
  int index_of(int p) const { return p / rows + min_site(); }
  int row_of(int p) const { return p % rows; }
  SiteId site_of(int p) const {
    Row r = rows == 1 ? Row::Single : (row_of(p) == 0 ? Row::Circle : Row::Bullet);
    return {index_of(p), r};
  }
  ChainSpec halved() const { return {L, Geometry::HalfLine, rows}; }

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

inline std::string describe(const ChainSpec& c) {
  return std::string(c.geometry == Geometry::FullLine ? "full" : "half") + "(L=" + std::to_string(c.L) +
         ",rows=" + std::to_string(c.rows) + ")";
}

inline constexpr int kMaxPositions = 32;

struct PauliString {
  std::uint64_t bits = 0;

  Gen at(int p) const { return static_cast<Gen>((bits >> (2 * p)) & 3u); }
  void set(int p, Gen g) {
    bits &= ~(std::uint64_t{3} << (2 * p));
    bits |= std::uint64_t(static_cast<std::uint8_t>(g)) << (2 * p);
  }
  bool is_identity() const { return bits == 0; }
  // One bit (the low bit of each pair) per occupied site.
  std::uint64_t occupied() const { return (bits | (bits >> 1)) & 0x5555555555555555ull; }
  int weight() const { return __builtin_popcountll(occupied()); }

  friend bool operator==(PauliString a, PauliString b) { return a.bits == b.bits; }
  friend bool operator<(PauliString a, PauliString b) {
    // Compare site by site from the lowest position so the order follows the chain.
    std::uint64_t diff = a.bits ^ b.bits;
    if (!diff) return false;
    int p = __builtin_ctzll(diff) / 2;
    return a.at(p) < b.at(p);
  }
};

struct PauliStringHash {
  std::size_t operator()(PauliString s) const noexcept {
    std::uint64_t x = s.bits;
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

struct SiteTerm {
  int num;
  int den;
  Gen g;
};

// sigma^a sigma^b expanded in {1, +, -, z}; at most two terms.
inline int site_product(Gen a, Gen b, std::array<SiteTerm, 2>& out) {
  if (a == Gen::I) {
    out[0] = {1, 1, b};
    return 1;
  }
  if (b == Gen::I) {
    out[0] = {1, 1, a};
    return 1;
  }
  if (a == Gen::Z && b == Gen::Z) {
    out[0] = {1, 1, Gen::I};
    return 1;
  }
  if (b == Gen::Z) {
    out[0] = {a == Gen::P ? -1 : 1, 1, a};
    return 1;
  }
  if (a == Gen::Z) {
    out[0] = {b == Gen::P ? 1 : -1, 1, b};
    return 1;
  }
  if (a == b) return 0;
  out[0] = {1, 2, Gen::I};
  out[1] = {a == Gen::P ? 1 : -1, 2, Gen::Z};
  return 2;
}

inline std::vector<std::pair<mpq_class, Gen>> site_product(Gen a, Gen b) {
  std::array<SiteTerm, 2> t{};
  int n = site_product(a, b, t);
  std::vector<std::pair<mpq_class, Gen>> r;
  for (int k = 0; k < n; ++k) r.emplace_back(mpq_class(t[k].num, t[k].den), t[k].g);
  return r;
}

struct StringBranch {
  PauliString s;
  int sign;
  int halves;
};

// Product of two strings as a short list of (sign * 2^-halves, string).
inline void multiply_strings(PauliString a, PauliString b, std::vector<StringBranch>& out) {
  out.clear();
  std::uint64_t overlap = a.occupied() & b.occupied();
  if (!overlap) {
    out.push_back({PauliString{a.bits | b.bits}, 1, 0});
    return;
  }
  std::uint64_t mask = overlap | (overlap << 1);
  out.push_back({PauliString{(a.bits | b.bits) & ~mask}, 1, 0});
  std::array<SiteTerm, 2> t{};
  while (overlap) {
    int p = __builtin_ctzll(overlap) / 2;
    overlap &= overlap - 1;
    int n = site_product(a.at(p), b.at(p), t);
    if (n == 0) {
      out.clear();
      return;
    }
    if (n == 1) {
      for (auto& br : out) {
        br.s.set(p, t[0].g);
        br.sign *= t[0].num;
      }
    } else {
      std::size_t m = out.size();
      for (std::size_t k = 0; k < m; ++k) {
        StringBranch other = out[k];
        out[k].s.set(p, t[0].g);
        out[k].sign *= t[0].num;
        out[k].halves += 1;
        other.s.set(p, t[1].g);
        other.sign *= t[1].num;
        other.halves += 1;
        out.push_back(other);
      }
    }
  }
}

template <class S>
S branch_factor(int sign, int halves) {
  static thread_local std::vector<S> cache;
  if (cache.empty()) cache.push_back(from_ratio<S>(1));
  while (static_cast<int>(cache.size()) <= halves) cache.push_back(cache.back() * from_ratio<S>(1, 2));
  return sign < 0 ? S(-cache[halves]) : cache[halves];
}

template <class S>
class OperatorSum {
 public:
  using Map = std::unordered_map<PauliString, S, PauliStringHash>;

  OperatorSum() = default;
  explicit OperatorSum(ChainSpec c) : chain_(c) {
    if (c.positions() > kMaxPositions) throw std::length_error("chain too long for the 64-bit string encoding");
  }

  static OperatorSum identity(ChainSpec c, S coef = from_ratio<S>(1)) {
    OperatorSum r(c);
    r.add(PauliString{}, coef);
    return r;
  }
  static OperatorSum site(ChainSpec c, Gen g, int i, int row = 0, S coef = from_ratio<S>(1)) {
    OperatorSum r(c);
    PauliString s;
    s.set(c.pos(i, row), g);
    r.add(s, coef);
    return r;
  }

  const ChainSpec& chain() const { return chain_; }
  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add(PauliString s, const S& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  // Adds c * prod sigma^{g}_{site}; sites must be distinct.
  void add_term(std::initializer_list<std::tuple<Gen, int, int>> factors, const S& c) {
    PauliString s;
    for (auto [g, i, row] : factors) {
      int p = chain_.pos(i, row);
      if (s.at(p) != Gen::I) throw std::invalid_argument("add_term: repeated site");
      s.set(p, g);
    }
    add(s, c);
  }

  S coeff(PauliString s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? from_ratio<S>(0) : it->second;
  }
  S constant() const { return coeff(PauliString{}); }

  std::vector<std::pair<PauliString, S>> sorted() const {
    std::vector<std::pair<PauliString, S>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      int wa = a.first.weight(), wb = b.first.weight();
      if (wa != wb) return wa < wb;
      return a.first < b.first;
    });
    return v;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& [s, c] : terms_) m = std::max(m, abs_value(c));
    return m;
  }

  OperatorSum& operator+=(const OperatorSum& o) {
    check_compatible(o);
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
  }
  OperatorSum& operator-=(const OperatorSum& o) {
    check_compatible(o);
    for (const auto& [s, c] : o.terms_) add(s, -c);
    return *this;
  }
  OperatorSum& operator*=(const S& k) {
    if (is_zero(k)) {
      terms_.clear();
      return *this;
    }
    for (auto& [s, c] : terms_) c *= k;
    return *this;
  }
  friend OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }
  friend OperatorSum operator-(OperatorSum a, const OperatorSum& b) { return a -= b; }
  friend OperatorSum operator-(OperatorSum a) { return a *= from_ratio<S>(-1); }
  friend OperatorSum operator*(const S& k, OperatorSum a) { return a *= k; }
  friend OperatorSum operator*(OperatorSum a, const S& k) { return a *= k; }

  friend OperatorSum operator*(const OperatorSum& a, const OperatorSum& b) { return multiply(a, b); }

  friend bool operator==(const OperatorSum& a, const OperatorSum& b) {
    return a.chain_ == b.chain_ && a.terms_ == b.terms_;
  }

  void check_compatible(const OperatorSum& o) const {
    if (!(chain_ == o.chain_))
      throw std::invalid_argument("chain mismatch: " + describe(chain_) + " vs " + describe(o.chain_));
  }

 private:
  ChainSpec chain_{};
  Map terms_;
};

template <class S>
OperatorSum<S> multiply(const OperatorSum<S>& a, const OperatorSum<S>& b) {
  a.check_compatible(b);
  OperatorSum<S> r(a.chain());
  std::vector<StringBranch> br;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      multiply_strings(sa, sb, br);
      if (br.empty()) continue;
      S c = ca * cb;
      for (const auto& x : br) {
        if (x.sign == 1 && x.halves == 0)
          r.add(x.s, c);
        else
          r.add(x.s, c * branch_factor<S>(x.sign, x.halves));
      }
    }
  }
  return r;
}

template <class S>
OperatorSum<S> linear_combine(const std::vector<std::pair<S, OperatorSum<S>>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("linear_combine needs at least one operand");
  OperatorSum<S> r(pairs.front().second.chain());
  for (const auto& [k, op] : pairs) r += k * op;
  return r;
}

template <class S>
OperatorSum<S> commutator(const OperatorSum<S>& a, const OperatorSum<S>& b) {
  a.check_compatible(b);
  OperatorSum<S> r(a.chain());
  std::vector<StringBranch> ab, ba;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      if (!(sa.occupied() & sb.occupied())) continue;
      multiply_strings(sa, sb, ab);
      multiply_strings(sb, sa, ba);
      if (ab.empty() && ba.empty()) continue;
      S c = ca * cb;
      for (const auto& x : ab) r.add(x.s, c * branch_factor<S>(x.sign, x.halves));
      for (const auto& x : ba) r.add(x.s, c * branch_factor<S>(-x.sign, x.halves));
    }
  }
  return r;
}

template <class S>
OperatorSum<S> power(const OperatorSum<S>& a, int n) {
  OperatorSum<S> r = OperatorSum<S>::identity(a.chain());
  for (int k = 0; k < n; ++k) r = r * a;
  return r;
}

template <class S>
OperatorSum<S> adjoint(const OperatorSum<S>& a) {
  OperatorSum<S> r(a.chain());
  for (const auto& [s, c] : a.terms()) {
    PauliString t = s;
    for (int p = 0; p < a.chain().positions(); ++p) {
      Gen g = s.at(p);
      if (g == Gen::P) t.set(p, Gen::M);
      if (g == Gen::M) t.set(p, Gen::P);
    }
    r.add(t, conj(c));
  }
  return r;
}

inline std::vector<SiteId> support(PauliString s, const ChainSpec& chain) {
  std::vector<SiteId> out;
  for (int p = 0; p < chain.positions(); ++p)
    if (s.at(p) != Gen::I) out.push_back(chain.site_of(p));
  return out;
}

template <class S>
std::set<SiteId> support(const OperatorSum<S>& a) {
  std::set<SiteId> out;
  for (const auto& [s, c] : a.terms())
    for (auto id : support(s, a.chain())) out.insert(id);
  return out;
}

// Edge sites: -L+1 .. -L+w, and on a full line also L-w+1 .. L.
inline bool touches_edge(PauliString s, const ChainSpec& chain, int w) {
  if (w <= 0) return false;
  for (int p = 0; p < chain.positions(); ++p) {
    if (s.at(p) == Gen::I) continue;
    int i = chain.index_of(p);
    if (i <= chain.min_site() + w - 1) return true;
    if (chain.geometry == Geometry::FullLine && i >= chain.max_site() - w + 1) return true;
  }
  return false;
}

template <class S>
std::pair<OperatorSum<S>, OperatorSum<S>> edge_partition(const OperatorSum<S>& a, int w) {
  OperatorSum<S> edge(a.chain()), interior(a.chain());
  for (const auto& [s, c] : a.terms()) (touches_edge(s, a.chain(), w) ? edge : interior).add(s, c);
  return {edge, interior};
}

inline std::string render_string(PauliString s, const ChainSpec& chain) {
  if (s.is_identity()) return "1";
  std::string out;
  for (int p = 0; p < chain.positions(); ++p) {
    Gen g = s.at(p);
    if (g == Gen::I) continue;
    if (!out.empty()) out += ' ';
    out += 's';
    out += gen_char(g);
    out += "_{" + std::to_string(chain.index_of(p));
    if (chain.rows == 2) out += chain.row_of(p) == 0 ? ",o" : ",b";
    out += '}';
  }
  return out;
}

template <class S>
std::string render_term(PauliString s, const S& c, const ChainSpec& chain) {
  return to_string(c) + " * " + render_string(s, chain);
}

template <class S>
std::string render(const OperatorSum<S>& a) {
  std::string out;
  for (const auto& [s, c] : a.sorted()) out += render_term(s, c, a.chain()) + "\n";
  return out;
}

template <class S>
OperatorSum<Complex> to_float(const OperatorSum<S>& a) {
  OperatorSum<Complex> r(a.chain());
  for (const auto& [s, c] : a.terms()) r.add(s, to_complex(c));
  return r;
}

template <class S>
bool is_hermitian(const OperatorSum<S>& a, double tol = 0) {
  auto d = a - adjoint(a);
  if constexpr (is_exact_v<S>)
    return d.empty();
  else
    return d.max_abs() <= tol;
}

}  // namespace spinfold
