#pragma once

#include <Eigen/Dense>

#include <random>
#include <stdexcept>
#include <string>

#include "spinfold/pauli_algebra.hpp"

namespace spinfold {

using DenseMatrix = Eigen::MatrixXcd;

struct DenseOperator {
  DenseMatrix m;
  ChainSpec chain;
};

inline int oracle_site_cap = 14;

// Basis state bit k (counted from the most significant factor) is 1 for spin down.
// The first canonical position is the leftmost Kronecker factor.
template <class S>
DenseOperator to_matrix(const OperatorSum<S>& a) {
  const ChainSpec& c = a.chain();
  int n = c.positions();
  if (n > oracle_site_cap)
    throw std::length_error("matrix oracle cap exceeded: " + std::to_string(n) + " sites");
  std::size_t dim = std::size_t{1} << n;
  DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [s, coef] : a.terms()) {
    Complex cf = to_complex(coef);
    for (std::size_t col = 0; col < dim; ++col) {
      std::size_t row = col;
      double amp = 1.0;
      bool zero = false;
      for (int p = 0; p < n && !zero; ++p) {
        Gen g = s.at(p);
        if (g == Gen::I) continue;
        std::size_t bit = std::size_t{1} << (n - 1 - p);
        bool down = col & bit;
        switch (g) {
          case Gen::Z: amp *= down ? -1.0 : 1.0; break;
          case Gen::P:
            if (!down) zero = true;
            else row &= ~bit;
            break;
          case Gen::M:
            if (down) zero = true;
            else row |= bit;
            break;
          default: break;
        }
      }
      if (!zero) m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += cf * amp;
    }
  }
  return {std::move(m), c};
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

enum class OracleOp { Product, Commutator };

template <class S>
double oracle_equiv(const OperatorSum<S>& a, const OperatorSum<S>& b, OracleOp op) {
  DenseMatrix ma = to_matrix(a).m, mb = to_matrix(b).m;
  DenseMatrix dense = op == OracleOp::Product ? DenseMatrix(ma * mb) : DenseMatrix(ma * mb - mb * ma);
  OperatorSum<S> sym = op == OracleOp::Product ? multiply(a, b) : commutator(a, b);
  return max_abs_diff(to_matrix(sym).m, dense);
}

template <class S>
S random_coefficient(std::mt19937_64& rng) {
  if constexpr (is_exact_v<S>) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    return QComplex(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
  } else {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return Complex(u(rng), u(rng));
  }
}

template <class S>
OperatorSum<S> random_operator(ChainSpec chain, std::uint64_t seed, int n_terms, int max_support) {
  if (n_terms < 1) throw std::invalid_argument("random_operator needs n_terms >= 1");
  std::mt19937_64 rng(seed);
  int n = chain.positions();
  max_support = std::min(max_support, n);
  std::uniform_int_distribution<int> sup(0, max_support), gen(1, 3), pos(0, n - 1);
  OperatorSum<S> r(chain);
  for (int t = 0; t < n_terms; ++t) {
    PauliString s;
    int k = sup(rng);
    while (s.weight() < k) {
      int p = pos(rng);
      if (s.at(p) == Gen::I) s.set(p, static_cast<Gen>(gen(rng)));
    }
    S c = random_coefficient<S>(rng);
    if (is_zero(c)) c = from_ratio<S>(1);
    r.add(s, c);
  }
  return r;
}

inline std::string ascii_dump(const DenseMatrix& m) {
  if (m.rows() > 16) throw std::length_error("ascii dump limited to dimension 16");
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += to_string(Complex(m(i, j)));
    }
    out += '\n';
  }
  return out;
}

}  // namespace spinfold
