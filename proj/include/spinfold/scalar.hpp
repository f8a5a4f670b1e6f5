#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace spinfold {

using Complex = std::complex<double>;

// Exact complex number with rational parts.
struct QComplex {
  mpq_class re{0};
  mpq_class im{0};

  QComplex() = default;
  QComplex(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  QComplex(long v) : re(v), im(0) {}

  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QComplex& operator*=(const QComplex& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
      re *= o.re;
      return *this;
    }
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  QComplex& operator/=(const QComplex& o) {
    mpq_class d = o.re * o.re + o.im * o.im;
    if (sgn(d) == 0) throw std::domain_error("division by zero");
    mpq_class r = (re * o.re + im * o.im) / d;
    mpq_class i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  friend QComplex operator-(const QComplex& a) { return QComplex(-a.re, -a.im); }
  friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<QComplex> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";
};

template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
};

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

template <class S>
S from_ratio(long p, long q = 1);

template <>
inline QComplex from_ratio<QComplex>(long p, long q) {
  return QComplex(mpq_class(p, q));
}

template <>
inline Complex from_ratio<Complex>(long p, long q) {
  return Complex(static_cast<double>(p) / static_cast<double>(q), 0.0);
}

inline bool is_zero(const QComplex& c) { return sgn(c.re) == 0 && sgn(c.im) == 0; }
inline bool is_zero(const Complex& c) { return c.real() == 0.0 && c.imag() == 0.0; }

inline Complex to_complex(const QComplex& c) { return {c.re.get_d(), c.im.get_d()}; }
inline Complex to_complex(const Complex& c) { return c; }

inline double abs_value(const QComplex& c) { return std::abs(to_complex(c)); }
inline double abs_value(const Complex& c) { return std::abs(c); }

inline QComplex conj(const QComplex& c) { return QComplex(c.re, -c.im); }
inline Complex conj(const Complex& c) { return std::conj(c); }

template <class S>
S imag_unit() {
  if constexpr (is_exact_v<S>)
    return QComplex(0, 1);
  else
    return Complex(0.0, 1.0);
}

inline std::string to_string(const mpq_class& q) { return q.get_str(); }

inline std::string to_string(double x) {
  if (x == 0.0) return "0";
  return fmt::format("{:.16g}", x);
}

inline std::string to_string(const QComplex& c) {
  return "(" + to_string(c.re) + "," + to_string(c.im) + ")";
}

inline std::string to_string(const Complex& c) {
  return "(" + to_string(c.real()) + "," + to_string(c.imag()) + ")";
}

// Accepts "p/q", integers and plain decimals such as "-1.25" or "1e-3".
inline mpq_class parse_rational(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw std::invalid_argument("empty number");
  if (s.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
  }
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  std::string mant = s.substr(i, epos == std::string::npos ? std::string::npos : epos - i);
  if (epos != std::string::npos) exp10 = std::stol(s.substr(epos + 1));
  auto dot = mant.find('.');
  std::string digits = mant;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad number: " + text);
  mpz_class num(digits, 10);
  mpz_class den(1);
  mpz_class ten(10);
  for (long k = 0; k < std::labs(exp10); ++k) (exp10 > 0 ? num : den) *= ten;
  mpq_class q(num, den);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

template <class S>
S parse_scalar(const std::string& text) {
  mpq_class q = parse_rational(text);
  if constexpr (is_exact_v<S>)
    return QComplex(q);
  else
    return Complex(q.get_d(), 0.0);
}

}  // namespace spinfold
