#pragma once

#include <optional>
#include <regex>
#include <string>

#include "spinfold/cli_config.hpp"
#include "spinfold/model_double_row.hpp"
#include "spinfold/model_inozemtsev.hpp"
#include "spinfold/model_xxx.hpp"

namespace spinfold::cli {

template <class S>
struct OpContext {
  int L = 4;
  S lambda = from_ratio<S>(1);
  S mu = from_ratio<S>(1);
  std::optional<double> kappa;
  Kind kind = Kind::Xxx;

  InoParams ino() const {
    if (!kappa) throw UsageError("this operator needs --kappa");
    return {to_complex(lambda).real(), *kappa, to_complex(mu).real()};
  }
  RowParams<S> rows() const { return {kind, lambda, kappa.value_or(1.0)}; }
};

inline std::string strip_spaces(const std::string& s) {
  std::string r;
  for (char c : s)
    if (c != ' ') r += c;
  return r;
}

inline Gen gen_arg(const std::string& s) { return gen_from_char(s.at(0)); }

inline Variant variant_arg(const std::string& primes) {
  return primes.empty() ? Variant::Full : (primes.size() == 1 ? Variant::Prime : Variant::DoublePrime);
}

// True when the operator involves the long-range kernels and so needs the float field.
inline bool needs_float(const std::string& raw, const std::string& kind) {
  std::string id = strip_spaces(raw);
  if (id.rfind("half:", 0) == 0) id = id.substr(5);
  static const std::regex ino(R"(^(Hk|Mk|Ek|Xk|Gk|Dk|Yk).*)");
  static const std::regex dbl(R"(^(Hoo-?|Hdelta|[AB][01][+\-z]|Y[+\-z])$)");
  if (std::regex_match(id, ino)) return true;
  return kind == "ino" && std::regex_match(id, dbl);
}

// Chain that an operator id lives on, without building it.
inline bool is_two_row(const std::string& raw) {
  std::string id = strip_spaces(raw);
  if (id.rfind("half:", 0) == 0) id = id.substr(5);
  static const std::regex dbl(R"(^(Hoo-?|Hdelta|[AB][01][+\-z]|Yk?[+\-z]|Dk)$)");
  return std::regex_match(id, dbl);
}

template <class S>
OperatorSum<S> make_operator(const OpContext<S>& c, const std::string& raw) {
  std::string id = strip_spaces(raw);
  bool half = id.rfind("half:", 0) == 0;
  if (half) id = id.substr(5);
  const ChainSpec one = half ? ChainSpec::half(c.L) : ChainSpec::full(c.L);
  const ChainSpec two = half ? ChainSpec::half(c.L, 2) : ChainSpec::full(c.L, 2);
  const ChainSpec h1 = ChainSpec::half(c.L), h2 = ChainSpec::half(c.L, 2);
  const XxxParams<S> xp{c.lambda, c.mu};
  std::smatch m;
  auto is = [&](const char* re) { return std::regex_match(id, m, std::regex(re)); };

  if (is(R"(^E0([+\-z])$)")) return build_e0<S>(one, gen_arg(m[1]));
  if (is(R"(^E1([+\-z])('{0,2})$)")) return build_e1(one, c.lambda, gen_arg(m[1]), variant_arg(m[2]));
  if (is(R"(^E2(t?)([+\-z])$)")) return build_e2(one, c.lambda, gen_arg(m[2]), m[1] == "t");
  if (is(R"(^Hxxx$)")) return build_h_xxx(one, c.lambda);
  if (is(R"(^Hmu$)")) return build_h_magnetic(h1, xp);
  if (is(R"(^H0$)")) return build_h_xxx(h1, c.lambda);
  if (is(R"(^X('{0,2})([+\-])$)")) return build_x(h1, xp, gen_arg(m[2]), variant_arg(m[1]));
  if (is(R"(^G([+\-z])$)")) return build_g(h1, c.lambda, gen_arg(m[1]));
  if (is(R"(^Hoo(-?)$)")) return build_h_double(m[1] == "-" ? h2 : two, c.rows());
  if (is(R"(^Hdelta$)")) return build_h_delta(h2, c.rows());
  if (is(R"(^([AB])([01])([+\-z])$)"))
    return build_ab(two, c.rows(), gen_arg(m[3]), m[2] == "1" ? 1 : 0, m[1] == "A" ? AB::A : AB::B);
  if (is(R"(^Y([+\-z])$)")) return build_y(h2, c.rows(), gen_arg(m[1]));

  if constexpr (!is_exact_v<S>) {
    if (is(R"(^Hk(-?)$)")) return build_h_kappa(m[1] == "-" ? h1 : one, c.ino());
    if (is(R"(^Hklo$)")) return build_h_lo(h1, c.ino());
    if (is(R"(^Mkmu$)")) return build_m_mu(h1, c.ino());
    if (is(R"(^Hkmu$)")) return build_h_mu_kappa(h1, c.ino());
    if (is(R"(^Hk0$)")) return build_h0_kappa(h1, c.ino());
    if (is(R"(^Ek1([+\-z])('{0,2})$)")) return build_e1_kappa(one, c.ino(), gen_arg(m[1]), variant_arg(m[2]));
    if (is(R"(^Ek2(t?)([+\-z])$)")) return build_e2_kappa(one, c.ino(), gen_arg(m[2]), m[1] == "t");
    if (is(R"(^Xk([+\-])$)")) return build_x_kappa_candidate(h1, c.ino(), gen_arg(m[1]));
    if (is(R"(^Gk([+\-z])$)")) return build_g_kappa(h1, c.ino(), gen_arg(m[1]));
    if (is(R"(^Gkf([+\-z])$)")) return build_g_kappa_fold(c.L, c.ino(), gen_arg(m[1]));
    if (is(R"(^Dk$)")) return build_d_kappa(h2, c.ino());
    if (is(R"(^Yk([+\-z])$)")) {
      RowParams<S> rp{Kind::Ino, c.lambda, c.ino().kappa};
      return build_y(h2, rp, gen_arg(m[1]));
    }
  } else {
    if (needs_float(id, c.kind == Kind::Ino ? "ino" : "xxx")) throw UsageError(raw + " needs --field float");
  }
  throw UsageError("unknown operator id: " + raw);
}

// "[coef*]id", e.g. "2*X+", "-3/2*H0", "G z".
template <class S>
OperatorSum<S> make_scaled(const OpContext<S>& c, const std::string& expr) {
  std::string e = strip_spaces(expr);
  auto star = e.find('*');
  if (star == std::string::npos) return make_operator(c, e);
  S k;
  try {
    k = parse_scalar<S>(e.substr(0, star));
  } catch (const std::exception&) {
    throw UsageError("bad coefficient in " + expr);
  }
  return k * make_operator(c, e.substr(star + 1));
}

}  // namespace spinfold::cli
