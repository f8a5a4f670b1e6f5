#include "common.hpp"

#include "spinfold/matrix_oracle.hpp"

namespace spinfold::test {
namespace {

TEST(Presets, XxxMagneticSymmetricSplit) {
  auto K = xxx_magnetic(q(1), q(1));
  EXPECT_EQ(K(Gen::P, Gen::M), q(-2));
  EXPECT_EQ(K(Gen::M, Gen::P), q(2));
  EXPECT_EQ(K(Gen::Z, Gen::P), q(1));
  EXPECT_EQ(K(Gen::Z, Gen::M), q(-1));
  EXPECT_EQ(K(Gen::P, Gen::I), q(1));
  EXPECT_EQ(K(Gen::I, Gen::P), q(-1));
  // k^{z+-} = -+4 / (k^{+-} - k^{-+}) for any split
  auto K2 = xxx_magnetic(q(1), q(3, 2), q(-1, 2));
  EXPECT_EQ(K2(Gen::Z, Gen::P), q(-4) / (K2(Gen::P, Gen::M) - K2(Gen::M, Gen::P)));
  EXPECT_THROW(xxx_magnetic(q(1), q(0)), std::invalid_argument);
}

TEST(Presets, AllOnesAndInoMagnetic) {
  auto A = all_ones<Q>();
  for (auto& v : A.k) EXPECT_EQ(v, q(1));
  auto K = ino_magnetic<Q>(1);
  EXPECT_EQ(K(Gen::P, Gen::M), q(2));
  EXPECT_EQ(K(Gen::M, Gen::P), q(-2));
  EXPECT_EQ(K(Gen::Z, Gen::M), q(-1, 2));
  EXPECT_EQ(K(Gen::Z, Gen::P), q(1, 2));
}

TEST(Fold, LieOperatorsUnderMagneticConstants) {
  for (int L = 1; L <= 5; ++L) {
    auto K = xxx_magnetic(q(1), q(1));
    ChainSpec f = ChainSpec::full(L), h = ChainSpec::half(L);
    EXPECT_EQ(fold(build_e0<Q>(f, Gen::Z), K), q(2) * build_e0<Q>(h, Gen::Z));
    EXPECT_TRUE(fold(build_e0<Q>(f, Gen::P), K).empty());
    EXPECT_TRUE(fold(build_e0<Q>(f, Gen::M), K).empty());
  }
}

TEST(Fold, OpenHamiltonianAtL3) {
  ChainSpec f = ChainSpec::full(3), h = ChainSpec::half(3);
  Q l = q(3, 2);
  auto want = q(2) * build_h_xxx(h, l) - l * QOp::identity(h, q(3, 2));
  EXPECT_EQ(fold(build_h_xxx(f, l), all_ones<Q>()), want);
}

TEST(FoldDouble, LieOperatorsAndHamiltonian) {
  ChainSpec f = ChainSpec::full(3, 2), h = ChainSpec::half(3, 2);
  RowParams<Q> rp;
  for (Gen a : kGens) {
    EXPECT_EQ(fold_double(build_ab(f, rp, a, 0, AB::A), all_ones<Q>()), q(2) * build_ab(h, rp, a, 0, AB::A));
    EXPECT_TRUE(fold_double(build_ab(f, rp, a, 0, AB::B), all_ones<Q>()).empty());
  }
  QOp cross(h);
  add_hop(cross, 0, 0, 0, 1, q(1));
  auto want = q(2) * build_h_double(h, rp) - q(2) * cross;
  EXPECT_EQ(fold_double(build_h_double(f, rp), all_ones<Q>()), want);
}

TEST(Fold, Linear) {
  ChainSpec f = ChainSpec::full(3);
  auto K = xxx_magnetic(q(1), q(3, 2));
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto a = random_operator<Q>(f, s, 5, 3), b = random_operator<Q>(f, s + 40, 5, 3);
    Q x = q(2, 3), y = Q(1, -2);
    EXPECT_EQ(fold(x * a + y * b, K), x * fold(a, K) + y * fold(b, K));
  }
}

TEST(Fold, MultiplicativeOnDisjointFoldPairs) {
  ChainSpec f = ChainSpec::full(3);
  auto K = xxx_magnetic(q(1), q(1));
  // A sits on the pair {0, 1}, B on {-1, 2}.
  QOp A(f), B(f);
  A.add_term({{Gen::P, 0, 0}, {Gen::Z, 1, 0}}, q(1));
  A.add_term({{Gen::M, 1, 0}}, q(2));
  B.add_term({{Gen::Z, -1, 0}, {Gen::M, 2, 0}}, q(1));
  B.add_term({{Gen::P, 2, 0}}, q(-1, 2));
  EXPECT_EQ(fold(A * B, K), fold(A, K) * fold(B, K));
}

TEST(Fold, NotAnAlgebraHomomorphism) {
  ChainSpec f = ChainSpec::full(1), h = ChainSpec::half(1);
  auto K = all_ones<Q>();
  auto a = one_site<Q>(f, Gen::M, 1), b = one_site<Q>(f, Gen::P, 0);
  auto lhs = fold(a * b, K), rhs = fold(a, K) * fold(b, K);
  EXPECT_EQ(lhs, QOp::identity(h, q(1, 2)) + q(1, 2) * one_site<Q>(h, Gen::Z, 0));
  EXPECT_EQ(rhs, QOp::identity(h, q(1, 2)) - q(1, 2) * one_site<Q>(h, Gen::Z, 0));
}

TEST(Fold, ZeroConstantKillsTerms) {
  ChainSpec f = ChainSpec::full(2);
  auto K = all_ones<Q>();
  K(Gen::Z, Gen::Z) = q(0);
  QOp a(f);
  a.add_term({{Gen::Z, 0, 0}, {Gen::Z, 1, 0}}, q(1));
  a.add_term({{Gen::Z, -1, 0}}, q(1));
  EXPECT_EQ(fold(a, K), one_site<Q>(ChainSpec::half(2), Gen::Z, -1));
}

TEST(Fold, RejectsWrongGeometry) {
  EXPECT_THROW(fold(build_e0<Q>(ChainSpec::half(2), Gen::Z), all_ones<Q>()), std::invalid_argument);
  EXPECT_THROW(fold(build_e0<Q>(ChainSpec::full(2, 2), Gen::Z), all_ones<Q>()), std::invalid_argument);
  EXPECT_THROW(fold_double(build_e0<Q>(ChainSpec::full(2), Gen::Z), all_ones<Q>()), std::invalid_argument);
}

TEST(FoldFloat, MatchesExact) {
  ChainSpec f = ChainSpec::full(3);
  auto A = random_operator<Q>(f, 9, 8, 4);
  auto exact = to_float(fold(A, xxx_magnetic(q(1), q(3, 2))));
  auto flt = fold(to_float(A), xxx_magnetic(cx(1), cx(1.5)));
  EXPECT_LE((exact - flt).max_abs(), 1e-14);
}

TEST(ConstantsJson, RoundTrip) {
  auto K = xxx_magnetic(q(1), q(3, 2));
  auto j = constants_to_json(K);
  EXPECT_EQ(j["+-"][0], "-3");
  EXPECT_EQ(j["z+"][0], "2/3");
  auto back = constants_from_json<Q>(j);
  EXPECT_EQ(back.k, K.k);
  auto f = constants_from_json<Complex>(j);
  EXPECT_DOUBLE_EQ(f(Gen::Z, Gen::P).real(), 2.0 / 3.0);
}

TEST(ConstantsJson, DefaultsAndErrors) {
  auto K = constants_from_json<Q>(nlohmann::json::parse(R"({"+-": ["1/2", "0"], "zz": [0.25, 0]})"));
  EXPECT_EQ(K(Gen::P, Gen::M), q(1, 2));
  EXPECT_EQ(K(Gen::Z, Gen::Z), q(1, 4));
  EXPECT_EQ(K(Gen::M, Gen::P), q(1));
  EXPECT_THROW(constants_from_json<Q>(nlohmann::json::parse(R"({"abc": [1, 0]})")), std::invalid_argument);
  EXPECT_THROW(constants_from_json<Q>(nlohmann::json::parse(R"({"+-": 1})")), std::invalid_argument);
  EXPECT_THROW(constants_from_json<Q>(nlohmann::json::parse(R"({"00": [2, 0]})")), std::invalid_argument);
}

}  // namespace
}  // namespace spinfold::test
