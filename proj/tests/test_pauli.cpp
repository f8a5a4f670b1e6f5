#include "common.hpp"

#include "spinfold/matrix_oracle.hpp"

namespace spinfold::test {
namespace {

const ChainSpec h3 = ChainSpec::half(3);

TEST(SiteProduct, PlusMinusSplitsIntoIdentityAndZ) {
  auto t = site_product(Gen::P, Gen::M);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], std::make_pair(mpq_class(1, 2), Gen::I));
  EXPECT_EQ(t[1], std::make_pair(mpq_class(1, 2), Gen::Z));
  EXPECT_TRUE(site_product(Gen::P, Gen::P).empty());
  auto iz = site_product(Gen::I, Gen::Z);
  ASSERT_EQ(iz.size(), 1u);
  EXPECT_EQ(iz[0], std::make_pair(mpq_class(1), Gen::Z));
}

TEST(SiteProduct, AllSixteenAgreeWithMatrices) {
  ChainSpec one = ChainSpec::half(1);
  const Gen all[] = {Gen::I, Gen::P, Gen::M, Gen::Z};
  for (Gen a : all)
    for (Gen b : all) {
      auto A = one_site<Q>(one, a, 0), B = one_site<Q>(one, b, 0);
      if (a == Gen::I) A = QOp::identity(one);
      if (b == Gen::I) B = QOp::identity(one);
      EXPECT_LE(oracle_equiv(A, B, OracleOp::Product), 1e-15) << gen_char(a) << gen_char(b);
    }
}

TEST(Multiply, Examples) {
  auto pm = one_site<Q>(h3, Gen::P, 0) * one_site<Q>(h3, Gen::M, 0);
  auto want = QOp::identity(h3, q(1, 2)) + q(1, 2) * one_site<Q>(h3, Gen::Z, 0);
  EXPECT_EQ(pm, want);

  QOp a(h3);
  a.add_term({{Gen::P, -1, 0}, {Gen::Z, 0, 0}}, q(1));
  QOp b(h3);
  b.add_term({{Gen::P, -1, 0}, {Gen::Z, 0, 0}}, q(-1));
  EXPECT_EQ(a * one_site<Q>(h3, Gen::Z, -1), b);

  auto A = random_operator<Q>(h3, 7, 6, 3);
  EXPECT_EQ(QOp::identity(h3) * A, A);
  EXPECT_EQ(A * QOp::identity(h3), A);
}

TEST(Multiply, Associative) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto a = random_operator<Q>(h3, s, 5, 3), b = random_operator<Q>(h3, s + 100, 5, 3),
         c = random_operator<Q>(h3, s + 200, 5, 3);
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(LinearCombine, Examples) {
  auto A = random_operator<Q>(h3, 3, 5, 2);
  EXPECT_TRUE(linear_combine<Q>({{q(1), A}, {q(-1), A}}).empty());
  auto z = one_site<Q>(h3, Gen::Z, 0);
  EXPECT_EQ(linear_combine<Q>({{q(2), z}, {q(3), z}}), q(5) * z);
  auto p = one_site<Q>(h3, Gen::P, 0), m = one_site<Q>(h3, Gen::M, 0);
  auto s = linear_combine<Q>({{q(1), p}, {q(1), m}});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s, p + m);
}

TEST(Commutator, Examples) {
  for (int L = 1; L <= 6; ++L) {
    ChainSpec c = ChainSpec::half(L);
    EXPECT_EQ(commutator(build_e0<Q>(c, Gen::P), build_e0<Q>(c, Gen::M)), build_e0<Q>(c, Gen::Z));
    EXPECT_EQ(commutator(build_e0<Q>(c, Gen::Z), build_e0<Q>(c, Gen::P)), q(2) * build_e0<Q>(c, Gen::P));
    EXPECT_EQ(commutator(build_e0<Q>(c, Gen::Z), build_e0<Q>(c, Gen::M)), q(-2) * build_e0<Q>(c, Gen::M));
  }
  auto A = random_operator<Q>(h3, 11, 6, 3);
  EXPECT_TRUE(commutator(A, A).empty());
  EXPECT_TRUE(commutator(one_site<Q>(h3, Gen::P, 0), one_site<Q>(h3, Gen::Z, -1)).empty());
}

TEST(Commutator, JacobiAndMatchesProducts) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto a = random_operator<Q>(h3, s, 4, 3), b = random_operator<Q>(h3, s + 50, 4, 3),
         c = random_operator<Q>(h3, s + 90, 4, 3);
    EXPECT_EQ(commutator(a, b), a * b - b * a);
    auto jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b));
    EXPECT_TRUE(jac.empty());
  }
}

TEST(Power, MatchesRepeatedProduct) {
  auto a = random_operator<Q>(h3, 5, 4, 2);
  EXPECT_EQ(power(a, 0), QOp::identity(h3));
  EXPECT_EQ(power(a, 3), a * a * a);
}

TEST(Adjoint, Examples) {
  EXPECT_EQ(adjoint(one_site<Q>(h3, Gen::P, 0)), one_site<Q>(h3, Gen::M, 0));
  auto iz = imag_unit<Q>() * one_site<Q>(h3, Gen::Z, 0);
  EXPECT_EQ(adjoint(iz), Q(0, -1) * one_site<Q>(h3, Gen::Z, 0));
  auto H = build_h_xxx(ChainSpec::full(2), q(1));
  EXPECT_EQ(adjoint(H), H);
  EXPECT_TRUE(is_hermitian(H));
}

TEST(Adjoint, ReversesProducts) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto a = random_operator<Q>(h3, s, 4, 3), b = random_operator<Q>(h3, s + 7, 4, 3);
    EXPECT_EQ(adjoint(a * b), adjoint(b) * adjoint(a));
  }
}

TEST(Support, Examples) {
  ChainSpec c = ChainSpec::half(4);
  QOp a(c);
  a.add_term({{Gen::P, -3, 0}, {Gen::Z, 0, 0}}, q(1));
  std::set<SiteId> want{{-3, Row::Single}, {0, Row::Single}};
  EXPECT_EQ(support(a), want);
  EXPECT_TRUE(support(QOp::identity(c)).empty());
  ChainSpec d = ChainSpec::half(2, 2);
  QOp b(d);
  b.add_term({{Gen::Z, 0, 0}, {Gen::Z, 0, 1}}, q(1));
  std::set<SiteId> wb{{0, Row::Circle}, {0, Row::Bullet}};
  EXPECT_EQ(support(b), wb);
}

TEST(Support, ProductAndCommutatorStayInside) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto a = random_operator<Q>(h3, s, 3, 2), b = random_operator<Q>(h3, s + 31, 3, 2);
    auto sa = support(a), sb = support(b);
    std::set<SiteId> both(sa);
    both.insert(sb.begin(), sb.end());
    for (const auto& x : support(a * b)) EXPECT_TRUE(both.count(x));
    for (const auto& x : support(commutator(a, b))) EXPECT_TRUE(both.count(x));
  }
}

TEST(EdgePartition, Examples) {
  for (int L = 2; L <= 5; ++L) {
    ChainSpec c = ChainSpec::half(L);
    auto e = one_site<Q>(c, Gen::Z, -L + 1), i = one_site<Q>(c, Gen::Z, 0);
    auto [edge, interior] = edge_partition(e + i, 1);
    EXPECT_EQ(edge, e);
    EXPECT_EQ(interior, i);
  }
  auto [e0, i0] = edge_partition(QOp(h3), 2);
  EXPECT_TRUE(e0.empty());
  EXPECT_TRUE(i0.empty());
}

TEST(EdgePartition, MagneticCommutatorInteriorIsConstant) {
  ChainSpec c = ChainSpec::half(5);
  XxxParams<Q> p{q(1), q(3, 2)};
  auto r = commutator(build_h_magnetic(c, p), build_x(c, p, Gen::P, Variant::Full));
  auto [edge, interior] = edge_partition(r, 2);
  for (const auto& [s, v] : interior.terms()) EXPECT_TRUE(s.is_identity());
  EXPECT_FALSE(edge.empty());
}

TEST(Render, CanonicalText) {
  ChainSpec c = ChainSpec::half(3);
  F a(c);
  a.add_term({{Gen::P, -2, 0}, {Gen::Z, 0, 0}}, cx(-0.5));
  EXPECT_EQ(render(a), "(-0.5,0) * s+_{-2} sz_{0}\n");
  QOp b(ChainSpec::half(1, 2));
  b.add_term({{Gen::P, 0, 0}, {Gen::M, 0, 1}}, q(1, 3));
  EXPECT_EQ(render(b), "(1/3,0) * s+_{0,o} s-_{0,b}\n");
  EXPECT_EQ(render(QOp::identity(c, q(2))), "(2,0) * 1\n");
}

TEST(Chain, CanonicalPositions) {
  ChainSpec c = ChainSpec::full(2, 2);
  EXPECT_EQ(c.positions(), 8);
  EXPECT_EQ(c.pos(-1, 0), 0);
  EXPECT_EQ(c.pos(-1, 1), 1);
  EXPECT_EQ(c.pos(0, 0), 2);
  EXPECT_EQ(c.pos(2, 1), 7);
  EXPECT_THROW(QOp(ChainSpec::full(17)), std::length_error);
}

}  // namespace
}  // namespace spinfold::test
