#include "common.hpp"

namespace spinfold::test {
namespace {

const RowParams<Q> xxx{};

TEST(DoubleRow, UncoupledHamiltonian) {
  ChainSpec f = ChainSpec::full(3, 2);
  auto H = build_h_double(f, xxx);
  for (const auto& [s, c] : H.terms()) {
    auto sup = support(s, f);
    ASSERT_FALSE(sup.empty());
    for (const auto& x : sup) EXPECT_EQ(x.row, sup.front().row);
  }
  EXPECT_EQ(H, build_h_xxx(f, q(1), 0) + build_h_xxx(f, q(1), 1));
  EXPECT_TRUE(is_hermitian(H));
  RowParams<Complex> ino{Kind::Ino, cx(1), 20.0};
  EXPECT_LE((build_h_double(f, ino) - to_float(H)).max_abs(), 1e-12);
  EXPECT_THROW(build_h_double(ChainSpec::full(3), xxx), std::invalid_argument);
  EXPECT_THROW(build_h_double(f, RowParams<Q>{Kind::Ino, q(1), 1.0}), std::invalid_argument);
}

TEST(DoubleRow, LieOperators) {
  ChainSpec f = ChainSpec::full(2, 2);
  QOp want(f);
  for (int i = -1; i <= 2; ++i)
    for (int r = 0; r < 2; ++r) want.add_term({{Gen::Z, i, r}}, q(1));
  EXPECT_EQ(build_ab(f, xxx, Gen::Z, 0, AB::A), want);
  EXPECT_EQ(swap_rows(build_ab(f, xxx, Gen::P, 1, AB::B)), -build_ab(f, xxx, Gen::P, 1, AB::B));
  EXPECT_THROW(build_ab(f, xxx, Gen::P, 2, AB::A), std::invalid_argument);
}

TEST(DoubleRow, FoldsXxx) {
  ChainSpec f = ChainSpec::full(3, 2), h = ChainSpec::half(3, 2);
  auto K = all_ones<Q>();
  EXPECT_EQ(fold_double(build_h_double(f, xxx), K), q(2) * build_h_delta(h, xxx));
  for (Gen a : kGens) {
    EXPECT_TRUE(fold_double(build_ab(f, xxx, a, 1, AB::A), K).empty());
    EXPECT_EQ(fold_double(build_ab(f, xxx, a, 1, AB::B), K), q(2) * build_y(h, xxx, a));
  }
  EXPECT_EQ(q(1, 2) * fold_double(build_ab(f, xxx, Gen::Z, 1, AB::B), K), build_y(h, xxx, Gen::Z));
}

TEST(DoubleRow, SymmetriesXxx) {
  ChainSpec h = ChainSpec::half(4, 2);
  auto Hd = build_h_delta(h, xxx);
  for (Gen a : kGens) {
    EXPECT_TRUE(commutator(Hd, build_ab(h, xxx, a, 0, AB::A)).empty());
    EXPECT_FALSE(commutator(Hd, build_ab(h, xxx, a, 0, AB::B)).empty());
    auto r = check_symmetry(Hd, build_y(h, xxx, a), 2);
    EXPECT_TRUE(r.ok()) << r.witness.value_or("");
    EXPECT_EQ(r.max_interior, 0.0);
  }
}

TEST(DoubleRow, InozemtsevFoldsAndLimit) {
  ChainSpec f = ChainSpec::full(4, 2), h = ChainSpec::half(4, 2);
  RowParams<Complex> ino{Kind::Ino, cx(1), 1.0};
  auto K = all_ones<Complex>();
  EXPECT_LE((fold_double(build_h_double(f, ino), K) - cx(2) * build_h_delta(h, ino)).max_abs(), 1e-12);
  for (Gen a : kGens) {
    EXPECT_LE((fold_double(build_ab(f, ino, a, 1, AB::B), K) - cx(2) * build_y(h, ino, a)).max_abs(), 1e-12);
    EXPECT_LE(fold_double(build_ab(f, ino, a, 1, AB::A), K).max_abs(), 1e-12);
  }
  RowParams<Complex> lim{Kind::Ino, cx(1), 20.0};
  ChainSpec h3 = ChainSpec::half(3, 2);
  for (Gen a : kGens) EXPECT_LE((build_y(h3, lim, a) - to_float(build_y(h3, xxx, a))).max_abs(), 1e-9);
  EXPECT_LE((build_h_delta(h3, lim) - to_float(build_h_delta(h3, xxx))).max_abs(), 1e-9);
}

}  // namespace
}  // namespace spinfold::test
