// Folds the level-one charge E1+ of a length-2L XXX chain with the magnetic
// constants and compares it with the boundary charge X+ on the half chain.
#include <iostream>

#include "spinfold/folding.hpp"
#include "spinfold/model_xxx.hpp"
#include "spinfold/verify.hpp"

using namespace spinfold;

int main() {
  const int L = 3;
  auto one = from_ratio<QComplex>(1), mu = from_ratio<QComplex>(3, 2);
  auto K = xxx_magnetic(one, mu);
  auto folded = fold(build_e1(ChainSpec::full(L), one, Gen::P, Variant::Full), K);
  auto X = build_x(ChainSpec::half(L), XxxParams<QComplex>{one, mu}, Gen::P, Variant::Full);
  std::cout << "fold(E1+):\n" << render(folded) << "\nX+:\n" << render(X);
  auto r = check_fold_identity(folded, from_ratio<QComplex>(2) * X, false);
  std::cout << "\nfold(E1+) - 2 X+: " << status_name(r.status) << "\n";
}
