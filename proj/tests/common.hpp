#pragma once

#include <gtest/gtest.h>

#include "spinfold/model_double_row.hpp"
#include "spinfold/verify.hpp"

namespace spinfold::test {

using Q = QComplex;
using F = OperatorSum<Complex>;
using QOp = OperatorSum<Q>;

inline Q q(long p, long d = 1) { return from_ratio<Q>(p, d); }

inline const Gen kGens[] = {Gen::P, Gen::M, Gen::Z};

template <class S>
OperatorSum<S> one_site(ChainSpec c, Gen g, int i, int row = 0) {
  return OperatorSum<S>::site(c, g, i, row);
}

}  // namespace spinfold::test
