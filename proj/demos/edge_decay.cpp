// Interior residual of [H^mu_k, X+_k] as the excluded edge grows, for a few kappa.
#include <cstdio>

#include "spinfold/model_inozemtsev.hpp"
#include "spinfold/verify.hpp"

using namespace spinfold;

int main() {
  const int L = 8;
  ChainSpec h = ChainSpec::half(L);
  std::printf("kappa  window  max_interior\n");
  for (double kappa : {1.0, 2.0, 3.0}) {
    InoParams p{1.0, kappa, 1.0};
    auto R = commutator(build_h_mu_kappa(h, p), build_x_kappa(h, p, Gen::P));
    for (int w = 0; w < L - 1; ++w)
      std::printf("%5.1f  %6d  %.3e\n", kappa, w, classify(R, w, 0.0, true).max_interior);
  }
}
