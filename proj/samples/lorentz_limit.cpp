// Restrict to the SL(2,C) subgroup: a boost acts on X0..X3 as a Lorentz
// transformation, and with kappa = -mc the 9-dimensional action reduces to
// the relativistic one.

#include <cmath>
#include <cstdio>

#include "finsler/lorentz.hpp"

using namespace finsler;

int main() {
  const double eta = 0.4;
  const BlockSplit split = block_split_check(CMat2{std::exp(eta / 2), 0.0, 0.0, std::exp(-eta / 2)});
  std::printf("boost block: cosh %.6f sinh %.6f, metric residual %.2g, X8 factor %.1f\n",
              split.vector_block(0, 0), split.vector_block(0, 3), lorentz_check(split.vector_block), split.scalar);

  const MinkVec4 v{{1.3, 0.2, -0.4, 0.5}};
  const Spinor4 s{{0.1, -0.05, 0.2, 0.0}};
  const double x8 = solve_x8dot(v, s);
  const ReducedParams params(2.0, 1.0);
  const Vector9 xdot = assemble_velocity(v, s, x8);
  std::printf("x8dot %.12f, Finsler density %.12f, Minkowski density %.12f\n", x8,
              lagrangian(xdot, params.kappa()), minkowski_lagrangian(v, params));
}
