// Free particle: pick a velocity, get the conserved momenta, rebuild the
// world line from them and confirm the discrete action is stationary.

#include <cstdio>

#include "finsler/mechanics.hpp"

using namespace finsler;

int main() {
  const Kappa kappa(-1.0);
  Vector9 xdot{{1.2, 0.3, -0.1, 0.2, 0.05, 0.0, 0.1, -0.05, 0.9}};
  xdot = (1.0 / signed_cbrt(cubic_form(xdot))) * xdot;  // unit speed

  const Momenta9 p = canonical_momenta(xdot, kappa);
  std::printf("constraint residual  %.3g\n", momentum_constraint_residual(p, kappa));
  std::printf("canonical energy     %.3g\n", canonical_energy(xdot, kappa));

  const Trajectory line = Trajectory::from_momenta(Vector9::zero(), p, kappa, 2.0);
  for (double s : {0.0, 1.0, 2.0}) {
    const Vector9 x = line.at(s);
    std::printf("s = %.1f  X0 = %.6f  X8 = %.6f  F(X) = %.6f\n", s, x[0], x[8], cubic_form(x));
  }

  const auto rep = action_stationarity_check(line, bump_perturbation(1, 0.5, 1.5, 1.0),
                                             {1e-2, 3e-3, 1e-3, 3e-4, 1e-4}, kappa);
  std::printf("action %.12f, log-log slope %.4f\n", rep.action_at_zero, rep.slope.value_or(0.0));
}
