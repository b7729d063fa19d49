#ifndef FINSLER_SAMPLING_HPP
#define FINSLER_SAMPLING_HPP

// Seeded generators for the inputs used by property checks.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "finsler/core.hpp"
#include "finsler/lorentz.hpp"
#include "finsler/mechanics.hpp"
#include "finsler/random.hpp"

namespace finsler {

/// Components uniform on [-10, 10).
inline Vector9 random_vector(Rng& rng, double half_width = 10.0) {
  return rng.components<PointTag, 9>(-half_width, half_width);
}

/// Random velocity with |F| >= 1e-2 ||xdot||^3. The floor keeps
/// finite-difference and inversion checks away from the isotropic cone,
/// where their conditioning degrades.
inline Vector9 random_nonisotropic(Rng& rng, double floor = 1e-2) {
  for (;;) {
    const Vector9 x = random_vector(rng);
    const double n = x.norm();
    if (std::abs(cubic_form(x)) >= floor * n * n * n) return x;
  }
}

/// Random velocity rescaled so that its cubic form is exactly 1 up to
/// rounding: v = xdot / cbrt(F(xdot)).
inline Vector9 random_unit_speed(Rng& rng) {
  const Vector9 x = random_nonisotropic(rng);
  return (1.0 / signed_cbrt(cubic_form(x))) * x;
}

/// Timelike 4-velocity a (cosh psi, sinh psi n) with a in [0.5, 2),
/// psi in [0, 1.5) and n a random unit vector.
inline MinkVec4 random_timelike(Rng& rng) {
  const double a = rng.uniform(0.5, 2.0);
  const double psi = rng.uniform(0.0, 1.5);
  const double cos_t = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double sin_t = std::sqrt(1.0 - cos_t * cos_t);
  return MinkVec4{{a * std::cosh(psi), a * std::sinh(psi) * sin_t * std::cos(phi),
                   a * std::sinh(psi) * sin_t * std::sin(phi), a * std::sinh(psi) * cos_t}};
}

/// Spinor velocities with norm at most 0.3 sqrt(g(v,v)).
inline Spinor4 random_spinor(Rng& rng, const MinkVec4& v) {
  Spinor4 s = rng.components<SpinorTag, 4>(-1.0, 1.0);
  const double cap = 0.3 * std::sqrt(minkowski_square(v));
  const double n = s.norm();
  if (n > 0.0) s *= cap * rng.unit() / n;
  return s;
}

/// Smooth random timelike 4-velocity history and matching spinor samples on
/// a uniform grid over [tau_begin, tau_end].
struct TimelikeFixture {
  SampledCurve<MinkVec4> velocity;
  std::vector<Spinor4> spinor;
};

inline TimelikeFixture random_timelike_fixture(Rng& rng, std::size_t samples = 201,
                                               double tau_begin = 0.0, double tau_end = 1.0) {
  const double a0 = rng.uniform(0.8, 2.0), a1 = rng.uniform(0.0, 0.5);
  const double psi0 = rng.uniform(0.0, 1.0), psi1 = rng.uniform(-0.5, 0.5);
  const double w = rng.uniform(1.0, 6.0), phase = rng.uniform(0.0, 6.0);
  Spinor4 amp = rng.components<SpinorTag, 4>(-1.0, 1.0);
  Spinor4 freq = rng.components<SpinorTag, 4>(0.5, 5.0);
  const double amp_norm = amp.norm();

  TimelikeFixture fx;
  fx.velocity = sample(tau_begin, tau_end, samples, [&](double t) {
    const double a = a0 + a1 * std::sin(w * t + phase);
    const double psi = psi0 + psi1 * t;
    const double th = 0.7 * t + phase, ph = 1.3 * t;
    return MinkVec4{{a * std::cosh(psi), a * std::sinh(psi) * std::sin(th) * std::cos(ph),
                     a * std::sinh(psi) * std::sin(th) * std::sin(ph), a * std::sinh(psi) * std::cos(th)}};
  });
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = fx.velocity.tau(k);
    const double cap = 0.3 * std::sqrt(minkowski_square(fx.velocity.samples[k]));
    Spinor4 s{};
    for (std::size_t i = 0; i < 4; ++i) s[i] = amp[i] * std::sin(freq[i] * t + phase);
    fx.spinor.push_back((amp_norm > 0.0 ? cap / amp_norm : 0.0) * s);
  }
  return fx;
}

}  // namespace finsler

#endif  // FINSLER_SAMPLING_HPP
