#ifndef FINSLER_RANDOM_HPP
#define FINSLER_RANDOM_HPP

// Reproducible random inputs for property checks.
//
// The generator is std::mt19937_64 (MT19937-64, fully specified by the C++
// standard) seeded through std::seed_seq{seed_lo32, seed_hi32, stream}.
// Doubles are drawn as (word >> 11) * 2^-53, which avoids the
// implementation-defined std::uniform_real_distribution.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "finsler/linalg.hpp"

namespace finsler {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint32_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32), stream};
    engine_.seed(seq);
  }

  /// Uniform on [0, 1).
  double unit() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * unit(); }

  template <class Tag, std::size_t N>
  Components<Tag, N> components(double lo, double hi) noexcept {
    Components<Tag, N> v{};
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

/// Random element of SL(3,C): entries uniform on the unit square
/// [0,1) x [0,1), rejected while |det| < 0.1, then divided by the principal
/// cube root of det.
inline CMat3 random_unimodular3(Rng& rng) {
  for (;;) {
    CMat3 d{};
    for (auto& z : d.e) {
      const double re = rng.unit();
      const double im = rng.unit();
      z = {re, im};
    }
    const Complex dt = det(d);
    if (std::abs(dt) < 0.1) continue;
    const Complex root = std::pow(dt, 1.0 / 3.0);
    return (1.0 / root) * d;
  }
}

/// Random element of SL(2,C), same recipe as random_unimodular3 with a
/// principal square root.
inline CMat2 random_unimodular2(Rng& rng) {
  for (;;) {
    CMat2 d{};
    for (auto& z : d) {
      const double re = rng.unit();
      const double im = rng.unit();
      z = {re, im};
    }
    const Complex dt = det(d);
    if (std::abs(dt) < 0.1) continue;
    const Complex root = std::sqrt(dt);
    for (auto& z : d) z /= root;
    return d;
  }
}

}  // namespace finsler

#endif  // FINSLER_RANDOM_HPP
