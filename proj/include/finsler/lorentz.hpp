#ifndef FINSLER_LORENTZ_HPP
#define FINSLER_LORENTZ_HPP

// Four-dimensional correspondence: SL(2,C) inside SL(3,C), the induced
// Lorentz/spinor/scalar block split, the velocity constraint that ties the
// Finsler action to the relativistic one, and the kappa = -m c check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <vector>

#include "finsler/core.hpp"
#include "finsler/errors.hpp"
#include "finsler/linalg.hpp"
#include "finsler/mechanics.hpp"
#include "finsler/numeric.hpp"

namespace finsler {

struct MinkowskiTag {};
struct SpinorTag {};

/// X^alpha, alpha = 0 ... 3.
using MinkVec4 = Components<MinkowskiTag, 4>;
/// Components 4 ... 7 of a 9-vector.
using Spinor4 = Components<SpinorTag, 4>;

using Block4 = RealMatrix<4>;

inline constexpr double kBlockLeakageTol = 1e-12;

/// diag(1, -1, -1, -1).
inline constexpr Block4 kMinkowskiMetric = [] {
  Block4 g{};
  g(0, 0) = 1.0;
  g(1, 1) = -1.0;
  g(2, 2) = -1.0;
  g(3, 3) = -1.0;
  return g;
}();

/// g_ab v^a v^b.
inline double minkowski_square(const MinkVec4& v) noexcept {
  return v[0] * v[0] - v[1] * v[1] - v[2] * v[2] - v[3] * v[3];
}

/// Mass and speed of light of the relativistic particle; kappa = -m c.
class ReducedParams {
 public:
  ReducedParams(double mass, double light_speed) : m_(mass), c_(light_speed) {
    if (!(mass > 0.0) || !(light_speed > 0.0) || !std::isfinite(mass) || !std::isfinite(light_speed))
      throw Error(Errc::InvalidArgument, "mass and speed of light must be positive");
  }

  double mass() const noexcept { return m_; }
  double light_speed() const noexcept { return c_; }
  Kappa kappa() const { return Kappa(-m_ * c_); }

 private:
  double m_;
  double c_;
};

// ---------------------------------------------------------------------------
// SL(2,C) embedding and block structure
// ---------------------------------------------------------------------------

/// diag-block matrix with D2 upper left and 1 in the (3,3) corner.
inline CMat3 embed_sl2(const CMat2& d2) {
  const double dev = std::abs(det(d2) - 1.0);
  if (!(dev <= kUnimodularTol)) {
    std::ostringstream os;
    os.precision(17);
    os << "matrix is not unimodular: |det - 1| = " << dev;
    throw Error(Errc::NotUnimodular, os.str()).with_value(dev);
  }
  CMat3 d{};
  d(0, 0) = d2[0];
  d(0, 1) = d2[1];
  d(1, 0) = d2[2];
  d(1, 1) = d2[3];
  d(2, 2) = 1.0;
  return d;
}

struct BlockSplit {
  Block4 vector_block;  // indices 0..3
  Block4 spinor_block;  // indices 4..7
  double scalar = 0.0;  // L^8_8
};

namespace detail {
inline int index_group(std::size_t a) noexcept { return a < 4 ? 0 : (a < 8 ? 1 : 2); }
}  // namespace detail

/// Splits L(embed_sl2(D2)) into its three diagonal blocks; throws
/// BlockLeakage if any cross-block entry exceeds 1e-12 or L^8_8 != 1.
inline BlockSplit block_split_check(const CMat2& d2) {
  const Transform9 l = group_action(embed_sl2(d2));
  double leak = 0.0;
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b)
      if (detail::index_group(a) != detail::index_group(b)) leak = std::max(leak, std::abs(l(a, b)));
  leak = std::max(leak, std::abs(l(8, 8) - 1.0));
  if (!(leak <= kBlockLeakageTol)) {
    std::ostringstream os;
    os << "cross-block leakage " << leak;
    throw Error(Errc::BlockLeakage, os.str()).with_value(leak);
  }
  BlockSplit split;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      split.vector_block(a, b) = l(a, b);
      split.spinor_block(a, b) = l(4 + a, 4 + b);
    }
  split.scalar = l(8, 8);
  return split;
}

/// Max-entry norm of B^T g B - g.
inline double lorentz_check(const Block4& block) noexcept {
  return max_abs_diff(transpose(block) * kMinkowskiMetric * block, kMinkowskiMetric);
}

// ---------------------------------------------------------------------------
// Velocity constraint
// ---------------------------------------------------------------------------

inline Vector9 assemble_velocity(const MinkVec4& x03, const Spinor4& x47, double x8) noexcept {
  return Vector9{{x03[0], x03[1], x03[2], x03[3], x47[0], x47[1], x47[2], x47[3], x8}};
}

inline MinkVec4 vector_part(const Vector9& x) noexcept { return MinkVec4{{x[0], x[1], x[2], x[3]}}; }
inline Spinor4 spinor_part(const Vector9& x) noexcept { return Spinor4{{x[4], x[5], x[6], x[7]}}; }

/// Terms of the cubic form that do not contain Xdot^8.
inline double spinor_coupling(const MinkVec4& v, const Spinor4& s) noexcept {
  const double s0 = s[0], s1 = s[1], s2 = s[2], s3 = s[3];
  return -v[0] * (s0 * s0 + s1 * s1 + s2 * s2 + s3 * s3) + 2.0 * v[1] * (s0 * s2 + s1 * s3) +
         2.0 * v[2] * (s1 * s2 - s0 * s3) + v[3] * (s0 * s0 + s1 * s1 - s2 * s2 - s3 * s3);
}

/// Cubic form regrouped as g(v,v) Xdot^8 + spinor coupling.
inline double constraint_lhs(const Vector9& xdot) noexcept {
  return minkowski_square(vector_part(xdot)) * xdot[8] +
         spinor_coupling(vector_part(xdot), spinor_part(xdot));
}

inline double require_timelike(const MinkVec4& v) {
  const double g = minkowski_square(v);
  if (!(g > 0.0)) {
    std::ostringstream os;
    os << "4-velocity is not timelike: g(v,v) = " << g;
    throw Error(Errc::NonTimelike, os.str()).with_value(g);
  }
  return g;
}

/// LHS - (g_ab v^a v^b)^(3/2) of the velocity constraint.
inline double constraint_residual(const Vector9& xdot) {
  const double g = require_timelike(vector_part(xdot));
  return constraint_lhs(xdot) - g * std::sqrt(g);
}

/// The unique Xdot^8 that satisfies the constraint.
inline double solve_x8dot(const MinkVec4& x03, const Spinor4& x47) {
  const double g = require_timelike(x03);
  return (g * std::sqrt(g) - spinor_coupling(x03, x47)) / g;
}

// ---------------------------------------------------------------------------
// Reduced action
// ---------------------------------------------------------------------------

/// -m c sqrt(g(v,v)).
inline double minkowski_lagrangian(const MinkVec4& v, const ReducedParams& params) {
  return -params.mass() * params.light_speed() * std::sqrt(require_timelike(v));
}

struct ActionPair {
  double finsler = 0.0;
  double minkowski = 0.0;
};

/// Both actions along a sampled 4-velocity with sampled spinor velocities;
/// Xdot^8 is solved from the constraint at every sample. The Finsler action
/// uses `kappa` when given, otherwise -m c.
inline ActionPair reduced_action_check(const SampledCurve<MinkVec4>& velocity4,
                                       const std::vector<Spinor4>& spinor, const ReducedParams& params,
                                       std::optional<Kappa> kappa = std::nullopt) {
  const std::size_t n = velocity4.size();
  if (spinor.size() != n) throw Error(Errc::InvalidArgument, "spinor samples do not match the 4-velocity grid");
  if (n < 2) throw Error(Errc::DegeneratePath, "at least 2 samples are required");
  const Kappa k = kappa.value_or(params.kappa());
  std::vector<double> lf(n), lm(n);
  for (std::size_t i = 0; i < n; ++i) {
    const MinkVec4& v = velocity4.samples[i];
    const Vector9 xdot = assemble_velocity(v, spinor[i], solve_x8dot(v, spinor[i]));
    lf[i] = lagrangian(xdot, k);
    lm[i] = minkowski_lagrangian(v, params);
  }
  const double h = velocity4.step();
  return {trapezoid(lf, h), trapezoid(lm, h)};
}

}  // namespace finsler

#endif  // FINSLER_LORENTZ_HPP
