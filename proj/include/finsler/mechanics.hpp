#ifndef FINSLER_MECHANICS_HPP
#define FINSLER_MECHANICS_HPP

// Free-particle dynamics on the cubic Finsler space: Lagrangian, canonical
// momenta and their inversion, the straight-line general solution, arc
// length, reparametrization and a numerical check that straight lines make
// the discretized action stationary.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "finsler/core.hpp"
#include "finsler/errors.hpp"
#include "finsler/linalg.hpp"
#include "finsler/numeric.hpp"

namespace finsler {

struct MomentumTag {};

/// Canonical momenta P_A, A = 0 ... 8.
using Momenta9 = Components<MomentumTag, 9>;

inline constexpr double kIsotropyTol = 1e-9;
inline constexpr double kUnitSpeedTol = 1e-9;
inline constexpr double kMomentumAdmissionTol = 1e-8;
inline constexpr double kSingularTol = 1e-12;

/// Nonzero particle constant; -m c in the relativistic identification.
class Kappa {
 public:
  explicit Kappa(double value) : value_(value) {
    if (value == 0.0 || !std::isfinite(value))
      throw Error(Errc::InvalidArgument, "kappa must be finite and nonzero");
  }

  double value() const noexcept { return value_; }

  /// 2 kappa / 3, the scale of the momentum matrix.
  double two_thirds() const noexcept { return 2.0 * value_ / 3.0; }

 private:
  double value_;
};

inline Kappa default_kappa() { return Kappa(-1.0); }

// ---------------------------------------------------------------------------
// Lagrangian and momenta
// ---------------------------------------------------------------------------

/// Returns the cubic form of xdot, throwing IsotropicVelocity unless
/// |F| >= 1e-9 ||xdot||^3 and F != 0.
inline double require_nonisotropic(const Vector9& xdot) {
  const double f = cubic_form(xdot);
  const double n = xdot.norm();
  if (!(f != 0.0 && std::abs(f) >= kIsotropyTol * n * n * n)) {
    std::ostringstream os;
    os << "velocity is isotropic: cubic form " << f << " at norm " << n;
    throw Error(Errc::IsotropicVelocity, os.str()).with_value(f);
  }
  return f;
}

inline double lagrangian(const Vector9& xdot, const Kappa& kappa) {
  return kappa.value() * signed_cbrt(require_nonisotropic(xdot));
}

/// P_A = dL/dXdot^A in closed form.
inline Momenta9 canonical_momenta(const Vector9& xdot, const Kappa& kappa) {
  const double f = require_nonisotropic(xdot);
  const double x0 = xdot[0], x1 = xdot[1], x2 = xdot[2], x3 = xdot[3], x4 = xdot[4];
  const double x5 = xdot[5], x6 = xdot[6], x7 = xdot[7], x8 = xdot[8];
  const double c = kappa.value() / 3.0 / two_thirds_power(f);
  Momenta9 p{};
  p[0] = c * (2.0 * x0 * x8 - x4 * x4 - x5 * x5 - x6 * x6 - x7 * x7);
  p[1] = c * 2.0 * (-x1 * x8 + x4 * x6 + x5 * x7);
  p[2] = c * 2.0 * (-x2 * x8 + x5 * x6 - x4 * x7);
  p[3] = c * (-2.0 * x3 * x8 + x4 * x4 + x5 * x5 - x6 * x6 - x7 * x7);
  p[4] = c * 2.0 * (-x0 * x4 + x1 * x6 - x2 * x7 + x3 * x4);
  p[5] = c * 2.0 * (-x0 * x5 + x1 * x7 + x2 * x6 + x3 * x5);
  p[6] = c * 2.0 * (-x0 * x6 + x1 * x4 + x2 * x5 - x3 * x6);
  p[7] = c * 2.0 * (-x0 * x7 + x1 * x5 - x2 * x4 - x3 * x7);
  p[8] = c * (x0 * x0 - x1 * x1 - x2 * x2 - x3 * x3);
  return p;
}

/// P_A Xdot^A - L; vanishes identically because L is degree-1 homogeneous.
inline double canonical_energy(const Vector9& xdot, const Kappa& kappa) {
  return dot(canonical_momenta(xdot, kappa), xdot) - lagrangian(xdot, kappa);
}

/// N(P) = P_A lambda^A. The (3,3) corner is 2 P_8.
inline HermMat3 momenta_matrix(const Momenta9& p) noexcept {
  HermMat3 n{};
  n(0, 0) = {p[0] + p[3], 0.0};
  n(0, 1) = {p[1], -p[2]};
  n(0, 2) = {p[4], -p[5]};
  n(1, 0) = {p[1], p[2]};
  n(1, 1) = {p[0] - p[3], 0.0};
  n(1, 2) = {p[6], -p[7]};
  n(2, 0) = {p[4], p[5]};
  n(2, 1) = {p[6], p[7]};
  n(2, 2) = {2.0 * p[8], 0.0};
  return n;
}

/// Max-entry norm of M(xdot) N(P(xdot)) - (2 kappa / 3) cbrt(F(xdot)) I.
inline double verify_matrix_identity(const Vector9& xdot, const Kappa& kappa) {
  const double f = require_nonisotropic(xdot);
  const CMat3 lhs = vec_to_matrix(xdot) * momenta_matrix(canonical_momenta(xdot, kappa));
  const CMat3 rhs = Complex(kappa.two_thirds() * signed_cbrt(f)) * CMat3::identity();
  return max_abs(lhs - rhs);
}

// ---------------------------------------------------------------------------
// Momentum -> velocity inversion
// ---------------------------------------------------------------------------

/// det N(P) - (2 kappa / 3)^3. The imaginary part of det N(P) must stay
/// below 1e-12 * max(1, ||P||^3).
inline double momentum_constraint_residual(const Momenta9& p, const Kappa& kappa) {
  const Complex d = det(momenta_matrix(p));
  const double n = p.norm();
  if (!(std::abs(d.imag()) <= 1e-12 * std::max(1.0, n * n * n)))
    throw Error(Errc::NonRealEntry, "momentum matrix determinant is not real").with_value(d.imag());
  const double k = kappa.two_thirds();
  return d.real() - k * k * k;
}

namespace detail {

inline void require_admissible_momenta(const Momenta9& p, const Kappa& kappa) {
  if (!p.all_finite()) throw Error(Errc::InvalidArgument, "momenta must be finite");
  const double r = momentum_constraint_residual(p, kappa);
  const double k = std::abs(kappa.two_thirds());
  if (!(std::abs(r) <= kMomentumAdmissionTol * k * k * k)) {
    std::ostringstream os;
    os.precision(17);
    os << "inconsistent momenta: residual " << r;
    throw Error(Errc::InconsistentMomenta, os.str()).with_value(r);
  }
  const double n = p.norm();
  const double d = std::abs(det(momenta_matrix(p)));
  if (d < kSingularTol * n * n * n)
    throw Error(Errc::SingularMomentumMatrix, "momentum matrix is singular").with_value(d);
}

/// Velocity components from the velocity matrix V = M(xdot):
/// xdot^0 = (V11 + V22)/2, xdot^2 = i (V12 - V21)/2, xdot^8 = V33, ...
inline Vector9 velocity_from_matrix(const CMat3& v) noexcept {
  const Complex i{0.0, 1.0};
  Vector9 x{};
  x[0] = 0.5 * (v(0, 0) + v(1, 1)).real();
  x[1] = 0.5 * (v(0, 1) + v(1, 0)).real();
  x[2] = 0.5 * (i * (v(0, 1) - v(1, 0))).real();
  x[3] = 0.5 * (v(0, 0) - v(1, 1)).real();
  x[4] = 0.5 * (v(0, 2) + v(2, 0)).real();
  x[5] = 0.5 * (i * (v(0, 2) - v(2, 0))).real();
  x[6] = 0.5 * (v(1, 2) + v(2, 1)).real();
  x[7] = 0.5 * (i * (v(1, 2) - v(2, 1))).real();
  x[8] = v(2, 2).real();
  return x;
}

}  // namespace detail

/// The Hermitian matrix ||P_ab^-1||: cofactors of N(P) divided by
/// (2 kappa / 3)^3, which equals det N(P) on the constraint surface.
inline HermMat3 inverse_momentum_matrix(const Momenta9& p, const Kappa& kappa) {
  const double k = kappa.two_thirds();
  return Complex(1.0 / (k * k * k)) * adjugate(momenta_matrix(p));
}

/// Initial velocities from initial momenta through the 2x2 cofactor
/// formulas. The velocity matrix is (2 kappa/3) * ||P_ab^-1||, computed as
/// cofactor / (2 kappa/3)^2.
inline Vector9 invert_momenta(const Momenta9& p, const Kappa& kappa) {
  detail::require_admissible_momenta(p, kappa);
  const double k = kappa.two_thirds();
  const CMat3 cof = adjugate(momenta_matrix(p));
  CMat3 v{};
  for (std::size_t i = 0; i < 9; ++i) v.e[i] = cof.e[i] / (k * k);
  return detail::velocity_from_matrix(v);
}

/// Same result as invert_momenta through a generic elimination inverse:
/// M(xdot) = (2 kappa / 3) N(P)^-1.
inline Vector9 invert_momenta_generic(const Momenta9& p, const Kappa& kappa) {
  detail::require_admissible_momenta(p, kappa);
  const CMat3 v = Complex(kappa.two_thirds()) * gauss_jordan_inverse(momenta_matrix(p));
  return detail::velocity_from_matrix(v);
}

/// Momenta transform contragrediently to velocities: P' = L(D)^-T P, with
/// L(D)^-1 = L(D^-1).
inline Transform9 momentum_action(const CMat3& d) {
  require_unimodular(d);
  return transpose(group_action(gauss_jordan_inverse(d)));
}

// ---------------------------------------------------------------------------
// General solution
// ---------------------------------------------------------------------------

inline void require_unit_speed(const Vector9& v0) {
  const double d = det(vec_to_matrix(v0)).real();
  if (!(std::abs(d - 1.0) <= kUnitSpeedTol)) {
    std::ostringstream os;
    os.precision(17);
    os << "initial velocity is not unit speed: det " << d;
    throw Error(Errc::NotUnitSpeed, os.str()).with_value(d);
  }
}

/// X(s) = x0 + s v0 for a unit-speed v0.
inline Vector9 general_solution(const Vector9& x0, const Vector9& v0, double s) {
  require_unit_speed(v0);
  return x0 + s * v0;
}

/// Straight world line in the arc-length gauge, s in [0, s_end]; s_end may
/// be negative.
class Trajectory {
 public:
  static Trajectory make(const Vector9& x0, const Vector9& v0, double s_end) {
    require_unit_speed(v0);
    return Trajectory(x0, v0, s_end);
  }

  /// 9 free coordinates plus 9 momenta tied by the determinant constraint.
  static Trajectory from_momenta(const Vector9& x0, const Momenta9& p, const Kappa& kappa,
                                 double s_end) {
    return make(x0, invert_momenta(p, kappa), s_end);
  }

  const Vector9& x0() const noexcept { return x0_; }
  const Vector9& v0() const noexcept { return v0_; }
  double s_end() const noexcept { return s_end_; }

  Vector9 at(double s) const noexcept { return x0_ + s * v0_; }

 private:
  Trajectory(const Vector9& x0, const Vector9& v0, double s_end) : x0_(x0), v0_(v0), s_end_(s_end) {}

  Vector9 x0_;
  Vector9 v0_;
  double s_end_;
};

// ---------------------------------------------------------------------------
// Sampled curves
// ---------------------------------------------------------------------------

/// Values on the uniform grid tau_k = tau_begin + k (tau_end - tau_begin)/(n-1).
template <class Point>
struct SampledCurve {
  double tau_begin = 0.0;
  double tau_end = 1.0;
  std::vector<Point> samples;

  std::size_t size() const noexcept { return samples.size(); }

  double step() const noexcept {
    return samples.size() < 2 ? 0.0 : (tau_end - tau_begin) / static_cast<double>(samples.size() - 1);
  }

  double tau(std::size_t k) const noexcept {
    const std::size_t n = samples.size();
    if (n < 2) return tau_begin;
    return tau_begin + (tau_end - tau_begin) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
};

/// Sample f on the uniform grid of [tau_begin, tau_end].
template <class F>
auto sample(double tau_begin, double tau_end, std::size_t n, F&& f) {
  using Point = std::decay_t<decltype(f(tau_begin))>;
  SampledCurve<Point> curve{tau_begin, tau_end, {}};
  curve.samples.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    curve.samples.push_back(f(n < 2 ? tau_begin
                                    : tau_begin + (tau_end - tau_begin) * static_cast<double>(k) /
                                                      static_cast<double>(n - 1)));
  }
  return curve;
}

/// Central differences inside, second-order one-sided differences at the ends.
template <class Point>
std::vector<Point> finite_difference_velocities(const SampledCurve<Point>& curve) {
  const std::size_t n = curve.size();
  if (n < 3) throw Error(Errc::DegeneratePath, "at least 3 samples are required");
  const double h = curve.step();
  const auto& x = curve.samples;
  std::vector<Point> v(n);
  v[0] = (1.0 / (2.0 * h)) * (-3.0 * x[0] + 4.0 * x[1] - x[2]);
  for (std::size_t k = 1; k + 1 < n; ++k) v[k] = (1.0 / (2.0 * h)) * (x[k + 1] - x[k - 1]);
  v[n - 1] = (1.0 / (2.0 * h)) * (3.0 * x[n - 1] - 4.0 * x[n - 2] + x[n - 3]);
  return v;
}

/// Cumulative Finsler arc length s(tau_k), s(tau_begin) = 0, by the
/// trapezoid rule on finite-difference velocities.
inline std::vector<double> arc_length(const SampledCurve<Vector9>& path) {
  const auto v = finite_difference_velocities(path);
  const double h = path.step();
  std::vector<double> s(v.size(), 0.0);
  double prev = signed_cbrt(require_nonisotropic(v[0]));
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double cur = signed_cbrt(require_nonisotropic(v[k]));
    s[k] = s[k - 1] + 0.5 * h * (prev + cur);
    prev = cur;
  }
  return s;
}

/// Monotone map s(tau) on [tau_begin, tau_end] with s(tau_begin) = 0. When
/// `derivative` is empty, monotonicity is judged from the sampled values.
struct Reparametrization {
  double tau_begin = 0.0;
  double tau_end = 1.0;
  std::function<double(double)> s;
  std::function<double(double)> derivative;
};

/// Samples X(s(tau_k)) = x0 + s(tau_k) v0 on a uniform tau grid.
inline SampledCurve<Vector9> reparametrize(const Trajectory& traj, const Reparametrization& rep,
                                           std::size_t samples = 201) {
  if (!rep.s) throw Error(Errc::InvalidArgument, "reparametrization has no map");
  if (samples < 2) throw Error(Errc::DegeneratePath, "at least 2 samples are required");
  if (rep.s(rep.tau_begin) != 0.0)
    throw Error(Errc::InvalidArgument, "reparametrization must start at s = 0");

  auto curve = sample(rep.tau_begin, rep.tau_end, samples, [&](double) { return Vector9{}; });
  std::vector<double> s(samples);
  for (std::size_t k = 0; k < samples; ++k) s[k] = rep.s(curve.tau(k));

  auto fail = [](std::size_t k) {
    std::ostringstream os;
    os << "reparametrization is not strictly monotone near sample " << k;
    throw Error(Errc::NonMonotone, os.str());
  };
  int sign = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double slope = rep.derivative ? rep.derivative(curve.tau(k))
                                        : (k + 1 < samples ? s[k + 1] - s[k] : s[k] - s[k - 1]);
    if (!(slope != 0.0) || !std::isfinite(slope)) fail(k);
    const int sg = slope > 0.0 ? 1 : -1;
    if (sign != 0 && sg != sign) fail(k);
    sign = sg;
  }
  for (std::size_t k = 0; k < samples; ++k) curve.samples[k] = traj.at(s[k]);
  return curve;
}

// ---------------------------------------------------------------------------
// Action stationarity
// ---------------------------------------------------------------------------

/// kappa * integral of cbrt(F(xdot)) dtau, trapezoid on finite-difference
/// velocities.
inline double discrete_action(const SampledCurve<Vector9>& curve, const Kappa& kappa) {
  const auto v = finite_difference_velocities(curve);
  std::vector<double> density(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) density[k] = lagrangian(v[k], kappa);
  return trapezoid(density, curve.step());
}

/// Variation field eta(tau); must vanish at both ends of the curve.
using Perturbation = std::function<Vector9(double)>;

/// height * sin^2(pi (tau - a)/(b - a)) in one coordinate slot on [a, b],
/// zero elsewhere.
inline Perturbation bump_perturbation(std::size_t slot, double a, double b, double height) {
  return [=](double tau) {
    Vector9 eta{};
    if (tau > a && tau < b) {
      const double w = std::sin(std::numbers::pi * (tau - a) / (b - a));
      eta[slot] = height * w * w;
    }
    return eta;
  };
}

struct StationarityReport {
  double action_at_zero = 0.0;
  std::vector<double> amplitudes;
  std::vector<double> action_changes;  // |S(eps) - S(0)|
  /// Least-squares slope of log|S(eps) - S(0)| against log eps; empty when
  /// fewer than two amplitudes change the action.
  std::optional<double> slope;
};

/// Discretized action of traj + eps * eta for each eps on a uniform grid
/// over [0, s_end]. A slope near 2 means the first variation vanishes.
inline StationarityReport action_stationarity_check(const Trajectory& traj, const Perturbation& eta,
                                                    const std::vector<double>& amplitudes,
                                                    const Kappa& kappa, std::size_t samples = 201) {
  if (samples < 200) throw Error(Errc::InvalidArgument, "action needs at least 200 samples");
  const double t0 = 0.0, t1 = traj.s_end();
  if (eta(t0).max_abs() > 1e-14 || eta(t1).max_abs() > 1e-14)
    throw Error(Errc::InvalidArgument, "perturbation must vanish at the end points");

  StationarityReport rep;
  const auto base = sample(t0, t1, samples, [&](double t) { return traj.at(t); });
  rep.action_at_zero = discrete_action(base, kappa);

  std::vector<double> lx, ly;
  for (double eps : amplitudes) {
    auto curve = base;
    for (std::size_t k = 0; k < samples; ++k) curve.samples[k] += eps * eta(curve.tau(k));
    const double change = std::abs(discrete_action(curve, kappa) - rep.action_at_zero);
    rep.amplitudes.push_back(eps);
    rep.action_changes.push_back(change);
    if (change > 0.0 && eps > 0.0) {
      lx.push_back(std::log(eps));
      ly.push_back(std::log(change));
    }
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx > 0.0) rep.slope = sxy / sxx;
  }
  return rep;
}

}  // namespace finsler

#endif  // FINSLER_MECHANICS_HPP
