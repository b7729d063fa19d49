#ifndef FINSLER_INVARIANTS_HPP
#define FINSLER_INVARIANTS_HPP

// Seeded property suite covering the invariants of the core, mechanics and
// Lorentz-limit layers. Every check turns one trial into a normalized
// residual; a trial passes when residual <= tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "finsler/core.hpp"
#include "finsler/linalg.hpp"
#include "finsler/lorentz.hpp"
#include "finsler/mechanics.hpp"
#include "finsler/random.hpp"
#include "finsler/sampling.hpp"

namespace finsler {

class Tally {
 public:
  explicit Tally(double tolerance) : tolerance_(tolerance) {}

  /// Evaluates one trial; a thrown library error counts as a failure with
  /// infinite residual.
  template <class F>
  void trial(F&& residual_of) {
    double r;
    try {
      r = residual_of();
    } catch (const Error&) {
      r = std::numeric_limits<double>::infinity();
    }
    ++trials_;
    if (!(r <= tolerance_)) ++failures_;
    if (std::isnan(r) || r > worst_) worst_ = std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
  }

  std::size_t trials() const noexcept { return trials_; }
  std::size_t failures() const noexcept { return failures_; }
  double worst() const noexcept { return worst_; }

 private:
  double tolerance_;
  std::size_t trials_ = 0;
  std::size_t failures_ = 0;
  double worst_ = 0.0;
};

struct CheckOutcome {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_residual = 0.0;
  double tolerance = 0.0;

  bool passed() const noexcept { return failures == 0; }
};

struct CheckDef {
  std::string_view name;
  double tolerance;
  std::function<void(Rng&, std::size_t, const Kappa&, Tally&)> run;
};

namespace checks {

inline double cube_scale(const Vector9& x) {
  const double n = x.norm();
  return std::max(1.0, n * n * n);
}

inline void lambda_duality(Rng&, std::size_t, const Kappa&, Tally& t) {
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b)
      t.trial([&] {
        const GaussInt tr = trace(kLambdaDualExact[a] * kLambdaExact[b]);
        const GaussInt want{a == b ? 2 : 0, 0};
        return tr == want ? 0.0 : 0.5 * static_cast<double>(std::abs(tr.re - want.re) + std::abs(tr.im));
      });
}

inline void lambda_hermitian(Rng&, std::size_t, const Kappa&, Tally& t) {
  for (const auto& l : kLambdaExact) t.trial([&] { return adjoint(l) == l ? 0.0 : 1.0; });
}

inline void determinant_identity(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Vector9 x = random_vector(rng);
      const Complex d = det(vec_to_matrix(x));
      return std::max(std::abs(cubic_form(x) - d.real()), std::abs(d.imag())) / cube_scale(x);
    });
}

inline void metric_contraction(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  const auto dense = metric_coefficients().dense();
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Vector9 x = random_vector(rng);
      double s = 0.0;
      for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b)
          for (int c = 0; c < 9; ++c) s += dense[81 * a + 9 * b + c] * x[a] * x[b] * x[c];
      return std::abs(s - cubic_form(x)) / cube_scale(x);
    });
}

inline void group_invariance(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Transform9 l = group_action(random_unimodular3(rng));
      double worst = 0.0;
      for (int k = 0; k < 5; ++k) {
        const Vector9 x = random_vector(rng);
        worst = std::max(worst, std::abs(cubic_form(l * x) - cubic_form(x)) / cube_scale(x));
      }
      return worst;
    });
}

inline void action_equivalence(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const CMat3 d = random_unimodular3(rng);
      const Vector9 x = random_vector(rng);
      const Vector9 a = group_action(d) * x;
      const Vector9 b = conjugation_action(d, x);
      return max_abs_diff(a, b) / std::max({1.0, a.norm(), x.norm()});
    });
}

inline void homomorphism(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const CMat3 d1 = random_unimodular3(rng);
      const CMat3 d2 = random_unimodular3(rng);
      return max_abs_diff(group_action(d1 * d2), group_action(d1) * group_action(d2));
    });
}

inline void cubic_homogeneity(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Vector9 x = random_vector(rng);
      double worst = 0.0;
      for (double c : {-2.0, 0.5, 3.0})
        worst = std::max(worst, std::abs(cubic_form(c * x) - c * c * c * cubic_form(x)) /
                                    (std::abs(c * c * c) * cube_scale(x)));
      return worst;
    });
}

inline void momenta_gradient(Rng& rng, std::size_t n, const Kappa& kappa, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Vector9 x = random_nonisotropic(rng);
      const Momenta9 p = canonical_momenta(x, kappa);
      const double h = 1e-6 * std::max(1.0, x.norm());
      double worst = 0.0;
      for (std::size_t a = 0; a < 9; ++a) {
        Vector9 xp = x, xm = x;
        xp[a] += h;
        xm[a] -= h;
        const double fd = (lagrangian(xp, kappa) - lagrangian(xm, kappa)) / (2.0 * h);
        worst = std::max(worst, mixed_error(fd, p[a]));
      }
      return worst;
    });
}

inline void matrix_identity(Rng& rng, std::size_t n, const Kappa& kappa, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Vector9 x = random_nonisotropic(rng);
      const double pn = canonical_momenta(x, kappa).norm();
      return verify_matrix_identity(x, kappa) / (1.0 + x.norm() * x.norm() * pn);
    });
}

inline void zero_energy(Rng& rng, std::size_t n, const Kappa& kappa, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Vector9 x = random_nonisotropic(rng);
      return std::abs(canonical_energy(x, kappa)) / std::abs(lagrangian(x, kappa));
    });
}

inline void momentum_scale_invariance(Rng& rng, std::size_t n, const Kappa& kappa, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Vector9 x = random_nonisotropic(rng);
      const Momenta9 p = canonical_momenta(x, kappa);
      double worst = 0.0;
      for (double c : {0.5, 2.0, 7.0})
        worst = std::max(worst, max_abs_diff(canonical_momenta(c * x, kappa), p) / p.max_abs());
      return worst;
    });
}

inline void inversion_round_trip(Rng& rng, std::size_t n, const Kappa& kappa, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Vector9 v = random_unit_speed(rng);
      return max_abs_diff(invert_momenta(canonical_momenta(v, kappa), kappa), v) / std::max(1.0, v.max_abs());
    });
}

inline void momentum_constraint(Rng& rng, std::size_t n, const Kappa& kappa, Tally& t) {
  const double k = std::abs(kappa.two_thirds());
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Vector9 v = random_unit_speed(rng);
      return std::abs(momentum_constraint_residual(canonical_momenta(v, kappa), kappa)) / (k * k * k);
    });
}

inline void unit_determinant(Rng& rng, std::size_t n, const Kappa& kappa, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Vector9 v = random_unit_speed(rng);
      const Vector9 back = invert_momenta(canonical_momenta(v, kappa), kappa);
      return std::abs(det(vec_to_matrix(back)).real() - 1.0);
    });
}

inline void adjugate_vs_inverse(Rng& rng, std::size_t n, const Kappa& kappa, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Momenta9 p = canonical_momenta(random_unit_speed(rng), kappa);
      const Vector9 a = invert_momenta(p, kappa);
      const Vector9 b = invert_momenta_generic(p, kappa);
      return max_abs_diff(a, b) / a.max_abs();
    });
}

inline void inverse_hermiticity(Rng& rng, std::size_t n, const Kappa& kappa, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const HermMat3 inv = inverse_momentum_matrix(canonical_momenta(random_unit_speed(rng), kappa), kappa);
      return hermiticity_residual(inv) / std::max(1.0, max_abs(inv));
    });
}

/// Coordinate slots of the five bump perturbations.
inline constexpr std::array<std::size_t, 5> kStationaritySlots{0, 1, 3, 5, 8};

inline void stationarity(Rng& rng, std::size_t, const Kappa& kappa, Tally& t) {
  const std::vector<double> eps{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  for (std::size_t slot : kStationaritySlots)
    t.trial([&] {
      const Trajectory traj = Trajectory::make(random_vector(rng, 1.0), Vector9{{1, 0, 0, 0, 0, 0, 0, 0, 1}}, 1.0);
      const double a = rng.uniform(0.05, 0.35);
      const double b = rng.uniform(0.65, 0.95);
      const double height = rng.uniform(0.5, 1.5);
      const auto rep = action_stationarity_check(traj, bump_perturbation(slot, a, b, height), eps, kappa);
      return rep.slope ? std::abs(*rep.slope - 2.0) : std::numeric_limits<double>::infinity();
    });
}

inline void covariance(Rng& rng, std::size_t n, const Kappa& kappa, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const CMat3 d = random_unimodular3(rng);
      const Momenta9 p = canonical_momenta(random_unit_speed(rng), kappa);
      const Vector9 moved = group_action(d) * invert_momenta(p, kappa);
      const Vector9 direct = invert_momenta(momentum_action(d) * p, kappa);
      return max_abs_diff(direct, moved) / std::max(1.0, moved.max_abs());
    });
}

/// Single-slot momentum perturbations must leave the constraint surface
/// while the eight directions tangent to it stay on it to first order: the
/// residual is the fraction of the 17 probes that behave otherwise.
inline void constraint_codimension(Rng& rng, std::size_t n, const Kappa& kappa, Tally& t) {
  const double k = std::abs(kappa.two_thirds());
  const double admit = kMomentumAdmissionTol * k * k * k;
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Momenta9 p = canonical_momenta(random_unit_speed(rng), kappa);
      int bad = 0;
      const double off = 1e-3 * std::max(1.0, p.norm());
      for (std::size_t a = 0; a < 9; ++a) {
        Momenta9 q = p;
        q[a] += off;
        if (std::abs(momentum_constraint_residual(q, kappa)) <= admit) ++bad;
      }
      // Gradient of det N(P) is 2 (2 kappa/3)^2 xdot; tangent directions are its complement.
      const Vector9 v = invert_momenta(p, kappa);
      const double vn = v.norm();
      std::vector<Momenta9> basis;
      for (std::size_t a = 0; a < 9 && basis.size() < 8; ++a) {
        Momenta9 e = Momenta9::basis(a);
        e -= (v[a] / (vn * vn)) * Momenta9{v.c};
        for (const auto& b : basis) e -= dot(e, b) * b;
        const double en = e.norm();
        if (en > 1e-3) basis.push_back((1.0 / en) * e);
      }
      if (basis.size() != 8) return 1.0;
      // Along a tangent direction the first-order change vanishes; require it
      // to stay below 1e-3 of the change along the gradient.
      const double step = 1e-6 * std::max(1.0, p.norm());
      const double normal_change = 2.0 * k * k * vn * step;
      for (const auto& e : basis)
        if (!(std::abs(momentum_constraint_residual(p + step * e, kappa)) <= 1e-3 * normal_change)) ++bad;
      return bad / 17.0;
    });
}

inline void subgroup_closure(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const CMat2 a = random_unimodular2(rng);
      const CMat2 b = random_unimodular2(rng);
      const CMat2 ab{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
                     a[2] * b[1] + a[3] * b[3]};
      return max_abs(embed_sl2(a) * embed_sl2(b) - embed_sl2(ab));
    });
}

inline void block_structure(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Transform9 l = group_action(embed_sl2(random_unimodular2(rng)));
      double leak = 0.0;
      for (std::size_t a = 0; a < 9; ++a)
        for (std::size_t b = 0; b < 9; ++b)
          if (detail::index_group(a) != detail::index_group(b)) leak = std::max(leak, std::abs(l(a, b)));
      return leak;
    });
}

inline void lorentz_preservation(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] { return lorentz_check(block_split_check(random_unimodular2(rng)).vector_block); });
}

inline void scalar_invariance(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const Transform9 l = group_action(embed_sl2(random_unimodular2(rng)));
      double r = std::abs(l(8, 8) - 1.0);
      for (std::size_t a = 0; a < 8; ++a) r = std::max({r, std::abs(l(8, a)), std::abs(l(a, 8))});
      return r;
    });
}

inline void constraint_closure(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const MinkVec4 v = random_timelike(rng);
      const Spinor4 s = random_spinor(rng, v);
      const Vector9 x = assemble_velocity(v, s, solve_x8dot(v, s));
      const double g = minkowski_square(v);
      return std::abs(constraint_residual(x)) / std::max(1.0, g * std::sqrt(g));
    });
}

inline void action_equality(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const ReducedParams params(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0));
      const auto fx = random_timelike_fixture(rng);
      const ActionPair s = reduced_action_check(fx.velocity, fx.spinor, params);
      return std::abs(s.finsler - s.minkowski) / std::abs(s.minkowski);
    });
}

/// With kappa = -1.01 m c the actions must differ by at least 1e-3
/// relative; residual = 1e-3 / gap, tolerance 1.
inline void kappa_mismatch(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const ReducedParams params(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0));
      const auto fx = random_timelike_fixture(rng);
      const Kappa off(-1.01 * params.mass() * params.light_speed());
      const ActionPair s = reduced_action_check(fx.velocity, fx.spinor, params, off);
      return 1e-3 / (std::abs(s.finsler - s.minkowski) / std::abs(s.minkowski));
    });
}

inline void constraint_lorentz_invariance(Rng& rng, std::size_t n, const Kappa&, Tally& t) {
  for (std::size_t i = 0; i < n; ++i)
    t.trial([&] {
      const MinkVec4 v = random_timelike(rng);
      const Spinor4 s = random_spinor(rng, v);
      const Vector9 x = assemble_velocity(v, s, solve_x8dot(v, s));
      const Vector9 moved = group_action(embed_sl2(random_unimodular2(rng))) * x;
      return std::abs(constraint_residual(moved)) / cube_scale(moved);
    });
}

}  // namespace checks

/// All checks in report order with their default tolerances.
inline const std::vector<CheckDef>& invariant_suite() {
  static const std::vector<CheckDef> suite{
      {"lambda_duality", 0.0, checks::lambda_duality},
      {"lambda_hermitian", 0.0, checks::lambda_hermitian},
      {"determinant_identity", 1e-11, checks::determinant_identity},
      {"metric_contraction", 1e-12, checks::metric_contraction},
      {"group_invariance", 1e-9, checks::group_invariance},
      {"action_equivalence", 1e-11, checks::action_equivalence},
      {"homomorphism", 1e-10, checks::homomorphism},
      {"cubic_homogeneity", 1e-12, checks::cubic_homogeneity},
      {"momenta_gradient", 1e-6, checks::momenta_gradient},
      {"matrix_identity", 1e-10, checks::matrix_identity},
      {"zero_energy", 1e-10, checks::zero_energy},
      {"momentum_scale_invariance", 1e-12, checks::momentum_scale_invariance},
      {"inversion_round_trip", 1e-9, checks::inversion_round_trip},
      {"momentum_constraint", 1e-9, checks::momentum_constraint},
      {"unit_determinant", 1e-9, checks::unit_determinant},
      {"adjugate_vs_inverse", 1e-11, checks::adjugate_vs_inverse},
      {"inverse_hermiticity", 1e-12, checks::inverse_hermiticity},
      {"stationarity", 0.1, checks::stationarity},
      {"covariance", 1e-8, checks::covariance},
      {"constraint_codimension", 0.0, checks::constraint_codimension},
      {"subgroup_closure", 1e-13, checks::subgroup_closure},
      {"block_structure", 1e-12, checks::block_structure},
      {"lorentz_preservation", 1e-10, checks::lorentz_preservation},
      {"scalar_invariance", 1e-12, checks::scalar_invariance},
      {"constraint_closure", 1e-12, checks::constraint_closure},
      {"action_equality", 1e-10, checks::action_equality},
      {"kappa_mismatch", 1.0, checks::kappa_mismatch},
      {"constraint_lorentz_invariance", 1e-10, checks::constraint_lorentz_invariance},
  };
  return suite;
}

/// Runs every check. Check k draws from Rng(seed, k), so results do not
/// depend on evaluation order.
inline std::vector<CheckOutcome> run_invariant_suite(std::uint64_t seed, std::size_t trials, const Kappa& kappa,
                                                     const std::map<std::string, double>& tolerance_overrides = {}) {
  std::vector<CheckOutcome> out;
  const auto& suite = invariant_suite();
  for (std::size_t k = 0; k < suite.size(); ++k) {
    const auto& check = suite[k];
    const std::string name(check.name);
    const auto it = tolerance_overrides.find(name);
    const double tol = it == tolerance_overrides.end() ? check.tolerance : it->second;
    Rng rng(seed, static_cast<std::uint32_t>(k));
    Tally tally(tol);
    check.run(rng, trials, kappa, tally);
    out.push_back({name, tally.trials(), tally.failures(), tally.worst(), tol});
  }
  return out;
}

}  // namespace finsler

#endif  // FINSLER_INVARIANTS_HPP
