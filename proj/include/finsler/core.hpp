#ifndef FINSLER_CORE_HPP
#define FINSLER_CORE_HPP

// Background geometry of the 9-dimensional flat Finsler space: the cubic
// metric, the lambda-matrix basis, the vector <-> Hermitian matrix
// isomorphism and the SL(3,C) action that preserves the metric.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <sstream>

#include "finsler/errors.hpp"
#include "finsler/linalg.hpp"

namespace finsler {

struct PointTag {};

/// Point or velocity in the 9-space, components X^0 ... X^8.
using Vector9 = Components<PointTag, 9>;

/// Real 9x9 matrix L(D)^A_B induced by a unimodular D.
using Transform9 = RealMatrix<9>;

inline constexpr double kUnimodularTol = 1e-9;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kNonRealTol = 1e-12;

/// The homogeneous cubic form G_ABC X^A X^B X^C, written out term by term.
inline double cubic_form(const Vector9& x) noexcept {
  const double x0 = x[0], x1 = x[1], x2 = x[2], x3 = x[3], x4 = x[4];
  const double x5 = x[5], x6 = x[6], x7 = x[7], x8 = x[8];
  return (x0 * x0 - x1 * x1 - x2 * x2 - x3 * x3) * x8 -
         x0 * (x4 * x4 + x5 * x5 + x6 * x6 + x7 * x7) +
         2.0 * x1 * (x4 * x6 + x5 * x7) + 2.0 * x2 * (x5 * x6 - x4 * x7) +
         x3 * (x4 * x4 + x5 * x5 - x6 * x6 - x7 * x7);
}

// ---------------------------------------------------------------------------
// Lambda basis
// ---------------------------------------------------------------------------

using IntMat3 = Mat3<GaussInt>;

namespace detail {

constexpr IntMat3 int_mat(std::array<GaussInt, 9> e) { return IntMat3{e}; }

inline constexpr GaussInt O{0, 0};
inline constexpr GaussInt P1{1, 0};
inline constexpr GaussInt M1{-1, 0};
inline constexpr GaussInt PI{0, 1};
inline constexpr GaussInt MI{0, -1};

}  // namespace detail

/// lambda_0 ... lambda_8 with exact Gaussian-integer entries. lambda_1..7
/// are the Gell-Mann matrices; lambda_0 = diag(1,1,0), lambda_8 = diag(0,0,1).
inline constexpr std::array<IntMat3, 9> kLambdaExact = [] {
  using namespace detail;
  return std::array<IntMat3, 9>{
      int_mat({P1, O, O, O, P1, O, O, O, O}),
      int_mat({O, P1, O, P1, O, O, O, O, O}),
      int_mat({O, MI, O, PI, O, O, O, O, O}),
      int_mat({P1, O, O, O, M1, O, O, O, O}),
      int_mat({O, O, P1, O, O, O, P1, O, O}),
      int_mat({O, O, MI, O, O, O, PI, O, O}),
      int_mat({O, O, O, O, O, P1, O, P1, O}),
      int_mat({O, O, O, O, O, MI, O, PI, O}),
      int_mat({O, O, O, O, O, O, O, O, P1}),
  };
}();

/// Dual family: lambda^A = lambda_A for A < 8, lambda^8 = 2 lambda_8.
inline constexpr std::array<IntMat3, 9> kLambdaDualExact = [] {
  auto dual = kLambdaExact;
  dual[8](2, 2) = GaussInt{2, 0};
  return dual;
}();

namespace detail {

inline std::array<CMat3, 9> to_complex_family(const std::array<IntMat3, 9>& family) {
  std::array<CMat3, 9> out{};
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t i = 0; i < 9; ++i) out[a].e[i] = to_complex(family[a].e[i]);
  return out;
}

}  // namespace detail

struct LambdaBasis {
  std::array<CMat3, 9> lambda;
  std::array<CMat3, 9> dual;
};

inline const LambdaBasis& lambda_basis() {
  static const LambdaBasis basis{detail::to_complex_family(kLambdaExact),
                                 detail::to_complex_family(kLambdaDualExact)};
  return basis;
}

// ---------------------------------------------------------------------------
// Symmetric metric tensor
// ---------------------------------------------------------------------------

/// Fully symmetric G_ABC in canonical sparse form: keys are non-decreasing
/// index triples, zero coefficients are never stored.
class CubicMetric {
 public:
  using Triple = std::array<int, 3>;

  static Triple canonical(int a, int b, int c) noexcept {
    Triple t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
  }

  /// Number of distinct orderings of a triple (1, 3 or 6).
  static int multiplicity(const Triple& t) noexcept {
    if (t[0] == t[1] && t[1] == t[2]) return 1;
    if (t[0] == t[1] || t[1] == t[2]) return 3;
    return 6;
  }

  void set(int a, int b, int c, double value) {
    const Triple t = canonical(a, b, c);
    if (value == 0.0)
      coeffs_.erase(t);
    else
      coeffs_[t] = value;
  }

  double at(int a, int b, int c) const {
    const auto it = coeffs_.find(canonical(a, b, c));
    return it == coeffs_.end() ? 0.0 : it->second;
  }

  bool contains(int a, int b, int c) const { return coeffs_.count(canonical(a, b, c)) != 0; }

  const std::map<Triple, double>& entries() const noexcept { return coeffs_; }

  /// G_ABC X^A X^B X^C summed over stored monomials times their multiplicity.
  double contract(const Vector9& x) const noexcept {
    double s = 0.0;
    for (const auto& [t, g] : coeffs_) s += multiplicity(t) * g * x[t[0]] * x[t[1]] * x[t[2]];
    return s;
  }

  /// Dense 9x9x9 expansion, index [81 a + 9 b + c].
  std::array<double, 729> dense() const {
    std::array<double, 729> d{};
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b)
        for (int c = 0; c < 9; ++c) d[81 * a + 9 * b + c] = at(a, b, c);
    return d;
  }

 private:
  std::map<Triple, double> coeffs_;
};

/// One monomial of the expanded cubic form: coefficient * X^i X^j X^k.
struct Monomial {
  double coefficient;
  int i, j, k;
};

/// The sixteen monomials of the expanded cubic form.
inline constexpr std::array<Monomial, 16> kCubicMonomials{{
    {1.0, 0, 0, 8},
    {-1.0, 1, 1, 8},
    {-1.0, 2, 2, 8},
    {-1.0, 3, 3, 8},
    {-1.0, 0, 4, 4},
    {-1.0, 0, 5, 5},
    {-1.0, 0, 6, 6},
    {-1.0, 0, 7, 7},
    {2.0, 1, 4, 6},
    {2.0, 1, 5, 7},
    {2.0, 2, 5, 6},
    {-2.0, 2, 4, 7},
    {1.0, 3, 4, 4},
    {1.0, 3, 5, 5},
    {-1.0, 3, 6, 6},
    {-1.0, 3, 7, 7},
}};

/// Symmetric coefficients: each monomial coefficient divided by the number
/// of distinct permutations of its index triple.
inline CubicMetric metric_coefficients() {
  CubicMetric g;
  auto add = [&g](const Monomial& m) {
    const auto t = CubicMetric::canonical(m.i, m.j, m.k);
    g.set(m.i, m.j, m.k, g.at(m.i, m.j, m.k) + m.coefficient / CubicMetric::multiplicity(t));
  };
  for (const auto& m : kCubicMonomials) add(m);
  return g;
}

// ---------------------------------------------------------------------------
// Vector <-> matrix isomorphism
// ---------------------------------------------------------------------------

/// M(X) = X^A lambda_A.
inline HermMat3 vec_to_matrix(const Vector9& x) noexcept {
  HermMat3 m{};
  m(0, 0) = {x[0] + x[3], 0.0};
  m(0, 1) = {x[1], -x[2]};
  m(0, 2) = {x[4], -x[5]};
  m(1, 0) = {x[1], x[2]};
  m(1, 1) = {x[0] - x[3], 0.0};
  m(1, 2) = {x[6], -x[7]};
  m(2, 0) = {x[4], x[5]};
  m(2, 1) = {x[6], x[7]};
  m(2, 2) = {x[8], 0.0};
  return m;
}

namespace detail {

/// (1/2) Tr(lambda^A m) for every A, without any Hermiticity check.
inline Vector9 dual_traces(const CMat3& m) noexcept {
  const auto& dual = lambda_basis().dual;
  Vector9 x{};
  for (std::size_t a = 0; a < 9; ++a) {
    Complex s{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) s += dual[a](i, j) * m(j, i);
    x[a] = 0.5 * s.real();
  }
  return x;
}

}  // namespace detail

/// Inverse of vec_to_matrix: X^A = (1/2) Tr(lambda^A M). Throws NotHermitian
/// when M departs from Hermiticity by more than 1e-12 * max(1, max|M_ab|).
inline Vector9 matrix_to_vec(const CMat3& m) {
  const double scale = std::max(1.0, max_abs(m));
  const double r = hermiticity_residual(m);
  if (!(r <= kHermitianTol * scale)) {
    std::ostringstream os;
    os << "matrix is not Hermitian: residual " << r;
    throw Error(Errc::NotHermitian, os.str()).with_value(r);
  }
  return detail::dual_traces(m);
}

// ---------------------------------------------------------------------------
// SL(3,C) action
// ---------------------------------------------------------------------------

inline void require_unimodular(const CMat3& d) {
  const double dev = std::abs(det(d) - 1.0);
  if (!(dev <= kUnimodularTol)) {
    std::ostringstream os;
    os.precision(17);
    os << "matrix is not unimodular: |det - 1| = " << dev;
    throw Error(Errc::NotUnimodular, os.str()).with_value(dev);
  }
}

/// L(D)^A_B = (1/2) Tr(lambda^A D lambda_B D^+). Imaginary parts of the
/// traces must vanish to 1e-12 * max(1, max|D_ab|^2) and are then dropped.
inline Transform9 group_action(const CMat3& d) {
  require_unimodular(d);
  const auto& basis = lambda_basis();
  const CMat3 d_dag = adjoint(d);
  const double scale = std::max(1.0, max_abs(d) * max_abs(d));
  Transform9 l{};
  for (std::size_t b = 0; b < 9; ++b) {
    const CMat3 image = d * basis.lambda[b] * d_dag;
    for (std::size_t a = 0; a < 9; ++a) {
      const Complex t = 0.5 * trace(basis.dual[a] * image);
      if (!(std::abs(t.imag()) <= kNonRealTol * scale)) {
        std::ostringstream os;
        os << "transform entry (" << a << "," << b << ") has imaginary part " << t.imag();
        throw Error(Errc::NonRealEntry, os.str()).with_value(t.imag());
      }
      l(a, b) = t.real();
    }
  }
  return l;
}

/// X' with M(X') = D M(X) D^+.
inline Vector9 conjugation_action(const CMat3& d, const Vector9& x) {
  require_unimodular(d);
  return detail::dual_traces(d * vec_to_matrix(x) * adjoint(d));
}

}  // namespace finsler

#endif  // FINSLER_CORE_HPP
