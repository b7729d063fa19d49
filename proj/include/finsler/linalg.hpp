#ifndef FINSLER_LINALG_HPP
#define FINSLER_LINALG_HPP

// Small fixed-size vector and matrix types used throughout the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>

namespace finsler {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Strongly-typed component arrays
// ---------------------------------------------------------------------------

/// Fixed-length real component array. The tag keeps points, momenta and
/// Minkowski vectors from being mixed up at call sites.
template <class Tag, std::size_t N>
struct Components {
  static constexpr std::size_t size() noexcept { return N; }

  std::array<double, N> c{};

  static constexpr Components zero() noexcept { return {}; }

  static constexpr Components basis(std::size_t i) noexcept {
    Components v{};
    v.c[i] = 1.0;
    return v;
  }

  constexpr double& operator[](std::size_t i) noexcept { return c[i]; }
  constexpr double operator[](std::size_t i) const noexcept { return c[i]; }

  constexpr auto begin() noexcept { return c.begin(); }
  constexpr auto end() noexcept { return c.end(); }
  constexpr auto begin() const noexcept { return c.begin(); }
  constexpr auto end() const noexcept { return c.end(); }

  constexpr Components& operator+=(const Components& o) noexcept {
    for (std::size_t i = 0; i < N; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Components& operator-=(const Components& o) noexcept {
    for (std::size_t i = 0; i < N; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Components& operator*=(double s) noexcept {
    for (auto& x : c) x *= s;
    return *this;
  }

  friend constexpr Components operator+(Components a, const Components& b) noexcept { return a += b; }
  friend constexpr Components operator-(Components a, const Components& b) noexcept { return a -= b; }
  friend constexpr Components operator-(Components a) noexcept { return a *= -1.0; }
  friend constexpr Components operator*(double s, Components a) noexcept { return a *= s; }
  friend constexpr Components operator*(Components a, double s) noexcept { return a *= s; }

  friend constexpr bool operator==(const Components&, const Components&) = default;

  double norm() const noexcept {
    double s = 0.0;
    for (double x : c) s += x * x;
    return std::sqrt(s);
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double x : c) m = std::max(m, std::abs(x));
    return m;
  }

  bool all_finite() const noexcept {
    return std::all_of(c.begin(), c.end(), [](double x) { return std::isfinite(x); });
  }
};

template <class TagA, class TagB, std::size_t N>
double dot(const Components<TagA, N>& a, const Components<TagB, N>& b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <class Tag, std::size_t N>
double max_abs_diff(const Components<Tag, N>& a, const Components<Tag, N>& b) noexcept {
  return (a - b).max_abs();
}

// ---------------------------------------------------------------------------
// Gaussian integers: exact arithmetic for the lambda basis
// ---------------------------------------------------------------------------

struct GaussInt {
  long long re = 0;
  long long im = 0;

  friend constexpr GaussInt operator+(GaussInt a, GaussInt b) noexcept { return {a.re + b.re, a.im + b.im}; }
  friend constexpr GaussInt operator-(GaussInt a, GaussInt b) noexcept { return {a.re - b.re, a.im - b.im}; }
  friend constexpr GaussInt operator*(GaussInt a, GaussInt b) noexcept {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend constexpr bool operator==(GaussInt, GaussInt) = default;
};

constexpr GaussInt conj_of(GaussInt z) noexcept { return {z.re, -z.im}; }
inline Complex conj_of(const Complex& z) noexcept { return std::conj(z); }
constexpr double conj_of(double x) noexcept { return x; }

inline Complex to_complex(GaussInt z) noexcept {
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

// ---------------------------------------------------------------------------
// 3x3 matrices over a scalar ring
// ---------------------------------------------------------------------------

template <class T>
struct Mat3 {
  std::array<T, 9> e{};  // row-major

  static constexpr Mat3 identity() noexcept {
    Mat3 m{};
    m(0, 0) = T{1};
    m(1, 1) = T{1};
    m(2, 2) = T{1};
    return m;
  }

  constexpr T& operator()(std::size_t r, std::size_t c) noexcept { return e[3 * r + c]; }
  constexpr const T& operator()(std::size_t r, std::size_t c) const noexcept { return e[3 * r + c]; }

  friend constexpr Mat3 operator+(const Mat3& a, const Mat3& b) noexcept {
    Mat3 r{};
    for (std::size_t i = 0; i < 9; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
  }
  friend constexpr Mat3 operator-(const Mat3& a, const Mat3& b) noexcept {
    Mat3 r{};
    for (std::size_t i = 0; i < 9; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
  }
  friend constexpr Mat3 operator*(const Mat3& a, const Mat3& b) noexcept {
    Mat3 r{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        T s{};
        for (std::size_t k = 0; k < 3; ++k) s = s + a(i, k) * b(k, j);
        r(i, j) = s;
      }
    return r;
  }
  friend constexpr Mat3 operator*(const T& s, const Mat3& a) noexcept {
    Mat3 r{};
    for (std::size_t i = 0; i < 9; ++i) r.e[i] = s * a.e[i];
    return r;
  }
  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

using CMat3 = Mat3<Complex>;
/// Complex Hermitian 3x3 matrix. Same storage as CMat3; Hermiticity is an
/// invariant of the producers (vec_to_matrix, momenta_matrix) and is checked
/// wherever such a matrix enters from outside.
using HermMat3 = Mat3<Complex>;

/// Conjugate transpose.
template <class T>
constexpr Mat3<T> adjoint(const Mat3<T>& m) noexcept {
  Mat3<T> r{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = conj_of(m(j, i));
  return r;
}

template <class T>
constexpr T trace(const Mat3<T>& m) noexcept {
  return m(0, 0) + m(1, 1) + m(2, 2);
}

/// Determinant of the 2x2 matrix [[a, b], [c, d]].
template <class T>
constexpr T det2(const T& a, const T& b, const T& c, const T& d) noexcept {
  return a * d - b * c;
}

/// Cofactor expansion along the first row.
template <class T>
constexpr T det(const Mat3<T>& m) noexcept {
  return m(0, 0) * det2(m(1, 1), m(1, 2), m(2, 1), m(2, 2)) -
         m(0, 1) * det2(m(1, 0), m(1, 2), m(2, 0), m(2, 2)) +
         m(0, 2) * det2(m(1, 0), m(1, 1), m(2, 0), m(2, 1));
}

/// Transposed cofactor matrix: m * adjugate(m) = det(m) * I.
template <class T>
constexpr Mat3<T> adjugate(const Mat3<T>& m) noexcept {
  Mat3<T> a{};
  a(0, 0) = det2(m(1, 1), m(1, 2), m(2, 1), m(2, 2));
  a(0, 1) = T{} - det2(m(0, 1), m(0, 2), m(2, 1), m(2, 2));
  a(0, 2) = det2(m(0, 1), m(0, 2), m(1, 1), m(1, 2));
  a(1, 0) = T{} - det2(m(1, 0), m(1, 2), m(2, 0), m(2, 2));
  a(1, 1) = det2(m(0, 0), m(0, 2), m(2, 0), m(2, 2));
  a(1, 2) = T{} - det2(m(0, 0), m(0, 2), m(1, 0), m(1, 2));
  a(2, 0) = det2(m(1, 0), m(1, 1), m(2, 0), m(2, 1));
  a(2, 1) = T{} - det2(m(0, 0), m(0, 1), m(2, 0), m(2, 1));
  a(2, 2) = det2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
  return a;
}

/// Inverse by Gauss-Jordan elimination with partial pivoting. Shares no code
/// with the cofactor route, so the two serve as cross-checks of each other.
inline CMat3 gauss_jordan_inverse(const CMat3& m) noexcept {
  std::array<std::array<Complex, 6>, 3> a{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) a[i][j] = m(i, j);
    a[i][3 + i] = 1.0;
  }
  for (std::size_t col = 0; col < 3; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    const Complex inv_p = 1.0 / a[col][col];
    for (auto& x : a[col]) x *= inv_p;
    for (std::size_t r = 0; r < 3; ++r) {
      if (r == col) continue;
      const Complex f = a[r][col];
      for (std::size_t j = 0; j < 6; ++j) a[r][j] -= f * a[col][j];
    }
  }
  CMat3 r{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = a[i][3 + j];
  return r;
}

inline double max_abs(const CMat3& m) noexcept {
  double r = 0.0;
  for (const auto& z : m.e) r = std::max(r, std::abs(z));
  return r;
}

/// Largest |m(a,b) - conj(m(b,a))| over all entries, diagonal included.
inline double hermiticity_residual(const CMat3& m) noexcept {
  double r = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
  return r;
}

/// 2x2 complex matrix, row-major.
using CMat2 = std::array<Complex, 4>;

inline Complex det(const CMat2& m) noexcept { return m[0] * m[3] - m[1] * m[2]; }

// ---------------------------------------------------------------------------
// Real square matrices
// ---------------------------------------------------------------------------

template <std::size_t N>
struct RealMatrix {
  std::array<double, N * N> e{};  // row-major

  static constexpr RealMatrix identity() noexcept {
    RealMatrix m{};
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  constexpr double& operator()(std::size_t r, std::size_t c) noexcept { return e[N * r + c]; }
  constexpr double operator()(std::size_t r, std::size_t c) const noexcept { return e[N * r + c]; }

  friend constexpr RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) noexcept {
    RealMatrix r{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const double aik = a(i, k);
        for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  template <class Tag>
  constexpr Components<Tag, N> operator*(const Components<Tag, N>& x) const noexcept {
    Components<Tag, N> y{};
    for (std::size_t i = 0; i < N; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < N; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  friend constexpr bool operator==(const RealMatrix&, const RealMatrix&) = default;
};

template <std::size_t N>
constexpr RealMatrix<N> transpose(const RealMatrix<N>& m) noexcept {
  RealMatrix<N> t{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) t(i, j) = m(j, i);
  return t;
}

template <std::size_t N>
double max_abs_diff(const RealMatrix<N>& a, const RealMatrix<N>& b) noexcept {
  double r = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) r = std::max(r, std::abs(a.e[i] - b.e[i]));
  return r;
}

template <std::size_t N>
double max_abs(const RealMatrix<N>& a) noexcept {
  double r = 0.0;
  for (double x : a.e) r = std::max(r, std::abs(x));
  return r;
}

}  // namespace finsler

#endif  // FINSLER_LINALG_HPP
