#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "finsler/core.hpp"
#include "finsler/random.hpp"
#include "finsler/sampling.hpp"
#include "support/oracles.hpp"

using namespace finsler;

namespace {

Vector9 e(std::size_t i) { return Vector9::basis(i); }

double cube_norm(const Vector9& x) {
  const double n = x.norm();
  return std::max(1.0, n * n * n);
}

}  // namespace

// ---------------------------------------------------------------------------
// cubic_form
// ---------------------------------------------------------------------------

TEST(CubicForm, TimeAndScalarComponents) { EXPECT_EQ(cubic_form(e(0) + e(8)), 1.0); }

TEST(CubicForm, SpinorTerm) { EXPECT_EQ(cubic_form(Vector9{{0, 0, 0, 1, 1, 0, 0, 0, 0}}), 1.0); }

TEST(CubicForm, MatchesLeibnizDeterminant) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Vector9 x = random_vector(rng);
    const Complex d = oracle::leibniz_det(vec_to_matrix(x));
    EXPECT_LE(std::abs(cubic_form(x) - d.real()), 1e-12 * cube_norm(x));
    EXPECT_LE(std::abs(d.imag()), 1e-12 * cube_norm(x));
  }
}

TEST(CubicForm, MatchesIndependentPolynomial) {
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Vector9 x = random_vector(rng);
    EXPECT_LE(std::abs(cubic_form(x) - oracle::cubic_polynomial(x)), 1e-12 * cube_norm(x));
  }
}

TEST(CubicForm, Homogeneity) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Vector9 x = random_vector(rng);
    for (double c : {-2.0, 0.5, 3.0})
      EXPECT_LE(std::abs(cubic_form(c * x) - c * c * c * cubic_form(x)), 1e-12 * std::abs(c * c * c) * cube_norm(x));
  }
}

// ---------------------------------------------------------------------------
// metric_coefficients
// ---------------------------------------------------------------------------

TEST(MetricCoefficients, FrozenEntries) {
  const CubicMetric g = metric_coefficients();
  // Third-difference oracle values: 1/3 for both triples.
  const double g008 = oracle::third_difference_coefficient<Vector9>(oracle::cubic_polynomial<Vector9>, 0, 0, 8);
  const double g146 = oracle::third_difference_coefficient<Vector9>(oracle::cubic_polynomial<Vector9>, 1, 4, 6);
  EXPECT_DOUBLE_EQ(g008, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(g146, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(g.at(0, 0, 8), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(g.at(8, 0, 0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(g.at(1, 4, 6), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(g.at(6, 1, 4), 1.0 / 3.0);
  EXPECT_FALSE(g.contains(1, 2, 3));
  EXPECT_EQ(g.at(1, 2, 3), 0.0);
}

TEST(MetricCoefficients, AgreesWithThirdDifferenceEverywhere) {
  const CubicMetric g = metric_coefficients();
  for (int a = 0; a < 9; ++a)
    for (int b = a; b < 9; ++b)
      for (int c = b; c < 9; ++c) {
        const double want = oracle::third_difference_coefficient<Vector9>(oracle::cubic_polynomial<Vector9>, a, b, c);
        EXPECT_NEAR(g.at(a, b, c), want, 1e-15) << a << b << c;
      }
}

TEST(MetricCoefficients, CanonicalSparseForm) {
  const CubicMetric g = metric_coefficients();
  EXPECT_EQ(g.entries().size(), 16u);
  for (const auto& [t, v] : g.entries()) {
    EXPECT_NE(v, 0.0);
    EXPECT_LE(t[0], t[1]);
    EXPECT_LE(t[1], t[2]);
  }
}

TEST(MetricCoefficients, ContractionReproducesPolynomial) {
  const CubicMetric g = metric_coefficients();
  const auto dense = g.dense();
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const Vector9 x = random_vector(rng);
    double full = 0.0;
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b)
        for (int c = 0; c < 9; ++c) full += dense[81 * a + 9 * b + c] * x[a] * x[b] * x[c];
    const double want = oracle::cubic_polynomial(x);
    EXPECT_LE(std::abs(full - want), 1e-12 * cube_norm(x));
    EXPECT_LE(std::abs(g.contract(x) - want), 1e-12 * cube_norm(x));
  }
}

TEST(MetricCoefficients, SetZeroErases) {
  CubicMetric g = metric_coefficients();
  g.set(8, 0, 0, 0.0);
  EXPECT_FALSE(g.contains(0, 0, 8));
}

// ---------------------------------------------------------------------------
// Lambda basis
// ---------------------------------------------------------------------------

TEST(LambdaBasis, ExactDuality) {
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b) {
      const GaussInt tr = trace(kLambdaDualExact[a] * kLambdaExact[b]);
      EXPECT_EQ(tr, (GaussInt{a == b ? 2 : 0, 0})) << a << "," << b;
    }
}

TEST(LambdaBasis, Hermitian) {
  for (const auto& l : kLambdaExact) EXPECT_EQ(adjoint(l), l);
  for (const auto& l : kLambdaDualExact) EXPECT_EQ(adjoint(l), l);
}

TEST(LambdaBasis, GellMannAlgebra) {
  // lambda_1..7 are traceless, orthogonal with Tr = 2 delta, and obey
  // [lambda_1, lambda_2] = 2i lambda_3, [lambda_4, lambda_5] = i (lambda_3 + sqrt3 lambda_8^GM).
  const auto& l = kLambdaExact;
  for (std::size_t a = 1; a < 8; ++a) {
    EXPECT_EQ(trace(l[a]), (GaussInt{0, 0}));
    for (std::size_t b = 1; b < 8; ++b) EXPECT_EQ(trace(l[a] * l[b]), (GaussInt{a == b ? 2 : 0, 0}));
  }
  const auto comm12 = l[1] * l[2] - l[2] * l[1];
  EXPECT_EQ(comm12, (GaussInt{0, 2} * l[3]));
  // [lambda_4, lambda_5] = i diag(1, 0, -1) * 2 / 2 ... expressed through lambda_0, lambda_3, lambda_8:
  // diag(1,0,-1) = (lambda_0 + lambda_3)/2 - lambda_8, so the commutator is 2i diag(1,0,-1)/2 * 2.
  const auto comm45 = l[4] * l[5] - l[5] * l[4];
  IntMat3 want{};
  want(0, 0) = {0, 2};
  want(2, 2) = {0, -2};
  EXPECT_EQ(comm45, want);
}

TEST(LambdaBasis, ComplexCopiesMatchExact) {
  const auto& basis = lambda_basis();
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t i = 0; i < 9; ++i) {
      EXPECT_EQ(basis.lambda[a].e[i], to_complex(kLambdaExact[a].e[i]));
      EXPECT_EQ(basis.dual[a].e[i], to_complex(kLambdaDualExact[a].e[i]));
    }
}

// ---------------------------------------------------------------------------
// vec_to_matrix / matrix_to_vec
// ---------------------------------------------------------------------------

TEST(VecToMatrix, BasisVectorsGiveLambdas) {
  const auto& basis = lambda_basis();
  EXPECT_EQ(vec_to_matrix(e(0)), basis.lambda[0]);
  EXPECT_EQ(vec_to_matrix(e(8)), basis.lambda[8]);
  EXPECT_EQ(vec_to_matrix(e(4)), basis.lambda[4]);
  for (std::size_t a = 0; a < 9; ++a) EXPECT_EQ(vec_to_matrix(e(a)), basis.lambda[a]) << a;
}

TEST(VecToMatrix, LinearCombinationOfLambdas) {
  Rng rng(6);
  const auto& basis = lambda_basis();
  for (int i = 0; i < 50; ++i) {
    const Vector9 x = random_vector(rng);
    CMat3 sum{};
    for (std::size_t a = 0; a < 9; ++a) sum = sum + Complex(x[a]) * basis.lambda[a];
    EXPECT_LT(max_abs(sum - vec_to_matrix(x)), 1e-14);
    EXPECT_EQ(hermiticity_residual(vec_to_matrix(x)), 0.0);
  }
}

TEST(MatrixToVec, Examples) {
  EXPECT_EQ(matrix_to_vec(CMat3::identity()), e(0) + e(8));
  CMat3 d{};
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  EXPECT_EQ(matrix_to_vec(d), e(3));
}

TEST(MatrixToVec, RoundTrip) {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Vector9 x = random_vector(rng);
    EXPECT_LE(max_abs_diff(matrix_to_vec(vec_to_matrix(x)), x), 1e-14);
  }
}

TEST(MatrixToVec, RejectsNonHermitian) {
  CMat3 m = CMat3::identity();
  m(0, 1) = 1.0;  // m(1,0) stays 0
  EXPECT_THROW(
      {
        try {
          matrix_to_vec(m);
        } catch (const Error& err) {
          EXPECT_EQ(err.code(), Errc::NotHermitian);
          throw;
        }
      },
      Error);
  CMat3 diag = CMat3::identity();
  diag(2, 2) = Complex(1.0, 1e-6);
  EXPECT_THROW(matrix_to_vec(diag), Error);
  diag(2, 2) = Complex(1.0, 1e-14);
  EXPECT_NO_THROW(matrix_to_vec(diag));
}

// ---------------------------------------------------------------------------
// group_action / conjugation_action
// ---------------------------------------------------------------------------

TEST(GroupAction, IdentityGivesIdentity) { EXPECT_EQ(group_action(CMat3::identity()), Transform9::identity()); }

TEST(GroupAction, PhaseRotation) {
  const double theta = std::numbers::pi / 4.0;
  CMat3 d{};
  d(0, 0) = std::polar(1.0, theta);
  d(1, 1) = std::polar(1.0, -theta);
  d(2, 2) = 1.0;
  const Transform9 l = group_action(d);

  // Conjugation oracle: M' = D M D^+, read the (X1, X2) entries off M'(0,1).
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const Vector9 x = random_vector(rng);
    const CMat3 mp = oracle::naive_product(oracle::naive_product(d, vec_to_matrix(x)), adjoint(d));
    const Vector9 y = l * x;
    EXPECT_NEAR(y[1], mp(0, 1).real(), 1e-12);
    EXPECT_NEAR(y[2], -mp(0, 1).imag(), 1e-12);
    EXPECT_NEAR(y[0], x[0], 1e-12);
    EXPECT_NEAR(y[3], x[3], 1e-12);
    EXPECT_NEAR(y[8], x[8], 1e-12);
  }
  // Rotation by 2 theta = pi/2 in the (X1, X2) plane: X1' = X2, X2' = -X1.
  EXPECT_NEAR(l(1, 2), 1.0, 1e-15);
  EXPECT_NEAR(l(2, 1), -1.0, 1e-15);
  EXPECT_NEAR(l(1, 1), 0.0, 1e-15);
  EXPECT_NEAR(l(2, 2), 0.0, 1e-15);
  for (std::size_t a : {0, 3, 8})
    for (std::size_t b = 0; b < 9; ++b) EXPECT_NEAR(l(a, b), a == b ? 1.0 : 0.0, 1e-15);
}

TEST(GroupAction, PreservesCubicForm) {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const Transform9 l = group_action(random_unimodular3(rng));
    for (int k = 0; k < 5; ++k) {
      const Vector9 x = random_vector(rng);
      EXPECT_LE(std::abs(cubic_form(l * x) - cubic_form(x)), 1e-10 * cube_norm(x));
    }
  }
}

TEST(GroupAction, Homomorphism) {
  Rng rng(10);
  for (int i = 0; i < 100; ++i) {
    const CMat3 d1 = random_unimodular3(rng);
    const CMat3 d2 = random_unimodular3(rng);
    EXPECT_LE(max_abs_diff(group_action(d1 * d2), group_action(d1) * group_action(d2)), 1e-10);
  }
}

TEST(GroupAction, RejectsNonUnimodular) {
  const CMat3 d = Complex(2.0) * CMat3::identity();
  try {
    group_action(d);
    FAIL() << "expected NotUnimodular";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::NotUnimodular);
    EXPECT_DOUBLE_EQ(err.value(), 7.0);
  }
  CMat3 nearly = CMat3::identity();
  nearly(0, 0) = 1.0 + 1e-10;
  EXPECT_NO_THROW(group_action(nearly));
}

TEST(ConjugationAction, TrivialCases) {
  Rng rng(11);
  const Vector9 x = random_vector(rng);
  EXPECT_LE(max_abs_diff(conjugation_action(CMat3::identity(), x), x), 1e-15);
  EXPECT_EQ(conjugation_action(random_unimodular3(rng), Vector9::zero()), Vector9::zero());
}

TEST(ConjugationAction, AgreesWithTraceFormula) {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const CMat3 d = random_unimodular3(rng);
    const Vector9 x = random_vector(rng);
    const Vector9 a = group_action(d) * x;
    EXPECT_LE(max_abs_diff(a, conjugation_action(d, x)), 1e-12 * std::max(1.0, a.norm()));
  }
}

TEST(ConjugationAction, RejectsNonUnimodular) {
  EXPECT_THROW(conjugation_action(Complex(1.1) * CMat3::identity(), e(0)), Error);
}
