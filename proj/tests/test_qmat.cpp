#include "test_support.hpp"

#include "unruh_steer/errors.hpp"
#include "unruh_steer/qmat.hpp"
#include "unruh_steer/unruh_model.hpp"

#include <gtest/gtest.h>

namespace unruh_steer {
namespace {

using test::Gen;
using test::kron_accumulate;
using test::max_abs;

FanoState singlet() {
  FanoState s;
  s.T = -Mat3::Identity();
  return s;
}

FanoState random_coefficients(Gen& g) {
  FanoState s;
  for (int i = 0; i < 3; ++i) {
    s.a[i] = g.uniform(-1, 1);
    s.b[i] = g.uniform(-1, 1);
    for (int j = 0; j < 3; ++j) s.T(i, j) = g.uniform(-1, 1);
  }
  return s;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kDomain;
}

TEST(FanoToMatrix, ZeroStateIsMaximallyMixed) {
  const Mat4c m = fano_to_matrix(FanoState{});
  EXPECT_LT(max_abs(m - Mat4c::Identity() / 4.0), 1e-15);
}

TEST(FanoToMatrix, SingletEntries) {
  const Mat4c m = fano_to_matrix(singlet());
  EXPECT_NEAR(m(0, 0).real(), 0.0, 1e-15);
  EXPECT_NEAR(m(1, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(m(2, 2).real(), 0.5, 1e-15);
  EXPECT_NEAR(m(3, 3).real(), 0.0, 1e-15);
  EXPECT_NEAR(m(1, 2).real(), -0.5, 1e-15);
  EXPECT_NEAR(m(2, 1).real(), -0.5, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 2).imag()), 0.0, 1e-15);
}

TEST(FanoToMatrix, EquilibriumExampleAgainstKroneckerAccumulation) {
  FanoState s;
  s.a = Vec3(0, 0, -0.75);
  s.b = Vec3(0, 0, -0.75);
  s.T = Vec3(-0.25, -0.25, 0.5).asDiagonal();
  const Mat4c m = fano_to_matrix(s);
  Eigen::Vector4d diag(0.0, 0.125, 0.125, 0.75);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(m(i, i).real(), diag[i], 1e-15);
  EXPECT_NEAR(m(1, 2).real(), -0.125, 1e-15);
  EXPECT_NEAR(m(2, 1).real(), -0.125, 1e-15);
  EXPECT_LT(max_abs(m - kron_accumulate(s)), 1e-15);
}

TEST(FanoToMatrix, RandomCoefficientsMatchKroneckerAccumulation) {
  Gen g(11);
  for (int n = 0; n < 500; ++n) {
    const FanoState s = random_coefficients(g);
    const Mat4c m = fano_to_matrix(s);
    EXPECT_LT(max_abs(m - kron_accumulate(s)), 1e-15);
    EXPECT_LT(max_abs(m - m.adjoint()), 1e-15);
    EXPECT_NEAR(m.trace().real(), 1.0, 1e-15);
  }
}

TEST(MatrixToFano, InvertsAccumulation) {
  Gen g(12);
  for (int n = 0; n < 500; ++n) {
    const FanoState s = random_coefficients(g);
    EXPECT_LT(max_abs_difference(matrix_to_fano(fano_to_matrix(s)), s), 1e-14);
  }
  EXPECT_LT(max_abs_difference(matrix_to_fano(Mat4c::Identity() / 4.0), FanoState{}), 1e-15);
  EXPECT_LT(max_abs_difference(matrix_to_fano(fano_to_matrix(singlet())), singlet()), 1e-15);
}

TEST(MatrixToFano, CoefficientsAreExpectationValues) {
  Gen g(13);
  const Mat4c rho = g.ginibre_state();
  const FanoState s = matrix_to_fano(rho);
  for (int i = 1; i <= 3; ++i) {
    EXPECT_NEAR(s.a[i - 1], (rho * test::kron(test::sigma(i), test::sigma(0))).trace().real(), 1e-14);
    EXPECT_NEAR(s.b[i - 1], (rho * test::kron(test::sigma(0), test::sigma(i))).trace().real(), 1e-14);
    for (int j = 1; j <= 3; ++j)
      EXPECT_NEAR(s.T(i - 1, j - 1), (rho * test::kron(test::sigma(i), test::sigma(j))).trace().real(), 1e-14);
  }
}

TEST(MatrixToFano, RejectsNonHermitian) {
  Mat4c m = Mat4c::Identity() / 4.0;
  m(0, 1) = 1e-6;
  EXPECT_EQ(code_of([&] { matrix_to_fano(m); }), ErrorCode::kNonHermitian);
  m(0, 1) = 1e-10;
  EXPECT_NO_THROW(matrix_to_fano(m));
}

TEST(PartialTrace, Examples) {
  EXPECT_LT(partial_trace(fano_to_matrix(singlet()), Side::B).r.norm(), 1e-15);
  FanoState up;  // |+x> on A, |0> on B
  up.a = Vec3::UnitX();
  up.b = Vec3::UnitZ();
  up.T(0, 2) = 1.0;
  EXPECT_LT((partial_trace(fano_to_matrix(up), Side::B).r - Vec3::UnitZ()).norm(), 1e-15);
  EXPECT_LT((partial_trace(fano_to_matrix(up), Side::A).r - Vec3::UnitX()).norm(), 1e-15);
  const auto eq = fano_to_matrix(equilibrium_free(0.0, 1.0));
  EXPECT_LT((partial_trace(eq, Side::B).r - Vec3(0, 0, -0.75)).norm(), 1e-15);
}

TEST(PartialTrace, MatchesExplicitBlockSums) {
  Gen g(14);
  for (int n = 0; n < 100; ++n) {
    const Mat4c rho = g.ginibre_state();
    Mat2c rb = Mat2c::Zero();
    Mat2c ra = Mat2c::Zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          rb(i, j) += rho(2 * k + i, 2 * k + j);
          ra(i, j) += rho(2 * i + k, 2 * j + k);
        }
    EXPECT_LT((bloch_to_matrix(partial_trace(rho, Side::B)) - rb).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((bloch_to_matrix(partial_trace(rho, Side::A)) - ra).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(DephaseB, Examples) {
  const Mat4c diag = Eigen::Vector4cd(0.1, 0.2, 0.3, 0.4).asDiagonal();
  EXPECT_LT(max_abs(dephase_B(diag, UnitVector::z()) - diag), 1e-15);

  const Mat4c ds = dephase_B(fano_to_matrix(singlet()), UnitVector::z());
  EXPECT_LT(max_abs(ds - Mat4c(Eigen::Vector4cd(0, 0.5, 0.5, 0).asDiagonal())), 1e-15);

  const Mat4c eq = fano_to_matrix(equilibrium_free(0.0, 1.0));
  const Mat4c de = dephase_B(eq, UnitVector::z());
  EXPECT_LT(max_abs(de - Mat4c(eq.diagonal().asDiagonal())), 1e-15);
}

TEST(DephaseB, BasisAndAxisOverloadsMatchProjectorOracle) {
  Gen g(15);
  for (int n = 0; n < 100; ++n) {
    const Mat4c rho = g.ginibre_state();
    const UnitVector axis(g.direction());
    const QubitBasis basis = QubitBasis::from_axis(axis);
    Mat4c oracle = Mat4c::Zero();
    for (const auto& e : {basis.e0, basis.e1}) {
      const Mat4c p = test::kron(Mat2c::Identity(), e * e.adjoint());
      oracle += p * rho * p;
    }
    EXPECT_LT(max_abs(dephase_B(rho, basis) - oracle), 1e-14);
    EXPECT_LT(max_abs(dephase_B(rho, axis) - oracle), 1e-14);
  }
}

TEST(DephaseB, RejectsNonOrthogonalBasis) {
  QubitBasis basis{Eigen::Vector2cd(1, 0), Eigen::Vector2cd(1, 1).normalized()};
  EXPECT_EQ(code_of([&] { dephase_B(Mat4c::Identity() / 4.0, basis); }), ErrorCode::kDegenerateBasis);
}

TEST(HermitianEigen, JacobiMatchesEigenSolver) {
  Gen g(16);
  for (int n = 0; n < 300; ++n) {
    Mat4c h;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) h(i, j) = std::complex<double>(g.normal(), g.normal());
    h = (h + h.adjoint()).eval();
    const Eigen4 e = hermitian_eigen(h);
    const Eigen::Vector4d oracle = test::eigenvalues_oracle(h);  // ascending
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(e.values[i], oracle[3 - i], 1e-12);
    for (int i = 0; i < 4; ++i) {
      const Eigen::Vector4cd v = e.vectors.col(i);
      EXPECT_NEAR(v.norm(), 1.0, 1e-12);
      EXPECT_LT((h * v - e.values[i] * v).norm(), 1e-11);
    }
  }
}

TEST(HermitianEigen, DegenerateSpectrum) {
  const Mat4c h = fano_to_matrix(singlet());
  const Eigen4 e = hermitian_eigen(h);
  EXPECT_NEAR(e.values[0], 1.0, 1e-14);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(e.values[i], 0.0, 1e-14);
  EXPECT_LT((e.vectors.adjoint() * e.vectors - Mat4c::Identity()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(HermitianEigen, TwoByTwoClosedForm) {
  Gen g(17);
  for (int n = 0; n < 300; ++n) {
    Mat2c h;
    h << g.normal(), std::complex<double>(g.normal(), g.normal()), 0.0, g.normal();
    h(1, 0) = std::conj(h(0, 1));
    const Eigen2 e = hermitian_eigen(h);
    Eigen::SelfAdjointEigenSolver<Mat2c> es(h);
    EXPECT_NEAR(e.values[0], es.eigenvalues()[1], 1e-12);
    EXPECT_NEAR(e.values[1], es.eigenvalues()[0], 1e-12);
    for (int i = 0; i < 2; ++i)
      EXPECT_LT((h * e.vectors.col(i) - e.values[i] * e.vectors.col(i)).norm(), 1e-12);
  }
  const Eigen2 zero = hermitian_eigen(Mat2c(Mat2c::Zero()));
  EXPECT_EQ(zero.values[0], 0.0);
  EXPECT_NEAR(std::abs((zero.vectors.adjoint() * zero.vectors).determinant()), 1.0, 1e-15);
}

TEST(TraceNorm, Examples) {
  EXPECT_EQ(trace_norm(Mat4c(Mat4c::Zero())), 0.0);
  const Mat4c s = fano_to_matrix(singlet());
  const Mat4c diff = s - dephase_B(s, UnitVector::z());
  EXPECT_NEAR(trace_norm(diff), 1.0, 1e-14);
  EXPECT_NEAR(test::trace_norm_oracle(diff), 1.0, 1e-14);

  const Mat4c eq = fano_to_matrix(equilibrium_free(0.0, 1.0));
  const Mat4c diff_eq = eq - dephase_B(eq, UnitVector::z());
  EXPECT_NEAR(trace_norm(diff_eq), 0.25, 1e-14);
  EXPECT_NEAR(test::trace_norm_oracle(diff_eq), 0.25, 1e-14);
}

TEST(TraceNorm, MatchesOracleOnRandomDifferences) {
  Gen g(18);
  for (int n = 0; n < 200; ++n) {
    const Mat4c d = g.ginibre_state() - g.ginibre_state();
    EXPECT_NEAR(trace_norm(d), test::trace_norm_oracle(d), 1e-12);
  }
}

TEST(MinEigenvalue, Examples) {
  EXPECT_NEAR(min_eigenvalue(Mat4c::Identity() / 4.0), 0.25, 1e-15);
  EXPECT_NEAR(min_eigenvalue(fano_to_matrix(singlet())), 0.0, 1e-15);
  EXPECT_NEAR(min_eigenvalue(fano_to_matrix(equilibrium_free(0.0, 1.0))), 0.0, 1e-15);
}

TEST(IsPhysical, Tolerance) {
  EXPECT_TRUE(is_physical(singlet()));
  FanoState bad = singlet();
  bad.T(0, 0) = -1.001;
  EXPECT_FALSE(is_physical(bad));
  FanoState edge = singlet();
  edge.T(0, 0) = -1.0 - 1e-11;
  EXPECT_TRUE(is_physical(edge));
}

TEST(Concurrence, Examples) {
  FanoState product;
  product.a = Vec3(0.3, 0.1, 0.2);
  product.b = Vec3(-0.5, 0.0, 0.4);
  product.T = product.a * product.b.transpose();
  EXPECT_NEAR(concurrence(fano_to_matrix(product)), 0.0, 1e-12);
  EXPECT_NEAR(concurrence(fano_to_matrix(singlet())), 1.0, 1e-12);
  for (double R : {0.0, 0.3, 0.7, 1.0}) EXPECT_NEAR(concurrence(fano_to_matrix(equilibrium_free(-3.0, R))), 1.0, 1e-9);
}

TEST(Concurrence, WernerFamily) {
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const Mat4c w = p * fano_to_matrix(singlet()) + (1.0 - p) * Mat4c::Identity() / 4.0;
    EXPECT_NEAR(concurrence(w), std::max(0.0, (3.0 * p - 1.0) / 2.0), 1e-9) << "p = " << p;
  }
}

TEST(Concurrence, MatchesSpinFlipOracle) {
  Gen g(19);
  const Mat4c yy = test::kron(test::sigma(2), test::sigma(2));
  for (int n = 0; n < 200; ++n) {
    const Mat4c rho = n % 2 ? g.ginibre_state() : g.noisy_pure(g.uniform(0.3, 1.0));
    const Mat4c tilde = yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Mat4c> es(rho * tilde);
    std::array<double, 4> l{};
    for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, es.eigenvalues()[i].real()));
    std::sort(l.begin(), l.end(), std::greater<>());
    const double oracle = std::max(0.0, l[0] - l[1] - l[2] - l[3]);
    EXPECT_NEAR(concurrence(rho), oracle, 1e-7);
  }
}

TEST(Concurrence, RejectsUnphysical) {
  FanoState bad = singlet();
  bad.T(2, 2) = -1.5;
  EXPECT_EQ(code_of([&] { concurrence(fano_to_matrix(bad)); }), ErrorCode::kNotPositive);
}

TEST(UnitVectorTest, Validation) {
  EXPECT_NO_THROW(UnitVector(Vec3(0.6, 0.8, 0.0)));
  EXPECT_EQ(code_of([] { UnitVector(Vec3(1.0, 1e-5, 0.0)); }), ErrorCode::kDomain);
  EXPECT_NEAR(UnitVector::normalized(Vec3(3, 0, 4)).vec().norm(), 1.0, 1e-15);
  EXPECT_EQ(code_of([] { UnitVector::normalized(Vec3::Zero()); }), ErrorCode::kDomain);
}

TEST(Pauli, ProductsMatchKron) {
  for (int i = 0; i < 4; ++i) {
    EXPECT_LT((pauli(i) - test::sigma(i)).cwiseAbs().maxCoeff(), 1e-15);
    for (int j = 0; j < 4; ++j) EXPECT_LT(max_abs(pauli_product(i, j) - test::kron(test::sigma(i), test::sigma(j))), 1e-15);
  }
}

TEST(Bloch, RoundTrip) {
  Gen g(20);
  for (int n = 0; n < 100; ++n) {
    const Mat2c m = g.qubit();
    EXPECT_LT((bloch_to_matrix(matrix_to_bloch(m)) - m).cwiseAbs().maxCoeff(), 1e-15);
  }
}

}  // namespace
}  // namespace unruh_steer
