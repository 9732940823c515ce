#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace unruh_steer {

using complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;

/// 4x4 complex matrix in the product basis |00>,|01>,|10>,|11>, qubit A on the left.
/// Hermiticity and unit trace are properties checked by the operations that need them.
using DensityMatrix4 = Mat4c;

inline constexpr double kPositivityTol = 1e-10;

/// Two-qubit state in the tensor-Pauli expansion
///   rho = 1/4 [ 1 + sum a_i s_i x 1 + sum b_i 1 x s_i + sum T_ij s_i x s_j ].
/// `a` holds rho_i0 (Alice), `b` holds rho_0i (Bob), `T` holds rho_ij.
struct FanoState {
  Vec3 a = Vec3::Zero();
  Vec3 b = Vec3::Zero();
  Mat3 T = Mat3::Zero();

  /// Sum of the diagonal correlations, tau = sum_i rho_ii.
  double correlation_trace() const { return T.trace(); }

  /// Flattened as (a_1..3, b_1..3, T_11, T_12, ..., T_33).
  std::array<double, 15> to_array() const;
  static FanoState from_array(const std::array<double, 15>& v);

  friend FanoState operator+(const FanoState& x, const FanoState& y);
  friend FanoState operator*(double s, const FanoState& x);
};

double max_abs_difference(const FanoState& x, const FanoState& y);

struct QubitBloch {
  Vec3 r = Vec3::Zero();
};

/// Unit 3-vector. Construction checks |v| = 1 within 1e-12; use `normalized` to rescale.
class UnitVector {
 public:
  explicit UnitVector(const Vec3& v);
  static UnitVector normalized(const Vec3& v);
  static UnitVector z() { return UnitVector(Vec3::UnitZ()); }

  const Vec3& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }

 private:
  struct Unchecked {};
  UnitVector(const Vec3& v, Unchecked) : v_(v) {}
  Vec3 v_;
};

/// Orthonormal qubit basis given by two column vectors.
struct QubitBasis {
  Eigen::Vector2cd e0;
  Eigen::Vector2cd e1;

  /// Eigenbasis of axis.sigma: e0 has Bloch vector +axis, e1 has -axis.
  static QubitBasis from_axis(const UnitVector& axis);
};

// Pauli matrices, index 0 is the identity.
const Mat2c& pauli(int i);
Mat4c pauli_product(int i, int j);

DensityMatrix4 fano_to_matrix(const FanoState& s);

/// Throws Error(kNonHermitian) when m deviates from Hermitian by more than 1e-9.
FanoState matrix_to_fano(const DensityMatrix4& m);

enum class Side { A, B };

QubitBloch partial_trace(const DensityMatrix4& m, Side keep);
Mat2c bloch_to_matrix(const QubitBloch& q);
QubitBloch matrix_to_bloch(const Mat2c& m);

/// Projective dephasing of Bob's qubit in the given basis, (I x Lambda_B)(m).
/// Throws Error(kDegenerateBasis) if the basis vectors are not orthonormal within 1e-10.
DensityMatrix4 dephase_B(const DensityMatrix4& m, const QubitBasis& basis);
DensityMatrix4 dephase_B(const DensityMatrix4& m, const UnitVector& axis);

struct Eigen2 {
  std::array<double, 2> values;  // descending
  Mat2c vectors;                 // columns
};

struct Eigen4 {
  std::array<double, 4> values;  // descending
  Mat4c vectors;                 // columns
};

/// Closed-form eigendecomposition of a 2x2 Hermitian matrix.
Eigen2 hermitian_eigen(const Mat2c& m);

/// Cyclic complex Jacobi iteration for a 4x4 Hermitian matrix.
Eigen4 hermitian_eigen(const Mat4c& m);

/// Tr|M| = sum of absolute eigenvalues, no 1/2 prefactor.
double trace_norm(const Mat4c& m);
double trace_norm(const Mat2c& m);

double min_eigenvalue(const Mat4c& m);

bool is_physical(const DensityMatrix4& m, double tol = kPositivityTol);
bool is_physical(const FanoState& s, double tol = kPositivityTol);

/// Wootters concurrence. Throws Error(kNotPositive) if min eigenvalue < -1e-8.
double concurrence(const DensityMatrix4& m);

}  // namespace unruh_steer
