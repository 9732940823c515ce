#include "unruh_steer/coherence.hpp"

#include "unruh_steer/errors.hpp"

#include <cassert>
#include <cmath>

namespace unruh_steer {

namespace {

double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

Mat2c basis_matrix(const CoherenceBasis& basis) {
  const auto b = QubitBasis::from_axis(basis.axis);
  Mat2c u;
  u.col(0) = b.e0;
  u.col(1) = b.e1;
  return u;
}

}  // namespace

CoherenceBasis4::CoherenceBasis4(const Mat4c& cols) : columns(cols) {
  if ((cols.adjoint() * cols - Mat4c::Identity()).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::kDegenerateBasis, "coherence basis is not orthonormal within 1e-10");
}

Mat2c rotate_to_basis(const Mat2c& rho, const CoherenceBasis& basis) {
  const Mat2c u = basis_matrix(basis);
  return u.adjoint() * rho * u;
}

double l1_coherence(const QubitBloch& q, const CoherenceBasis& basis) {
  const Vec3& u = basis.axis.vec();
  return (q.r - q.r.dot(u) * u).norm();
}

double l1_coherence(const Mat2c& rho, const CoherenceBasis& basis) {
  const Mat2c r = rotate_to_basis(rho, basis);
  return std::abs(r(0, 1)) + std::abs(r(1, 0));
}

double l1_coherence(const DensityMatrix4& rho, const CoherenceBasis4& basis) {
  const Mat4c r = basis.columns.adjoint() * rho * basis.columns;
  double sum = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) sum += std::abs(r(i, j));
  return sum;
}

double binary_entropy(double p) { return entropy_term(p) + entropy_term(1.0 - p); }

double von_neumann_entropy(const Mat2c& rho) {
  const auto e = hermitian_eigen(rho);
  return entropy_term(e.values[0]) + entropy_term(e.values[1]);
}

double von_neumann_entropy(const DensityMatrix4& rho) {
  const auto e = hermitian_eigen(rho);
  double s = 0.0;
  for (double v : e.values) s += entropy_term(v);
  return s;
}

double relative_entropy_coherence(const QubitBloch& q, const CoherenceBasis& basis) {
  const double along = q.r.dot(basis.axis.vec());
  const double length = q.r.norm();
  return std::max(0.0, binary_entropy(0.5 * (1.0 + along)) - binary_entropy(0.5 * (1.0 + length)));
}

double relative_entropy_coherence(const DensityMatrix4& rho, const CoherenceBasis4& basis) {
  const Mat4c r = basis.columns.adjoint() * rho * basis.columns;
  double s_diag = 0.0;
  for (int i = 0; i < 4; ++i) s_diag += entropy_term(r(i, i).real());
  return std::max(0.0, s_diag - von_neumann_entropy(rho));
}

double trace_distance_coherence_qubit(const QubitBloch& q, const CoherenceBasis& basis) {
  const Mat2c rho = rotate_to_basis(bloch_to_matrix(q), basis);
  Mat2c closest = Mat2c::Zero();
  closest(0, 0) = rho(0, 0);
  closest(1, 1) = rho(1, 1);
  const double value = trace_norm(Mat2c(rho - closest));
  assert(std::abs(value - l1_coherence(q, basis)) <= 1e-10);
  return value;
}

}  // namespace unruh_steer
