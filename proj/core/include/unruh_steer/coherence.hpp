#pragma once

#include "unruh_steer/qmat.hpp"

namespace unruh_steer {

/// Reference basis for coherence. Qubits use the eigenbasis of axis.sigma; two-qubit states use
/// the columns of a 4x4 unitary.
struct CoherenceBasis {
  UnitVector axis = UnitVector::z();
  static CoherenceBasis qubit(const UnitVector& axis) { return CoherenceBasis{axis}; }
};

struct CoherenceBasis4 {
  Mat4c columns = Mat4c::Identity();
  /// Throws Error(kDegenerateBasis) if the columns are not orthonormal within 1e-10.
  explicit CoherenceBasis4(const Mat4c& columns);
  CoherenceBasis4() = default;
};

// All measures: entropies in bits, 0 log 0 := 0. The relative entropy of coherence is
// S(diag) - S(rho) >= 0.

double l1_coherence(const QubitBloch& q, const CoherenceBasis& basis);
double l1_coherence(const Mat2c& rho, const CoherenceBasis& basis);
double l1_coherence(const DensityMatrix4& rho, const CoherenceBasis4& basis);

double relative_entropy_coherence(const QubitBloch& q, const CoherenceBasis& basis);
double relative_entropy_coherence(const DensityMatrix4& rho, const CoherenceBasis4& basis);

/// min over incoherent delta of Tr|rho - delta|. For a qubit the minimizer is the dephased
/// state, and the value equals l1_coherence.
double trace_distance_coherence_qubit(const QubitBloch& q, const CoherenceBasis& basis);

double von_neumann_entropy(const Mat2c& rho);
double von_neumann_entropy(const DensityMatrix4& rho);
double binary_entropy(double p);

/// rho written in the qubit basis of `basis` (e0 first).
Mat2c rotate_to_basis(const Mat2c& rho, const CoherenceBasis& basis);

}  // namespace unruh_steer
