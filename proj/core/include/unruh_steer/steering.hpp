#pragma once

#include "unruh_steer/qmat.hpp"
#include "unruh_steer/sphere_search.hpp"
#include "unruh_steer/unruh_model.hpp"

#include <array>

namespace unruh_steer {

struct SteeredOutcome {
  double probability = 0.0;
  QubitBloch bob;
};

/// Bob's conditional states after Alice measures (I + m.sigma)/2 and (I - m.sigma)/2.
/// A zero-probability outcome carries Bob's unsteered marginal.
struct SteeredEnsemble {
  std::array<SteeredOutcome, 2> outcomes;  // [0] is the + outcome
};

SteeredEnsemble steer_bob(const FanoState& s, const UnitVector& m);

/// Sum over outcomes of p * l1 coherence of Bob's conditional state in the eigenbasis of `axis`.
double average_steered_coherence(const FanoState& s, const Vec3& m, const Vec3& axis);

struct SearchOptions {
  /// Grid over Alice's direction when Bob's marginal fixes the reference basis.
  SphereGrid alice{64, 128, false};
  /// Grids for the nested basis-infimum / direction-maximum when Bob's marginal is maximally mixed.
  SphereGrid nested_basis{8, 16, true};
  SphereGrid nested_alice{12, 24, false};
  /// Grid over the basis axis for the B-sided disturbance with a degenerate marginal.
  SphereGrid mid_basis{32, 64, true};
  double tolerance = 1e-8;
  /// |b| below this makes Bob's marginal degenerate (every basis is an eigenbasis).
  double degeneracy_threshold = 1e-9;
};

struct SicResult {
  double value = 0.0;
  Vec3 alice_direction = Vec3::UnitZ();
  Vec3 basis_axis = Vec3::UnitZ();
  bool degenerate = false;
};

/// Steering-induced coherence with the l1 measure, maximized over Alice's projective
/// measurements; infimum over reference bases when Bob's marginal is degenerate.
/// Throws Error(kNotPositive) for an unphysical state.
SicResult steering_induced_coherence(const FanoState& s, const SearchOptions& options = {});

struct MidResult {
  double value = 0.0;
  Vec3 basis_axis = Vec3::UnitZ();
  bool degenerate = false;
};

/// B-sided measurement-induced disturbance with the trace norm, inf over Bob's eigenbases.
MidResult one_sided_mid(const FanoState& s, const SearchOptions& options = {});

/// |SIC - MID|; zero for every two-qubit state.
double theorem1_residual(const FanoState& s, const SearchOptions& options = {});

/// alpha_ij = rho_0i + rho_ji.
Mat3 alpha_matrix(const FanoState& s);

enum class Axis { kX = 0, kY = 1, kZ = 2 };
enum class Outcome { kPlus, kMinus };

struct ConditionalCoherence {
  double closed_form = 0.0;
  double first_principles = 0.0;
};

/// l1 coherence (in the coh_axis basis) of Bob's state conditioned on Alice measuring sigma_meas
/// with the given outcome. The closed form uses alpha for the + outcome and the analogous
/// rho_0j - rho_kj combination for the - outcome. Throws Error(kDomain) if the axes coincide and
/// Error(kDenominatorZero) if 1 +/- rho_k0 <= 1e-12.
ConditionalCoherence conditional_coherence(const FanoState& s, Axis meas, Axis coh, Outcome outcome = Outcome::kPlus);

/// The two cyclic measurement/coherence assignments of the steering inequality:
/// kFirst sums C_x(B|y) + C_y(B|z) + C_z(B|x), kSecond sums C_x(B|z) + C_y(B|x) + C_z(B|y).
enum class Pairing { kFirst, kSecond };

/// First-principles left-hand side of the coherence steering inequality (+ outcomes).
double steerability_sum(const FanoState& s, Pairing pairing);

inline constexpr double kSteeringBound = 2.449489742783178;  // sqrt(6)

struct SteerabilityFunctional {
  double literal = 0.0;   // 2(tau-R^2)/(3+R^2) + [R^2(tau+2) - R(tau+3) + tau] / [R^2 - R(tau+3) + 3]
  double absolute = 0.0;  // same terms with |.| applied to each
  bool literal_exceeds = false;
  bool absolute_exceeds = false;
  /// R^2 - R(tau+3) + 3 vanished (only at tau = R = 1); values are NaN.
  bool singular = false;
};

/// Throws Error(kDomain) outside tau in [-3,1], R in [0,1].
SteerabilityFunctional steerability_functional_free(double tau, double R);

struct BoundaryVerdict {
  double x1 = 0.0;
  double x3 = 0.0;
  double ratio = 0.0;  // x3 / (1 + x1)
  bool satisfied = false;
};

/// Throws Error(kDegenerateLimit) for a vanishing equilibrium denominator and
/// Error(kDenominatorZero) if |1 + x1| < 1e-12.
BoundaryVerdict steerability_verdict_boundary(const KossakowskiBoundary& k);

}  // namespace unruh_steer
