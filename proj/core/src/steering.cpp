#include "unruh_steer/steering.hpp"

#include "unruh_steer/coherence.hpp"
#include "unruh_steer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>
#include <limits>

namespace unruh_steer {

namespace {

void require_physical(const FanoState& s) {
  if (!is_physical(s)) throw Error(ErrorCode::kNotPositive, "state is not positive semidefinite");
}

double transverse(const Vec3& r, const Vec3& axis) { return (r - r.dot(axis) * axis).norm(); }

double max_over_alice(const FanoState& s, const Vec3& axis, const SphereGrid& grid, double tol, Vec3* argmax) {
  const auto objective = [&](const Vec3& m) { return average_steered_coherence(s, m, axis); };
  const SphereOptimum best = maximize_on_sphere(objective, grid, tol);
  if (argmax) *argmax = best.point;
  return best.value;
}

}  // namespace

SteeredEnsemble steer_bob(const FanoState& s, const UnitVector& m) {
  SteeredEnsemble out;
  const Vec3 correlated = s.T.transpose() * m.vec();
  const double am = s.a.dot(m.vec());
  for (int k = 0; k < 2; ++k) {
    const double sign = k == 0 ? 1.0 : -1.0;
    const double p = 0.5 * (1.0 + sign * am);
    out.outcomes[k].probability = p;
    out.outcomes[k].bob.r = p > 1e-15 ? Vec3((s.b + sign * correlated) / (2.0 * p)) : s.b;
  }
  return out;
}

double average_steered_coherence(const FanoState& s, const Vec3& m, const Vec3& axis) {
  // Same arithmetic as steer_bob followed by l1_coherence, without the unit-length checks.
  const Vec3 correlated = s.T.transpose() * m;
  const double am = s.a.dot(m);
  double sum = 0.0;
  for (double sign : {1.0, -1.0}) {
    const double p = 0.5 * (1.0 + sign * am);
    if (p <= 1e-15) continue;
    const Vec3 r = (s.b + sign * correlated) / (2.0 * p);
    sum += p * transverse(r, axis);
  }
  return sum;
}

SicResult steering_induced_coherence(const FanoState& s, const SearchOptions& options) {
  require_physical(s);
  SicResult out;
  const double b_norm = s.b.norm();
  if (b_norm >= options.degeneracy_threshold) {
    out.basis_axis = s.b / b_norm;
    out.value = max_over_alice(s, out.basis_axis, options.alice, options.tolerance, &out.alice_direction);
    return out;
  }

  out.degenerate = true;
  // Unrefined grid maxima rank the basis grid points; the best two are refined.
  const SphereGrid& ga = options.nested_alice;
  const auto coarse = [&](const Vec3& axis) {
    double best = 0.0;
    for (int i = 0; i < ga.theta_points; ++i)
      for (int j = 0; j < ga.phi_points; ++j)
        best = std::max(best, average_steered_coherence(s, detail::grid_point(ga, i, j), axis));
    return best;
  };
  const SphereGrid& gb = options.nested_basis;
  std::vector<std::pair<double, int>> ranked;
  for (int i = 0; i < gb.theta_points; ++i)
    for (int j = 0; j < gb.phi_points; ++j) ranked.emplace_back(coarse(detail::grid_point(gb, i, j)), i * gb.phi_points + j);
  const std::size_t k = std::min<std::size_t>(2, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end());

  const auto neg_inner = [&](const Vec3& axis) {
    return -max_over_alice(s, axis, options.nested_alice, options.tolerance, nullptr);
  };
  const double spacing = std::max(1.0 / std::max(gb.theta_points - 1, 1), 2.0 * std::numbers::pi / gb.phi_points);
  SphereOptimum basis;
  for (std::size_t c = 0; c < k; ++c) {
    const int idx = ranked[c].second;
    const Vec3 start = detail::grid_point(gb, idx / gb.phi_points, idx % gb.phi_points);
    const SphereOptimum r = detail::refine(neg_inner, SphereOptimum{start, neg_inner(start)}, spacing, 1e-4);
    if (c == 0 || r.value > basis.value) basis = r;
  }
  out.basis_axis = basis.point;
  out.value = max_over_alice(s, basis.point, options.alice, options.tolerance, &out.alice_direction);
  return out;
}

MidResult one_sided_mid(const FanoState& s, const SearchOptions& options) {
  require_physical(s);
  const DensityMatrix4 rho = fano_to_matrix(s);
  const auto disturbance = [&](const Vec3& axis) {
    return trace_norm(Mat4c(rho - dephase_B(rho, UnitVector::normalized(axis))));
  };
  MidResult out;
  const double b_norm = s.b.norm();
  if (b_norm >= options.degeneracy_threshold) {
    out.basis_axis = s.b / b_norm;
    out.value = disturbance(out.basis_axis);
    return out;
  }
  out.degenerate = true;
  const SphereOptimum best = minimize_on_sphere(disturbance, options.mid_basis, options.tolerance, 3);
  out.basis_axis = best.point;
  out.value = best.value;
  return out;
}

double theorem1_residual(const FanoState& s, const SearchOptions& options) {
  return std::abs(steering_induced_coherence(s, options).value - one_sided_mid(s, options).value);
}

Mat3 alpha_matrix(const FanoState& s) {
  Mat3 alpha;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) alpha(i, j) = s.b[i] + s.T(j, i);
  return alpha;
}

ConditionalCoherence conditional_coherence(const FanoState& s, Axis meas, Axis coh, Outcome outcome) {
  if (meas == coh) throw Error(ErrorCode::kDomain, "measurement and coherence axes must differ");
  const int k = static_cast<int>(meas);
  const int c = static_cast<int>(coh);
  const double sign = outcome == Outcome::kPlus ? 1.0 : -1.0;
  const double denom = 1.0 + sign * s.a[k];
  if (denom <= 1e-12) throw Error(ErrorCode::kDenominatorZero, "conditioning outcome has zero probability");

  const Mat3 alpha = alpha_matrix(s);
  double sq = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (j == c) continue;
    // rho_0j +/- rho_kj; for the + outcome this is alpha_jk.
    const double entry = outcome == Outcome::kPlus ? alpha(j, k) : s.b[j] - s.T(k, j);
    sq += entry * entry;
  }

  ConditionalCoherence out;
  out.closed_form = std::sqrt(sq) / denom;
  const auto ensemble = steer_bob(s, UnitVector(Vec3::Unit(k)));
  const auto& bob = ensemble.outcomes[outcome == Outcome::kPlus ? 0 : 1].bob;
  out.first_principles = l1_coherence(bob, CoherenceBasis::qubit(UnitVector(Vec3::Unit(c))));
  return out;
}

double steerability_sum(const FanoState& s, Pairing pairing) {
  const auto term = [&](Axis coh, Axis meas) { return conditional_coherence(s, meas, coh).first_principles; };
  if (pairing == Pairing::kFirst)
    return term(Axis::kX, Axis::kY) + term(Axis::kY, Axis::kZ) + term(Axis::kZ, Axis::kX);
  return term(Axis::kX, Axis::kZ) + term(Axis::kY, Axis::kX) + term(Axis::kZ, Axis::kY);
}

SteerabilityFunctional steerability_functional_free(double tau, double R) {
  if (!(tau >= -3.0 && tau <= 1.0)) throw Error(ErrorCode::kDomain, "tau must lie in [-3, 1]");
  if (!(R >= 0.0 && R <= 1.0)) throw Error(ErrorCode::kDomain, "R must lie in [0, 1]");
  SteerabilityFunctional out;
  const double R2 = R * R;
  const double denom = R2 - R * (tau + 3.0) + 3.0;
  if (std::abs(denom) <= 1e-12) {
    out.singular = true;
    out.literal = out.absolute = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const double transverse_term = (tau - R2) / (3.0 + R2);
  const double axial_term = (R2 * (tau + 2.0) - R * (tau + 3.0) + tau) / denom;
  out.literal = 2.0 * transverse_term + axial_term;
  out.absolute = 2.0 * std::abs(transverse_term) + std::abs(axial_term);
  out.literal_exceeds = out.literal > kSteeringBound;
  out.absolute_exceeds = out.absolute > kSteeringBound;
  return out;
}

BoundaryVerdict steerability_verdict_boundary(const KossakowskiBoundary& k) {
  if (boundary_is_degenerate(k))
    throw Error(ErrorCode::kDegenerateLimit, "boundary equilibrium denominator vanishes");
  const double A1 = k.A1, A2 = k.A2, B1 = k.B1, B2 = k.B2;
  const double D = boundary_denominator(k);
  BoundaryVerdict out;
  out.x1 = -(A1 - A2) * B1 * (2.0 * A1 + A2) / D;
  out.x3 = (A1 - A2) * B1 * (2.0 * B1 + B2 - 2.0 * A1 - A2) / D;
  // Rounding bound on x1 from the condition numbers of D and A1 - A2.
  const double d_terms = 2.0 * std::abs(A1 * A1 * A1) + std::abs(A1 * A1 * A2) + std::abs(A2 * B1 * B2) +
                         std::abs(A1) * (B2 * B2 + A2 * A2);
  const double kappa = d_terms / std::abs(D) + (std::abs(A1) + std::abs(A2)) / std::abs(A1 - A2);
  const double x1_error = 16.0 * std::numeric_limits<double>::epsilon() * kappa * std::abs(out.x1);
  if (std::abs(1.0 + out.x1) < std::max(1e-12, x1_error))
    throw Error(ErrorCode::kDenominatorZero, "1 + x1 vanishes to working precision");
  out.ratio = out.x3 / (1.0 + out.x1);
  out.satisfied = out.ratio > kSteeringBound;
  return out;
}

}  // namespace unruh_steer
