#pragma once

#include "unruh_steer/qmat.hpp"

#include <optional>
#include <vector>

namespace unruh_steer {

/// Physical inputs in natural units. `accel` may be +infinity (infinite-acceleration limit, R = 0).
struct UnruhParams {
  double omega = 1.0;
  double accel = 1.0;
  UnitVector n = UnitVector::z();
};

struct KossakowskiFree {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double R = 0.0;  // B / A, equals tanh(pi omega / a)
  double unruh_temperature = 0.0;
};

/// Coefficients for atoms at distance z from a reflecting boundary and separation L.
struct KossakowskiBoundary {
  double A1 = 0.0, A2 = 0.0;
  double B1 = 0.0, B2 = 0.0;
  double C1 = 0.0, C2 = 0.0;
  double z = 0.0;
  double L = 0.0;
  KossakowskiFree free;
};

/// sin(x)/x, with a series below |x| < 1e-4.
double sinc(double x);

/// Throws Error(kDomain) unless omega > 0 and a > 0.
KossakowskiFree kossakowski_free(const UnruhParams& p);

/// R = tanh(pi omega / a); 0 for a = +inf.
double ratio_from_acceleration(double omega, double accel);

KossakowskiBoundary kossakowski_boundary(const UnruhParams& p, double z, double L);

/// Asymptotic state of the free geometry for initial parameter tau and ratio R.
/// Throws Error(kDomain) for tau outside [-3, 1] or R outside [0, 1].
FanoState equilibrium_free(double tau, double R, const UnitVector& n = UnitVector::z());

/// Closed-form steering-induced coherence of `equilibrium_free(tau, R, n)`: |tau - R^2| / (3 + R^2).
double equilibrium_sic_closed_form(double tau, double R);

struct BoundaryEquilibrium {
  FanoState state;
  double tau_eq = 0.0;
  /// sum_i rho_ii of `state` minus tau_eq.
  double trace_mismatch = 0.0;
  /// True when the 0/0 regime was hit and the free-space state was returned instead.
  bool limit = false;
};

/// D = 2A1^3 - A1^2 A2 - A2 B1 B2 + A1 (B2^2 - A2^2).
double boundary_denominator(const KossakowskiBoundary& k);
bool boundary_is_degenerate(const KossakowskiBoundary& k);

/// Equilibrium with a boundary. When the denominator vanishes (z -> 0 or L -> 0) this throws
/// Error(kDegenerateLimit) unless `limit_tau` is supplied, in which case the free-space
/// equilibrium for that tau is returned with `limit = true`.
BoundaryEquilibrium equilibrium_boundary(const KossakowskiBoundary& k, const UnitVector& n = UnitVector::z(),
                                         std::optional<double> limit_tau = std::nullopt);

/// Time derivative of the Fano coefficients for n = (0,0,1); `tau` is the conserved initial
/// sum of diagonal correlations. Throws Error(kUnsupportedDirection) for any other n.
FanoState ode_rhs(const FanoState& s, const KossakowskiFree& k, const UnitVector& n, double tau);

/// The same family with the B-term signs of the rho_ij equation as originally typeset.
/// Its fixed point is not the equilibrium state; kept for comparison only.
FanoState ode_rhs_as_printed(const FanoState& s, const KossakowskiFree& k, const UnitVector& n, double tau);

/// Dissipator applied directly to a 4x4 state, with Kossakowski matrix
/// a_ij = A delta_ij - i B eps_ijk n_k + C n_i n_j. Any unit n.
DensityMatrix4 lindblad_rhs(const DensityMatrix4& rho, const KossakowskiFree& k, const UnitVector& n,
                            bool include_c = true);

enum class Flow {
  kCoefficientOde,  // ode_rhs
  kLindblad,        // lindblad_rhs with C dropped
};

struct EvolveOptions {
  /// Times at which the state is recorded; empty means 101 evenly spaced points on [0, t_end].
  std::vector<double> sample_times;
  Flow flow = Flow::kCoefficientOde;
};

struct TrajectoryPoint {
  double t = 0.0;
  FanoState state;
  double min_eigenvalue = 0.0;
};

struct EvolveResult {
  std::vector<TrajectoryPoint> samples;
  double step = 0.0;
  double tau = 0.0;
  /// 20 / (4A), the horizon after which the state is expected to sit on the equilibrium.
  double horizon = 0.0;
  bool reached_horizon = false;
  /// First time the max coefficient change over 1/(4A) fell below 1e-12.
  std::optional<double> settled_time;
  /// Max |sum_i rho_ii(t) - tau| over all steps.
  double max_tau_drift = 0.0;
  /// Max coefficient distance between the final state and equilibrium_free(tau, R, n).
  double equilibrium_deviation = 0.0;
};

/// Fixed-step classic RK4 with h = min(0.05 / (12A), t_end / 1000); steps are shortened to land
/// exactly on sample times. Throws Error(kNotPositive) for an unphysical s0, Error(kDomain) for
/// t_end <= 0, Error(kUnphysicalDrift) if a sample has min eigenvalue < -1e-6.
EvolveResult evolve(const FanoState& s0, const KossakowskiFree& k, const UnitVector& n, double t_end,
                    const EvolveOptions& options = {});

struct SteeringNode {
  enum class Kind { kNone, kFinite, kZeroAccelerationLimit };
  Kind kind = Kind::kNone;
  double accel = 0.0;  // meaningful for kFinite
  double R = 0.0;      // sqrt(tau) for kFinite, 1 for the zero-acceleration limit
};

/// Acceleration at which the equilibrium has tau = R^2. Throws Error(kDomain) for tau outside
/// [-3, 1] or omega <= 0.
SteeringNode steering_node_acceleration(double tau, double omega);

}  // namespace unruh_steer
