#include "unruh_steer/unruh_model.hpp"

#include "unruh_steer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace unruh_steer {

namespace {

constexpr double kPi = std::numbers::pi;

void require_z_direction(const UnitVector& n) {
  if ((n.vec() - Vec3::UnitZ()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::kUnsupportedDirection, "coefficient ODE is only defined for n = (0,0,1)");
}

void require_tau_R(double tau, double R) {
  if (!(tau >= -3.0 && tau <= 1.0)) throw Error(ErrorCode::kDomain, "tau must lie in [-3, 1]");
  if (!(R >= 0.0 && R <= 1.0)) throw Error(ErrorCode::kDomain, "R must lie in [0, 1]");
}

FanoState coefficient_rhs(const FanoState& s, const KossakowskiFree& k, const Vec3& n, double tau, double sign) {
  const double A = k.A, B = k.B;
  const Mat3 I = Mat3::Identity();
  FanoState d;
  d.a = -4.0 * A * s.a - 2.0 * B * (2.0 + tau) * n + 2.0 * B * (s.T.transpose() * n);
  d.b = -4.0 * A * s.b - 2.0 * B * (2.0 + tau) * n + 2.0 * B * (s.T * n);
  const Mat3 coupling = 4.0 * B * (n * s.b.transpose() + s.a * n.transpose()) +
                        2.0 * B * (n * s.a.transpose() + s.b * n.transpose()) -
                        2.0 * B * n.dot(s.a + s.b) * I;
  d.T = -4.0 * A * (2.0 * s.T + s.T.transpose() - tau * I) + sign * coupling;
  return d;
}

template <typename F>
FanoState rk4_step(const F& f, const FanoState& y, double h) {
  const FanoState k1 = f(y);
  const FanoState k2 = f(y + (0.5 * h) * k1);
  const FanoState k3 = f(y + (0.5 * h) * k2);
  const FanoState k4 = f(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double ratio_from_acceleration(double omega, double accel) {
  if (!(omega > 0.0) || !(accel > 0.0)) throw Error(ErrorCode::kDomain, "omega and a must be positive");
  if (std::isinf(accel)) return 0.0;
  return std::tanh(kPi * omega / accel);
}

KossakowskiFree kossakowski_free(const UnruhParams& p) {
  if (!(p.omega > 0.0) || !std::isfinite(p.omega)) throw Error(ErrorCode::kDomain, "omega must be positive");
  if (!(p.accel > 0.0)) throw Error(ErrorCode::kDomain, "acceleration must be positive");

  KossakowskiFree k;
  k.B = p.omega / (4.0 * kPi);
  if (std::isinf(p.accel)) {
    k.A = std::numeric_limits<double>::infinity();
    k.C = 0.0;
    k.R = 0.0;
    k.unruh_temperature = std::numeric_limits<double>::infinity();
    return k;
  }
  k.unruh_temperature = p.accel / (2.0 * kPi);
  const double x = p.omega / k.unruh_temperature;  // beta_U * omega
  const double e = std::exp(-x);
  const double thermal = (1.0 + e) / -std::expm1(-x);  // (1 + e^-x) / (1 - e^-x)
  k.A = k.B * thermal;
  // 2/x - coth(x/2) = -x/6 + x^3/360 - ... cancels badly for small x.
  k.C = x < 1e-3 ? k.B * (-x / 6.0 + x * x * x / 360.0) : k.B * (2.0 / x - thermal);
  k.R = k.B / k.A;
  return k;
}

KossakowskiBoundary kossakowski_boundary(const UnruhParams& p, double z, double L) {
  if (!(z > 0.0) || !std::isfinite(z)) throw Error(ErrorCode::kDomain, "boundary distance z must be positive");
  if (!(L >= 0.0) || !std::isfinite(L)) throw Error(ErrorCode::kDomain, "separation L must be non-negative");
  KossakowskiBoundary k;
  k.free = kossakowski_free(p);
  k.z = z;
  k.L = L;
  const double w = p.omega;
  const double self = 1.0 - sinc(2.0 * z * w);
  const double cross = sinc(L * w) - sinc(std::sqrt(L * L + 4.0 * z * z) * w);
  k.A1 = k.free.A * self;
  k.A2 = k.free.A * cross;
  k.B1 = k.free.B * self;
  k.B2 = k.free.B * cross;
  k.C1 = -k.A1;
  k.C2 = -k.A2;
  return k;
}

FanoState equilibrium_free(double tau, double R, const UnitVector& n) {
  require_tau_R(tau, R);
  const double R2 = R * R;
  const double denom = 3.0 + R2;
  const Vec3& v = n.vec();
  FanoState s;
  s.a = -R * (tau + 3.0) / denom * v;
  s.b = s.a;
  s.T = ((tau - R2) * Mat3::Identity() + R2 * (tau + 3.0) * v * v.transpose()) / denom;
  return s;
}

double equilibrium_sic_closed_form(double tau, double R) {
  require_tau_R(tau, R);
  return std::abs(tau - R * R) / (3.0 + R * R);
}

double boundary_denominator(const KossakowskiBoundary& k) {
  const double A1 = k.A1, A2 = k.A2, B1 = k.B1, B2 = k.B2;
  return 2.0 * A1 * A1 * A1 - A1 * A1 * A2 - A2 * B1 * B2 + A1 * (B2 * B2 - A2 * A2);
}

bool boundary_is_degenerate(const KossakowskiBoundary& k) {
  const double scale = std::max({std::abs(k.A1), std::abs(k.A2), std::abs(k.B1), std::abs(k.B2)});
  const double d = boundary_denominator(k);
  return !std::isfinite(d) || std::abs(d) <= 1e-14 * scale * scale * scale || scale == 0.0;
}

BoundaryEquilibrium equilibrium_boundary(const KossakowskiBoundary& k, const UnitVector& n,
                                         std::optional<double> limit_tau) {
  BoundaryEquilibrium out;
  if (boundary_is_degenerate(k)) {
    if (!limit_tau)
      throw Error(ErrorCode::kDegenerateLimit, "boundary equilibrium takes 0/0 form; supply tau for the limit");
    out.state = equilibrium_free(*limit_tau, k.free.R, n);
    out.tau_eq = *limit_tau;
    out.trace_mismatch = out.state.correlation_trace() - out.tau_eq;
    out.limit = true;
    return out;
  }
  const double A1 = k.A1, A2 = k.A2, B1 = k.B1, B2 = k.B2;
  const double D = boundary_denominator(k);
  const Vec3& v = n.vec();
  out.tau_eq = (2.0 * A1 + A2) * B1 * (B1 - B2) / D;
  out.state.a = -(A1 - A2) * B1 * (2.0 * A1 + A2) / D * v;
  out.state.b = out.state.a;
  out.state.T = (A1 - A2) * B1 * (2.0 * B1 + B2) / D * v * v.transpose();
  out.trace_mismatch = out.state.correlation_trace() - out.tau_eq;
  return out;
}

FanoState ode_rhs(const FanoState& s, const KossakowskiFree& k, const UnitVector& n, double tau) {
  require_z_direction(n);
  return coefficient_rhs(s, k, n.vec(), tau, -1.0);
}

FanoState ode_rhs_as_printed(const FanoState& s, const KossakowskiFree& k, const UnitVector& n, double tau) {
  require_z_direction(n);
  return coefficient_rhs(s, k, n.vec(), tau, +1.0);
}

DensityMatrix4 lindblad_rhs(const DensityMatrix4& rho, const KossakowskiFree& k, const UnitVector& n,
                            bool include_c) {
  static const auto ops = [] {
    std::array<std::array<Mat4c, 3>, 2> o;
    for (int i = 0; i < 3; ++i) {
      o[0][i] = pauli_product(i + 1, 0);
      o[1][i] = pauli_product(0, i + 1);
    }
    return o;
  }();
  const auto& sa = ops[0];
  const auto& sb = ops[1];
  const complex I(0.0, 1.0);
  const auto anti = [&](const Mat4c& x) -> Mat4c { return x * rho + rho * x; };

  DensityMatrix4 out = DensityMatrix4::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      complex a_ij = i == j ? k.A : 0.0;
      for (int l = 0; l < 3; ++l) {
        const int eps = (i - j) * (j - l) * (l - i) / 2;  // Levi-Civita for indices 0..2
        a_ij -= I * k.B * static_cast<double>(eps) * n[l];
      }
      if (include_c) a_ij += k.C * n[i] * n[j];
      if (a_ij == 0.0) continue;
      Mat4c term = sa[j] * rho * sa[i] - 0.5 * anti(sa[i] * sa[j]);
      term += sb[j] * rho * sb[i] - 0.5 * anti(sb[i] * sb[j]);
      term += sa[j] * rho * sb[i] - 0.5 * anti(sa[i] * sb[j]);
      term += sb[j] * rho * sa[i] - 0.5 * anti(sa[j] * sb[i]);
      out += a_ij * term;
    }
  }
  return out;
}

EvolveResult evolve(const FanoState& s0, const KossakowskiFree& k, const UnitVector& n, double t_end,
                    const EvolveOptions& options) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::kDomain, "t_end must be positive");
  if (!(k.A > 0.0) || !std::isfinite(k.A)) throw Error(ErrorCode::kDomain, "evolution needs a finite A > 0");
  if (!is_physical(s0)) throw Error(ErrorCode::kNotPositive, "initial state is not positive semidefinite");
  if (options.flow == Flow::kCoefficientOde) require_z_direction(n);

  EvolveResult out;
  out.tau = s0.correlation_trace();
  out.horizon = 20.0 / (4.0 * k.A);
  out.step = std::min(0.05 / (12.0 * k.A), t_end / 1000.0);

  std::vector<double> samples = options.sample_times;
  if (samples.empty()) {
    for (int i = 0; i < 100; ++i) samples.push_back(t_end * i / 100.0);
    samples.push_back(t_end);
  }
  std::sort(samples.begin(), samples.end());
  if (samples.front() < 0.0 || samples.back() > t_end)
    throw Error(ErrorCode::kDomain, "sample times must lie in [0, t_end]");

  const double tau = out.tau;
  const auto rhs = [&](const FanoState& s) {
    if (options.flow == Flow::kCoefficientOde) return ode_rhs(s, k, n, tau);
    return matrix_to_fano(lindblad_rhs(fano_to_matrix(s), k, n, false));
  };
  const auto record = [&](double t, const FanoState& s) {
    const double me = min_eigenvalue(fano_to_matrix(s));
    if (me < -1e-6) throw Error(ErrorCode::kUnphysicalDrift, "state left the positive cone at t = " + std::to_string(t));
    out.samples.push_back(TrajectoryPoint{t, s, me});
  };

  FanoState state = s0;
  double t = 0.0;
  std::size_t next = 0;
  const double snap = 1e-12 * t_end;
  while (next < samples.size() && samples[next] <= snap) record(samples[next++], state);

  const double settle_window = 1.0 / (4.0 * k.A);
  FanoState checkpoint = state;
  double checkpoint_t = 0.0;

  while (t < t_end - snap) {
    const double target = next < samples.size() ? samples[next] : t_end;
    const double h = std::min(out.step, target - t);
    state = rk4_step(rhs, state, h);
    t = target - t - h <= snap ? target : t + h;
    out.max_tau_drift = std::max(out.max_tau_drift, std::abs(state.correlation_trace() - tau));

    if (t - checkpoint_t >= settle_window) {
      if (!out.settled_time && max_abs_difference(state, checkpoint) < 1e-12) out.settled_time = t;
      checkpoint = state;
      checkpoint_t = t;
    }
    while (next < samples.size() && samples[next] <= t + snap) record(samples[next++], state);
  }

  out.reached_horizon = t_end >= out.horizon;
  const double tau_clamped = std::clamp(tau, -3.0, 1.0);
  out.equilibrium_deviation = max_abs_difference(state, equilibrium_free(tau_clamped, k.R, n));
  return out;
}

SteeringNode steering_node_acceleration(double tau, double omega) {
  if (!(tau >= -3.0 && tau <= 1.0)) throw Error(ErrorCode::kDomain, "tau must lie in [-3, 1]");
  if (!(omega > 0.0)) throw Error(ErrorCode::kDomain, "omega must be positive");
  SteeringNode node;
  if (tau <= 0.0) return node;
  if (tau >= 1.0) {
    node.kind = SteeringNode::Kind::kZeroAccelerationLimit;
    node.R = 1.0;
    return node;
  }
  node.kind = SteeringNode::Kind::kFinite;
  node.R = std::sqrt(tau);
  node.accel = kPi * omega / std::atanh(node.R);
  return node;
}

}  // namespace unruh_steer
