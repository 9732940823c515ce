#include "test_support.hpp"

#include "unruh_steer/errors.hpp"
#include "unruh_steer/random_states.hpp"
#include "unruh_steer/unruh_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace unruh_steer {
namespace {

using std::numbers::pi;
using test::Gen;

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

double max_norm(const FanoState& s) { return max_abs_difference(s, FanoState{}); }

// Random full-rank physical state.
FanoState random_physical(Gen& g) {
  const Mat4c rho = g.ginibre_state();
  return matrix_to_fano(rho);
}

TEST(Kossakowski, FreeValuesAtUnitInverseTemperature) {
  const auto k = kossakowski_free(UnruhParams{1.0, 2.0 * pi});
  // Independent arithmetic on the exponential form: A = (w/4pi)(1 + e^-x)/(1 - e^-x), x = 2pi w/a = 1.
  const double e = std::exp(-1.0);
  const double B = 1.0 / (4.0 * pi);
  const double A = B * (1.0 + e) / (1.0 - e);
  const double C = B * (2.0 - (1.0 + e) / (1.0 - e));
  EXPECT_NEAR(k.A, A, 1e-15);
  EXPECT_NEAR(k.A, 0.17220194120854398, 1e-15);
  EXPECT_NEAR(k.B, 0.0795774715459477, 1e-15);
  EXPECT_NEAR(k.B, B, 1e-16);
  EXPECT_NEAR(k.C, C, 1e-15);
  EXPECT_NEAR(k.C, -0.013046998116648638, 1e-15);
  EXPECT_NEAR(k.R, std::tanh(0.5), 1e-15);
  EXPECT_NEAR(k.R, k.B / k.A, 1e-15);
  EXPECT_NEAR(k.unruh_temperature, 1.0, 1e-15);
}

TEST(Kossakowski, Limits) {
  const auto inf = kossakowski_free(UnruhParams{1.0, std::numeric_limits<double>::infinity()});
  EXPECT_EQ(inf.R, 0.0);
  const auto cold = kossakowski_free(UnruhParams{1.0, 1e-6});
  EXPECT_NEAR(cold.R, 1.0, 1e-12);
  EXPECT_NEAR(cold.A, cold.B, 1e-12);
  EXPECT_EQ(ratio_from_acceleration(1.0, std::numeric_limits<double>::infinity()), 0.0);
  // Small-x series for C joins the direct formula continuously.
  const auto hot = kossakowski_free(UnruhParams{1.0, 2.0 * pi / 1e-3});
  const auto hotter = kossakowski_free(UnruhParams{1.0, 2.0 * pi / 0.99e-3});
  EXPECT_NEAR(hot.C / hot.B, hotter.C / hotter.B, 1e-5);
  EXPECT_NEAR(hot.C / hot.B, -1e-3 / 6.0, 1e-9);
}

TEST(Kossakowski, RejectsInvalid) {
  EXPECT_EQ(code_of([] { kossakowski_free(UnruhParams{0.0, 1.0}); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { kossakowski_free(UnruhParams{1.0, 0.0}); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { kossakowski_free(UnruhParams{1.0, -2.0}); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { kossakowski_boundary(UnruhParams{1.0, 1.0}, 0.0, 1.0); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { kossakowski_boundary(UnruhParams{1.0, 1.0}, 1.0, -1.0); }), ErrorCode::kDomain);
}

TEST(Kossakowski, BoundaryExamples) {
  const UnruhParams p{1.0, 2.0 * pi};
  const auto free = kossakowski_free(p);
  for (double L : {0.0, 0.5, 3.0}) {
    const auto k = kossakowski_boundary(p, pi / 2.0, L);
    EXPECT_NEAR(k.A1, free.A, 1e-15);
    EXPECT_NEAR(k.B1, 1.0 / (4.0 * pi), 1e-15);
  }
  for (double z : {0.3, 1.0, 4.0}) {
    const auto k = kossakowski_boundary(p, z, 1e-9);
    EXPECT_NEAR(k.A2, k.A1, 1e-6);
    EXPECT_NEAR(k.B2, k.B1, 1e-6);
  }
  const auto far = kossakowski_boundary(p, 1e6, 1.0);
  EXPECT_NEAR(far.A1, free.A, 1e-6);
  EXPECT_NEAR(far.A2, free.A * std::sin(1.0), 1e-6);
  EXPECT_NEAR(far.C1, -far.A1, 0.0);
  EXPECT_NEAR(far.C2, -far.A2, 0.0);
}

TEST(Sinc, SeriesBranch) {
  EXPECT_EQ(sinc(0.0), 1.0);
  for (double x : {1e-8, 5e-5, 9.99e-5, 1.01e-4, 1e-3}) EXPECT_NEAR(sinc(x), std::sin(x) / x, 2.3e-16);
  EXPECT_NEAR(sinc(pi), 0.0, 1e-16);
}

TEST(EquilibriumFree, Examples) {
  const auto singlet = equilibrium_free(-3.0, 0.7);
  EXPECT_LT(singlet.a.norm() + singlet.b.norm(), 1e-15);
  EXPECT_LT((singlet.T + Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-15);

  const auto node = equilibrium_free(0.25, 0.5);
  EXPECT_NEAR(node.T(0, 0), 0.0, 1e-16);
  EXPECT_NEAR(node.T(1, 1), 0.0, 1e-16);

  const auto s = equilibrium_free(0.0, 1.0);
  EXPECT_NEAR(s.a[2], -0.75, 1e-15);
  EXPECT_NEAR(s.b[2], -0.75, 1e-15);
  EXPECT_NEAR(s.T(0, 0), -0.25, 1e-15);
  EXPECT_NEAR(s.T(1, 1), -0.25, 1e-15);
  EXPECT_NEAR(s.T(2, 2), 0.5, 1e-15);
}

TEST(EquilibriumFree, LongTimeLimitOfEvolution) {
  const auto k = kossakowski_free(UnruhParams{1.0, 1e-6});  // R = 1
  const auto r = evolve(FanoState{}, k, UnitVector::z(), 40.0 / (4.0 * k.A));
  EXPECT_LT(max_abs_difference(r.samples.back().state, equilibrium_free(0.0, 1.0)), 1e-6);
}

TEST(EquilibriumFree, PhysicalWithConservedTraceOnGrid) {
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const double tau = -3.0 + 4.0 * i / 20.0;
      const double R = j / 20.0;
      const auto s = equilibrium_free(tau, R);
      EXPECT_NEAR(s.correlation_trace(), tau, 1e-14);
      EXPECT_GE(min_eigenvalue(fano_to_matrix(s)), -1e-12) << tau << " " << R;
    }
}

TEST(EquilibriumFree, FixedPointOfDissipatorForAnyDirection) {
  Gen g(31);
  for (int n = 0; n < 50; ++n) {
    const UnitVector dir(g.direction());
    const double a = g.uniform(0.5, 20.0);
    const auto k = kossakowski_free(UnruhParams{1.0, a});
    const double tau = g.uniform(-3.0, 1.0);
    const auto rho = fano_to_matrix(equilibrium_free(tau, k.R, dir));
    EXPECT_LT(test::max_abs(lindblad_rhs(rho, k, dir, true)), 1e-14);
    EXPECT_LT(test::max_abs(lindblad_rhs(rho, k, dir, false)), 1e-14);
  }
}

TEST(EquilibriumFree, RejectsOutOfRange) {
  EXPECT_EQ(code_of([] { equilibrium_free(1.5, 0.5); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { equilibrium_free(-3.1, 0.5); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { equilibrium_free(0.0, 1.2); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { equilibrium_free(0.0, -0.1); }), ErrorCode::kDomain);
}

TEST(EquilibriumBoundary, ExampleIsDiagonal) {
  const auto k = kossakowski_boundary(UnruhParams{1.0, 2.0 * pi}, 1.0, 1.0);
  const auto eq = equilibrium_boundary(k);
  EXPECT_FALSE(eq.limit);
  const auto& s = eq.state;
  EXPECT_NEAR(s.a[0], 0.0, 0.0);
  EXPECT_NEAR(s.a[1], 0.0, 0.0);
  EXPECT_NE(s.a[2], 0.0);
  EXPECT_NE(s.b[2], 0.0);
  EXPECT_NE(s.T(2, 2), 0.0);
  Mat3 off = s.T;
  off(2, 2) = 0.0;
  EXPECT_EQ(off.cwiseAbs().maxCoeff(), 0.0);
  const Mat4c m = fano_to_matrix(s);
  const Mat4c d = m.diagonal().asDiagonal();
  EXPECT_LT(test::max_abs(m - d), 1e-16);
  EXPECT_LT(std::abs(eq.trace_mismatch), 1e-14);
  // Reduces to a product of two thermal qubits with Bloch -R z.
  EXPECT_NEAR(s.b[2], -k.free.R, 1e-12);
  EXPECT_NEAR(s.T(2, 2), k.free.R * k.free.R, 1e-12);
}

TEST(EquilibriumBoundary, DenominatorFactorization) {
  Gen g(32);
  for (int n = 0; n < 100; ++n) {
    const auto k = kossakowski_boundary(UnruhParams{1.0, g.uniform(0.5, 50.0)}, g.uniform(0.05, 5.0), g.uniform(0.0, 5.0));
    const double A = k.free.A;
    const double g1 = k.A1 / A;
    const double g2 = k.A2 / A;
    const double oracle = A * A * A * g1 * (g1 - g2) * (2.0 * g1 + g2);
    EXPECT_NEAR(boundary_denominator(k), oracle, 1e-12 * std::max(1.0, std::abs(oracle)));
  }
}

TEST(EquilibriumBoundary, DegenerateLimit) {
  const auto k = kossakowski_boundary(UnruhParams{1.0, 2.0 * pi}, 1e-9, 1e-9);
  EXPECT_TRUE(boundary_is_degenerate(k));
  EXPECT_EQ(code_of([&] { equilibrium_boundary(k); }), ErrorCode::kDegenerateLimit);
  const auto eq = equilibrium_boundary(k, UnitVector::z(), 0.5);
  EXPECT_TRUE(eq.limit);
  EXPECT_LT(max_abs_difference(eq.state, equilibrium_free(0.5, k.free.R)), 1e-15);
}

TEST(OdeRhs, EquilibriumIsFixedPoint) {
  for (double a : {0.5, 2.0 * pi, 40.0})
    for (double tau : {-3.0, -1.2, 0.0, 0.3, 1.0}) {
      const auto k = kossakowski_free(UnruhParams{1.0, a});
      EXPECT_LT(max_norm(ode_rhs(equilibrium_free(tau, k.R), k, UnitVector::z(), tau)), 1e-12);
    }
}

TEST(OdeRhs, CorrelationTraceRelaxes) {
  Gen g(33);
  const auto k = kossakowski_free(UnruhParams{1.0, 2.0 * pi});
  for (int n = 0; n < 100; ++n) {
    FanoState s;
    for (int i = 0; i < 3; ++i) {
      s.a[i] = g.uniform(-1, 1);
      s.b[i] = g.uniform(-1, 1);
      for (int j = 0; j < 3; ++j) s.T(i, j) = g.uniform(-1, 1);
    }
    const double tau = g.uniform(-3, 1);
    const auto d = ode_rhs(s, k, UnitVector::z(), tau);
    EXPECT_NEAR(d.T.trace(), -12.0 * k.A * (s.T.trace() - tau), 1e-12);
  }
}

TEST(OdeRhs, MaximallyMixedTermByTerm) {
  const auto k = kossakowski_free(UnruhParams{1.0, 3.0});
  const auto d = ode_rhs(FanoState{}, k, UnitVector::z(), 0.0);
  EXPECT_LT((d.a - Vec3(0, 0, -4.0 * k.B)).norm(), 1e-15);
  EXPECT_LT((d.b - Vec3(0, 0, -4.0 * k.B)).norm(), 1e-15);
  EXPECT_EQ(d.T.cwiseAbs().maxCoeff(), 0.0);
}

TEST(OdeRhs, MatchesLindbladOracle) {
  Gen g(34);
  for (int n = 0; n < 200; ++n) {
    const auto k = kossakowski_free(UnruhParams{1.0, g.uniform(0.3, 30.0)});
    const FanoState s = random_physical(g);
    const double tau = s.correlation_trace();
    const auto d = ode_rhs(s, k, UnitVector::z(), tau);
    const auto oracle = matrix_to_fano(lindblad_rhs(fano_to_matrix(s), k, UnitVector::z(), false));
    EXPECT_LT(max_abs_difference(d, oracle), 1e-14);
  }
}

TEST(OdeRhs, PrintedSignsMissTheEquilibrium) {
  const auto k = kossakowski_free(UnruhParams{1.0, 2.0 * pi});
  const auto eq = equilibrium_free(0.0, k.R);
  EXPECT_GT(max_norm(ode_rhs_as_printed(eq, k, UnitVector::z(), 0.0)), 1e-3);
}

TEST(OdeRhs, RejectsOtherDirections) {
  const auto k = kossakowski_free(UnruhParams{1.0, 1.0});
  EXPECT_EQ(code_of([&] { ode_rhs(FanoState{}, k, UnitVector(Vec3::UnitX()), 0.0); }),
            ErrorCode::kUnsupportedDirection);
}

TEST(Evolve, EquilibriumStaysPut) {
  const auto k = kossakowski_free(UnruhParams{1.0, 2.0 * pi});
  const auto eq = equilibrium_free(-0.4, k.R);
  const auto r = evolve(eq, k, UnitVector::z(), 10.0);
  for (const auto& p : r.samples) EXPECT_LT(max_abs_difference(p.state, eq), 1e-10);
}

TEST(Evolve, ProductStateConverges) {
  const auto k = kossakowski_free(UnruhParams{1.0, 2.0 * pi});
  FanoState up;
  up.a = Vec3::UnitZ();
  up.b = Vec3::UnitZ();
  up.T(2, 2) = 1.0;
  const auto r = evolve(up, k, UnitVector::z(), 20.0 / (4.0 * k.A));
  EXPECT_TRUE(r.reached_horizon);
  EXPECT_NEAR(r.tau, 1.0, 0.0);
  EXPECT_LT(r.equilibrium_deviation, 1e-6);
  EXPECT_LT(max_abs_difference(r.samples.back().state, equilibrium_free(1.0, 0.46211715726000974)), 1e-6);
  EXPECT_LT(r.max_tau_drift, 1e-9);
  ASSERT_EQ(r.samples.size(), 101u);
  EXPECT_EQ(r.samples.front().t, 0.0);
  EXPECT_EQ(r.samples.back().t, 20.0 / (4.0 * k.A));
}

TEST(Evolve, TraceConservedAndFlowsAgree) {
  RandomStateGenerator gen(35);
  const auto k = kossakowski_free(UnruhParams{1.0, 2.0 * pi});
  for (int n = 0; n < 10; ++n) {
    const FanoState s0 = gen.mixed_fano_state();
    const std::vector<double> times = {0.0, 0.5, 1.0, 3.0, 7.0};
    const auto ode = evolve(s0, k, UnitVector::z(), 7.0, EvolveOptions{times, Flow::kCoefficientOde});
    const auto lin = evolve(s0, k, UnitVector::z(), 7.0, EvolveOptions{times, Flow::kLindblad});
    ASSERT_EQ(ode.samples.size(), times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      EXPECT_EQ(ode.samples[i].t, times[i]);
      EXPECT_NEAR(ode.samples[i].state.correlation_trace(), s0.correlation_trace(), 1e-9);
      EXPECT_LT(max_abs_difference(ode.samples[i].state, lin.samples[i].state), 1e-12);
      EXPECT_GE(ode.samples[i].min_eigenvalue, -1e-10);
    }
  }
}

TEST(Evolve, FourthOrderConvergence) {
  // Halving the step reduces the error against a fine reference by about 16.
  const auto k = kossakowski_free(UnruhParams{1.0, 2.0});
  RandomStateGenerator gen(36);
  const FanoState s0 = gen.mixed_fano_state();
  const double tau = s0.correlation_trace();
  const auto f = [&](const FanoState& y) { return ode_rhs(y, k, UnitVector::z(), tau); };
  const auto integrate = [&](int steps) {
    FanoState y = s0;
    const double h = 1.0 / steps;
    for (int i = 0; i < steps; ++i) {
      const FanoState k1 = f(y);
      const FanoState k2 = f(y + (0.5 * h) * k1);
      const FanoState k3 = f(y + (0.5 * h) * k2);
      const FanoState k4 = f(y + h * k3);
      y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
  };
  const FanoState ref = integrate(4096);
  const double e1 = max_abs_difference(integrate(16), ref);
  const double e2 = max_abs_difference(integrate(32), ref);
  EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.3);
  const auto r = evolve(s0, k, UnitVector::z(), 1.0, EvolveOptions{{1.0}, Flow::kCoefficientOde});
  EXPECT_LT(max_abs_difference(r.samples.back().state, ref), 1e-10);
}

TEST(Evolve, RejectsBadInput) {
  const auto k = kossakowski_free(UnruhParams{1.0, 2.0});
  FanoState bad;
  bad.T = -1.5 * Mat3::Identity();
  EXPECT_EQ(code_of([&] { evolve(bad, k, UnitVector::z(), 1.0); }), ErrorCode::kNotPositive);
  EXPECT_EQ(code_of([&] { evolve(FanoState{}, k, UnitVector::z(), 0.0); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([&] { evolve(FanoState{}, k, UnitVector::z(), 1.0, EvolveOptions{{2.0}, Flow::kCoefficientOde}); }),
            ErrorCode::kDomain);
}

TEST(SteeringNode, Examples) {
  const auto node = steering_node_acceleration(0.25, 1.0);
  ASSERT_EQ(node.kind, SteeringNode::Kind::kFinite);
  // artanh(0.5) = ln(3)/2
  EXPECT_NEAR(node.accel, pi / (0.5 * std::log(3.0)), 1e-12);
  EXPECT_NEAR(node.accel, 5.719201734760255, 1e-12);
  EXPECT_NEAR(node.R, 0.5, 0.0);
  EXPECT_EQ(steering_node_acceleration(-1.0, 1.0).kind, SteeringNode::Kind::kNone);
  EXPECT_EQ(steering_node_acceleration(0.0, 1.0).kind, SteeringNode::Kind::kNone);
  EXPECT_EQ(steering_node_acceleration(1.0, 1.0).kind, SteeringNode::Kind::kZeroAccelerationLimit);
  EXPECT_EQ(code_of([] { steering_node_acceleration(1.5, 1.0); }), ErrorCode::kDomain);
}

TEST(SteeringNode, AgreesWithBisectionOnClosedForm) {
  for (double tau : {0.1, 0.25, 0.5, 0.9}) {
    for (double omega : {0.5, 1.0, 2.0}) {
      // tau - R(a)^2 changes sign at the node; R decreases with a.
      double lo = 1e-3, hi = 1e4;
      for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);
        const double R = ratio_from_acceleration(omega, mid);
        (tau - R * R < 0.0 ? lo : hi) = mid;
      }
      const auto node = steering_node_acceleration(tau, omega);
      EXPECT_NEAR(node.accel / lo, 1.0, 1e-12);
      EXPECT_LT(equilibrium_sic_closed_form(tau, node.R), 1e-15);
    }
  }
}

}  // namespace
}  // namespace unruh_steer
