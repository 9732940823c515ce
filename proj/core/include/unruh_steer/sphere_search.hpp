#pragma once

#include "unruh_steer/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace unruh_steer {

/// Deterministic grid on the unit sphere: uniform in cos(theta) (poles included) and in phi.
/// With `hemisphere` only cos(theta) >= 0 is sampled, for objectives with f(v) = f(-v).
struct SphereGrid {
  int theta_points = 64;
  int phi_points = 128;
  bool hemisphere = false;
};

struct SphereOptimum {
  Vec3 point = Vec3::UnitZ();
  double value = 0.0;
};

namespace detail {

inline Vec3 grid_point(const SphereGrid& g, int i, int j) {
  // i = 0 is theta = 0, so iteration order is lexicographic in (theta, phi).
  const double lo = g.hemisphere ? 0.0 : -1.0;
  const double c = g.theta_points > 1 ? 1.0 - (1.0 - lo) * i / (g.theta_points - 1) : 1.0;
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  const double phi = 2.0 * std::numbers::pi * j / g.phi_points;
  return Vec3(s * std::cos(phi), s * std::sin(phi), c);
}

inline void tangent_basis(const Vec3& m, Vec3& e1, Vec3& e2) {
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(m[i]) < std::abs(m[k])) k = i;
  e1 = m.cross(Vec3::Unit(k)).normalized();
  e2 = m.cross(e1);
}

/// Golden-section maximization of g on [lo, hi].
template <typename G>
double golden_maximize(const G& g, double lo, double hi, double xtol, double& best_value) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = g(x1), f2 = g(x2);
  while (hi - lo > xtol) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = g(x2);
    }
  }
  if (f1 >= f2) {
    best_value = f1;
    return x1;
  }
  best_value = f2;
  return x2;
}

/// Coordinate-wise golden-section ascent in the tangent plane of the current point.
template <typename F>
SphereOptimum refine(const F& f, SphereOptimum start, double half_width, double tolerance) {
  SphereOptimum cur = start;
  double h = half_width;
  // Value error at a smooth maximum is quadratic in the step.
  const double xtol = 1e-2 * std::sqrt(tolerance);
  for (int cycle = 0; cycle < 200; ++cycle) {
    const double before = cur.value;
    const Vec3 origin = cur.point;
    Vec3 e1, e2;
    tangent_basis(cur.point, e1, e2);
    for (const Vec3& e : {e1, e2}) {
      const Vec3 base = cur.point;
      const auto along = [&](double x) { return f(Vec3((base + x * e).normalized())); };
      double value = 0.0;
      const double x = golden_maximize(along, -h, h, xtol, value);
      if (value > cur.value) {
        cur.value = value;
        cur.point = (base + x * e).normalized();
      }
    }
    const double moved = (cur.point - origin).norm();
    if (moved > 0.0) {
      // Pattern step along the net displacement.
      const Vec3 base = cur.point;
      const Vec3 d = (cur.point - origin - (cur.point - origin).dot(base) * base).normalized();
      const auto along = [&](double x) { return f(Vec3((base + x * d).normalized())); };
      double value = 0.0;
      const double x = golden_maximize(along, -2.0 * moved, 2.0 * moved, xtol, value);
      if (value > cur.value) {
        cur.value = value;
        cur.point = (base + x * d).normalized();
      }
    }
    if (cur.value - before <= 1e-3 * tolerance && moved < h) break;
    h = std::clamp(4.0 * moved, 1e-6, half_width);
  }
  return cur;
}

}  // namespace detail

/// Grid search followed by local refinement of the best `candidates` grid points.
/// Ties on the grid resolve to the smallest (theta, phi).
template <typename F>
SphereOptimum maximize_on_sphere(const F& f, const SphereGrid& grid, double tolerance = 1e-8, int candidates = 1) {
  struct Entry {
    double value;
    int index;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(grid.theta_points * grid.phi_points));
  for (int i = 0; i < grid.theta_points; ++i)
    for (int j = 0; j < grid.phi_points; ++j)
      entries.push_back(Entry{f(detail::grid_point(grid, i, j)), i * grid.phi_points + j});

  const auto k = static_cast<std::ptrdiff_t>(std::clamp<std::size_t>(candidates, 1, entries.size()));
  std::partial_sort(entries.begin(), entries.begin() + k, entries.end(), [](const Entry& x, const Entry& y) {
    return x.value > y.value || (x.value == y.value && x.index < y.index);
  });

  const double spacing = std::max(2.0 / std::max(grid.theta_points - 1, 1), 2.0 * std::numbers::pi / grid.phi_points);
  SphereOptimum best;
  bool first = true;
  for (std::ptrdiff_t c = 0; c < k; ++c) {
    const int idx = entries[static_cast<std::size_t>(c)].index;
    SphereOptimum start{detail::grid_point(grid, idx / grid.phi_points, idx % grid.phi_points),
                        entries[static_cast<std::size_t>(c)].value};
    const SphereOptimum r = detail::refine(f, start, spacing, tolerance);
    if (first || r.value > best.value) {
      best = r;
      first = false;
    }
  }
  return best;
}

template <typename F>
SphereOptimum minimize_on_sphere(const F& f, const SphereGrid& grid, double tolerance = 1e-8, int candidates = 1) {
  auto r = maximize_on_sphere([&](const Vec3& v) { return -f(v); }, grid, tolerance, candidates);
  r.value = -r.value;
  return r;
}

}  // namespace unruh_steer
