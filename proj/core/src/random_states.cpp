#include "unruh_steer/random_states.hpp"

#include <cmath>
#include <numbers>

namespace unruh_steer {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomStateGenerator RandomStateGenerator::for_index(std::uint64_t seed, std::uint64_t index) {
  return RandomStateGenerator(splitmix64(splitmix64(seed) ^ index));
}

double RandomStateGenerator::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RandomStateGenerator::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec3 RandomStateGenerator::direction() {
  Vec3 v;
  do {
    v = Vec3(normal(), normal(), normal());
  } while (v.norm() < 1e-12);
  return v.normalized();
}

DensityMatrix4 RandomStateGenerator::mixed_state() {
  const int components = 1 + static_cast<int>(uniform() * 4.0);
  DensityMatrix4 rho = DensityMatrix4::Zero();
  double total = 0.0;
  for (int c = 0; c < components; ++c) {
    Eigen::Vector4cd psi;
    for (int k = 0; k < 4; ++k) psi[k] = complex(normal(), normal());
    psi.normalize();
    const double w = uniform() + 1e-3;
    rho += w * psi * psi.adjoint();
    total += w;
  }
  rho /= total;
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace unruh_steer
