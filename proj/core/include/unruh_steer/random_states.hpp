#pragma once

#include "unruh_steer/qmat.hpp"

#include <cstdint>
#include <random>

namespace unruh_steer {

/// Reproducible two-qubit state generator: a mixture of 1-4 Haar-like random pure states with
/// uniformly drawn weights. Gaussian variates come from Box-Muller on raw mt19937_64 output, so
/// the stream depends only on the seed, not on the standard library implementation.
class RandomStateGenerator {
 public:
  explicit RandomStateGenerator(std::uint64_t seed) : engine_(seed) {}

  /// Generator for item `index` of a run seeded with `seed`; independent of evaluation order.
  static RandomStateGenerator for_index(std::uint64_t seed, std::uint64_t index);

  double uniform();  // [0, 1)
  double normal();
  DensityMatrix4 mixed_state();
  FanoState mixed_fano_state() { return matrix_to_fano(mixed_state()); }
  /// Unit vector uniform on the sphere.
  Vec3 direction();

 private:
  std::mt19937_64 engine_;
};

}  // namespace unruh_steer
