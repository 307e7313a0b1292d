#pragma once

#include <cstdint>
#include <string_view>

#include "egan/types.hpp"

namespace egan {

/**
 * Counter-based deterministic random stream.
 *
 * The i-th output is a pure function of (key, i), so a stream is fully
 * reproducible from its master seed and name. Named sub-streams derived
 * from the same master seed are statistically independent, which keeps
 * e.g. parameter initialization untouched when batch sizes change.
 */
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::string_view stream_name);

  std::uint64_t next_u64();

  /** Uniform draw in [0, 1) with 53 bits of precision. */
  scalar_t next_uniform();

  /** Standard normal draw (Box-Muller, two uniforms per call). */
  scalar_t next_gaussian();

  /** Uniform integer in [0, n). Requires n > 0. */
  std::uint64_t next_below(std::uint64_t n);

  /** Matrix of i.i.d. standard normals, filled row-major. */
  matrix_t gaussian_matrix(index_t rows, index_t cols);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace egan
