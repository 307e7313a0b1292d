#pragma once

#include <vector>

#include "egan/types.hpp"

namespace egan {

struct AdamConfig {
  scalar_t alpha = 2e-4;
  scalar_t beta1 = 0.5;
  scalar_t beta2 = 0.99;
  scalar_t eps = 1e-8;
};

/** Moment accumulators for one parameter list, plus the step counter. */
struct AdamState {
  std::vector<matrix_t> m;
  std::vector<matrix_t> v;
  long t = 0;

  static AdamState zeros_like(const std::vector<matrix_t>& params);
};

/**
 * One Adam update with bias correction; advances state.t by exactly one.
 * Entries where both corrected moments vanish are left unchanged, so a zero
 * gradient is a fixed point even with eps = 0.
 */
void adam_step(std::vector<matrix_t>& params, const std::vector<matrix_t>& grads,
               AdamState& state, const AdamConfig& cfg);

}  // namespace egan
