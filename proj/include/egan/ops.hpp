#pragma once

#include <cmath>

#include "egan/types.hpp"

namespace egan::ops {

/** Negative slope of the leaky rectifier used throughout the toy nets. */
inline constexpr scalar_t kLeakySlope = 0.2;

/** Probabilities are clamped to [kProbEps, 1 - kProbEps] before any log. */
inline constexpr scalar_t kProbEps = 1e-7;

/** y = x * w with bias row broadcast over the batch. Shapes: (n,i)*(i,o)+(1,o). */
inline matrix_t affine(const matrix_t& x, const matrix_t& w, const matrix_t& b) {
  matrix_t y = x * w;
  y.rowwise() += b.row(0);
  return y;
}

inline matrix_t leaky_relu(const matrix_t& x, scalar_t slope = kLeakySlope) {
  return x.unaryExpr([slope](scalar_t v) { return v > 0 ? v : slope * v; });
}

inline matrix_t tanh(const matrix_t& x) {
  return x.array().tanh().matrix();
}

/** Logistic sigmoid in branch form; stable for large |x|. */
inline matrix_t sigmoid(const matrix_t& x) {
  return x.unaryExpr([](scalar_t v) {
    if (v >= 0) return 1.0 / (1.0 + std::exp(-v));
    const scalar_t e = std::exp(v);
    return e / (1.0 + e);
  });
}

inline matrix_t clamp(const matrix_t& x, scalar_t lo, scalar_t hi) {
  return x.array().min(hi).max(lo).matrix();
}

inline matrix_t log(const matrix_t& x) {
  return x.array().log().matrix();
}

inline matrix_t square(const matrix_t& x) {
  return x.array().square().matrix();
}

/** Mean over all entries, as a 1x1 matrix. */
inline matrix_t mean(const matrix_t& x) {
  matrix_t y(1, 1);
  y(0, 0) = x.mean();
  return y;
}

}  // namespace egan::ops
