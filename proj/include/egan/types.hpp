#pragma once

#include <Eigen/Dense>

namespace egan {

/** Scalar type. All numerics run in 64-bit floating point. */
using scalar_t = double;

/** Dense dynamic matrix (batch x feature, weight matrices, 1x1 scalars). */
using matrix_t = Eigen::Matrix<scalar_t, Eigen::Dynamic, Eigen::Dynamic>;

/** Dense column vector. */
using vector_t = Eigen::Matrix<scalar_t, Eigen::Dynamic, 1>;

using index_t = Eigen::Index;

}  // namespace egan
