#pragma once

#include <filesystem>
#include <optional>

#include "egan/rng.hpp"
#include "egan/types.hpp"

namespace egan {

/** Isotropic Gaussian mixture with uniform component weights. */
struct GaussianMixture {
  matrix_t centers;  // k x 2
  scalar_t sigma;
};

/** 8 components equally spaced on a circle. */
GaussianMixture ring8(scalar_t radius = 2.0, scalar_t sigma = 0.02);

/** 5x5 grid of components spanning [-half_span, half_span]^2. */
GaussianMixture grid25(scalar_t half_span = 4.0, scalar_t sigma = 0.05);

/** n i.i.d. draws: uniform component, then isotropic Gaussian around it. */
matrix_t sample_mixture(const GaussianMixture& gm, index_t n, RandomStream& rng);

/** Batch of i.i.d. standard normal noise rows. */
matrix_t sample_noise(index_t n, index_t z_dim, RandomStream& rng);

struct NoiseSampler {
  index_t z_dim;
  matrix_t sample(index_t n, RandomStream& rng) const { return sample_noise(n, z_dim, rng); }
};

/** 2D data source: a synthetic mixture or a CSV file of points. */
class DataSampler {
 public:
  static DataSampler from_mixture(GaussianMixture gm);

  /** CSV with two comma-separated reals per line, no header. */
  static DataSampler from_file(const std::filesystem::path& path);

  matrix_t sample(index_t n, RandomStream& rng) const;

  /** The underlying mixture, when the source is synthetic. */
  const GaussianMixture* mixture() const {
    return mixture_ ? &*mixture_ : nullptr;
  }

 private:
  DataSampler() = default;
  std::optional<GaussianMixture> mixture_;
  matrix_t points_;  // file rows
};

}  // namespace egan
