#pragma once

#include <array>
#include <span>
#include <vector>

#include "egan/data.hpp"
#include "egan/evolution.hpp"
#include "egan/mlp.hpp"
#include "egan/types.hpp"

namespace egan {

struct ModeCoverageReport {
  int modes_captured = 0;  // >= capture_threshold high-quality samples claimed
  int modes_hit = 0;       // >= 1 high-quality sample claimed
  std::vector<long> per_mode_counts;
  scalar_t high_quality_ratio = 0;
  long n_samples = 0;
  scalar_t capture_threshold = 0;
};

/**
 * A sample is high quality iff it lies within k_sigma * sigma of its nearest
 * center; a mode is captured iff it claims at least max(1, 0.2 * n / k) such
 * samples. Both the strict count and the any-sample count are reported.
 */
ModeCoverageReport mode_coverage(const matrix_t& samples, const GaussianMixture& gm,
                                 scalar_t k_sigma = 3.0);

struct KdeGrid {
  scalar_t xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  index_t resolution = 0;
  scalar_t bandwidth = 0;
  matrix_t density;  // density(i, j) at (x_j, y_i), cell centers

  scalar_t cell_area() const;
  scalar_t riemann_sum() const;
};

/** Gaussian-kernel density estimate on a regular grid of cell centers. */
KdeGrid kde_grid(const matrix_t& samples, scalar_t bandwidth, scalar_t xmin, scalar_t xmax,
                 scalar_t ymin, scalar_t ymax, index_t resolution);

struct OptimalDiscriminatorReport {
  vector_t closed_form;  // p_data / (p_data + p_g) per point
  vector_t grid_argmax;  // brute-force maximizer per point
  scalar_t max_deviation = 0;
};

/**
 * Brute-force per-point maximization of the discriminator objective
 * p_data * log D + p_g * log(1 - D) over a D grid in (0, 1); checks the
 * maximizer against the closed form. Both inputs must be normalized.
 */
OptimalDiscriminatorReport optimal_discriminator_check(const vector_t& p_data,
                                                       const vector_t& p_g,
                                                       scalar_t grid_step = 1e-3);

struct SelectionWindow {
  long start = 0;
  long length = 0;
  std::array<long, 3> counts{};  // indexed by Mutation order
};

struct MutationSelectionLog {
  long window = 0;
  std::vector<SelectionWindow> windows;
  std::array<long, 3> totals{};
};

/** Windowed counts of surviving mutation tags; a trailing partial window is
    kept with its own length. */
MutationSelectionLog selection_histogram(std::span<const EvolutionStepLog> logs, long window);

/** Rows G((1-t) z1 + t z2) for t evenly spaced on [0, 1]; endpoints are
    exactly G(z1) and G(z2). */
matrix_t latent_interpolation(const MlpSpec& gen_spec, const ParamVector& theta,
                              const vector_t& z1, const vector_t& z2, index_t steps);

}  // namespace egan
