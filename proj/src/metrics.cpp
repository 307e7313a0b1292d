#include "egan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "egan/errors.hpp"

namespace egan {

ModeCoverageReport mode_coverage(const matrix_t& samples, const GaussianMixture& gm,
                                 scalar_t k_sigma) {
  if (samples.rows() < 1) throw UsageError("mode_coverage: need at least one sample");
  if (samples.cols() != 2) throw StructuralError("mode_coverage: samples must be n x 2");
  if (k_sigma <= 0) throw UsageError("mode_coverage: k_sigma must be positive");

  const index_t n = samples.rows();
  const index_t k = gm.centers.rows();
  ModeCoverageReport report;
  report.n_samples = n;
  report.per_mode_counts.assign(static_cast<std::size_t>(k), 0);
  const scalar_t radius2 = (k_sigma * gm.sigma) * (k_sigma * gm.sigma);

  long hq = 0;
  for (index_t i = 0; i < n; ++i) {
    index_t nearest = 0;
    scalar_t best = (samples.row(i) - gm.centers.row(0)).squaredNorm();
    for (index_t c = 1; c < k; ++c) {
      const scalar_t d = (samples.row(i) - gm.centers.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        nearest = c;
      }
    }
    if (best <= radius2) {
      ++hq;
      ++report.per_mode_counts[static_cast<std::size_t>(nearest)];
    }
  }

  report.high_quality_ratio = static_cast<scalar_t>(hq) / static_cast<scalar_t>(n);
  report.capture_threshold =
      std::max<scalar_t>(1.0, 0.2 * static_cast<scalar_t>(n) / static_cast<scalar_t>(k));
  for (long count : report.per_mode_counts) {
    if (count >= 1) ++report.modes_hit;
    if (static_cast<scalar_t>(count) >= report.capture_threshold) ++report.modes_captured;
  }
  return report;
}

scalar_t KdeGrid::cell_area() const {
  const scalar_t dx = (xmax - xmin) / static_cast<scalar_t>(resolution);
  const scalar_t dy = (ymax - ymin) / static_cast<scalar_t>(resolution);
  return dx * dy;
}

scalar_t KdeGrid::riemann_sum() const { return density.sum() * cell_area(); }

KdeGrid kde_grid(const matrix_t& samples, scalar_t bandwidth, scalar_t xmin, scalar_t xmax,
                 scalar_t ymin, scalar_t ymax, index_t resolution) {
  if (bandwidth <= 0) throw UsageError("kde_grid: bandwidth must be positive");
  if (resolution < 1) throw UsageError("kde_grid: resolution must be >= 1");
  if (xmax <= xmin || ymax <= ymin) throw UsageError("kde_grid: empty extent");
  if (samples.rows() < 1 || samples.cols() != 2)
    throw StructuralError("kde_grid: samples must be n x 2");

  KdeGrid grid;
  grid.xmin = xmin;
  grid.xmax = xmax;
  grid.ymin = ymin;
  grid.ymax = ymax;
  grid.resolution = resolution;
  grid.bandwidth = bandwidth;
  grid.density = matrix_t::Zero(resolution, resolution);

  const scalar_t dx = (xmax - xmin) / static_cast<scalar_t>(resolution);
  const scalar_t dy = (ymax - ymin) / static_cast<scalar_t>(resolution);
  vector_t gx(resolution), gy(resolution);
  const scalar_t inv2h2 = 1.0 / (2.0 * bandwidth * bandwidth);

  // The kernel is separable, so each sample contributes a rank-1 update.
  for (index_t s = 0; s < samples.rows(); ++s) {
    for (index_t j = 0; j < resolution; ++j) {
      const scalar_t cx = xmin + (static_cast<scalar_t>(j) + 0.5) * dx;
      gx(j) = std::exp(-(cx - samples(s, 0)) * (cx - samples(s, 0)) * inv2h2);
    }
    for (index_t i = 0; i < resolution; ++i) {
      const scalar_t cy = ymin + (static_cast<scalar_t>(i) + 0.5) * dy;
      gy(i) = std::exp(-(cy - samples(s, 1)) * (cy - samples(s, 1)) * inv2h2);
    }
    grid.density.noalias() += gy * gx.transpose();
  }
  grid.density /= static_cast<scalar_t>(samples.rows()) * 2.0 *
                  std::numbers::pi_v<scalar_t> * bandwidth * bandwidth;
  return grid;
}

OptimalDiscriminatorReport optimal_discriminator_check(const vector_t& p_data,
                                                       const vector_t& p_g,
                                                       scalar_t grid_step) {
  if (p_data.size() != p_g.size() || p_data.size() == 0)
    throw UsageError("optimal_discriminator_check: distributions must share a support");
  if (grid_step <= 0 || grid_step >= 0.5)
    throw UsageError("optimal_discriminator_check: bad grid step");
  if ((p_data.array() < 0).any() || (p_g.array() < 0).any())
    throw UsageError("optimal_discriminator_check: negative probabilities");
  if (std::abs(p_data.sum() - 1.0) > 1e-9 || std::abs(p_g.sum() - 1.0) > 1e-9)
    throw UsageError("optimal_discriminator_check: distributions must be normalized");

  const index_t k = p_data.size();
  OptimalDiscriminatorReport report;
  report.closed_form.resize(k);
  report.grid_argmax.resize(k);

  const auto steps = static_cast<index_t>(std::llround(1.0 / grid_step)) - 1;
  for (index_t i = 0; i < k; ++i) {
    const scalar_t pd = p_data(i), pg = p_g(i);
    if (pd + pg == 0) {
      // Objective is constant here; the formula does not constrain D.
      report.closed_form(i) = 0.5;
      report.grid_argmax(i) = 0.5;
      continue;
    }
    report.closed_form(i) = pd / (pd + pg);
    scalar_t best_val = -std::numeric_limits<scalar_t>::infinity();
    scalar_t best_d = grid_step;
    for (index_t s = 1; s <= steps; ++s) {
      const scalar_t d = grid_step * static_cast<scalar_t>(s);
      const scalar_t val = pd * std::log(d) + pg * std::log(1.0 - d);
      if (val > best_val) {
        best_val = val;
        best_d = d;
      }
    }
    report.grid_argmax(i) = best_d;
    report.max_deviation =
        std::max(report.max_deviation, std::abs(best_d - report.closed_form(i)));
  }
  return report;
}

MutationSelectionLog selection_histogram(std::span<const EvolutionStepLog> logs,
                                         long window) {
  if (window < 1) throw UsageError("selection_histogram: window must be >= 1");
  if (window > static_cast<long>(logs.size()))
    throw UsageError("selection_histogram: window exceeds run length");

  MutationSelectionLog out;
  out.window = window;
  SelectionWindow current;
  current.start = 0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    for (int idx : logs[i].survivors) {
      const Mutation tag = logs[i].children[static_cast<std::size_t>(idx)].tag;
      ++current.counts[static_cast<std::size_t>(tag)];
      ++out.totals[static_cast<std::size_t>(tag)];
    }
    ++current.length;
    if (current.length == window) {
      out.windows.push_back(current);
      current = SelectionWindow{};
      current.start = static_cast<long>(i) + 1;
    }
  }
  if (current.length > 0) out.windows.push_back(current);
  return out;
}

matrix_t latent_interpolation(const MlpSpec& gen_spec, const ParamVector& theta,
                              const vector_t& z1, const vector_t& z2, index_t steps) {
  if (steps < 2) throw UsageError("latent_interpolation: steps must be >= 2");
  if (z1.size() != z2.size() || z1.size() != gen_spec.input_dim)
    throw StructuralError("latent_interpolation: endpoint dimensions must match spec");
  matrix_t z(steps, z1.size());
  for (index_t s = 0; s < steps; ++s) {
    const scalar_t t = static_cast<scalar_t>(s) / static_cast<scalar_t>(steps - 1);
    z.row(s) = (1.0 - t) * z1.transpose() + t * z2.transpose();
  }
  return gen_forward(gen_spec, theta, z);
}

}  // namespace egan
