#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "egan/data.hpp"
#include "egan/evolution.hpp"

namespace egan {

/**
 * Full experiment configuration. Keys use dotted sections in config files
 * (e.g. "train.gamma = 0.5"); command-line flags override file values.
 */
struct RunConfig {
  // run.*
  std::uint64_t seed = 0;
  long iterations = 10000;
  std::string out_dir;
  long checkpoint_every = 0;

  // train.*
  scalar_t alpha = 2e-4;
  scalar_t beta1 = 0.5;
  scalar_t beta2 = 0.99;
  int n_d = 2;
  int n_p = 1;
  int m = 16;
  scalar_t gamma = 0.5;
  std::vector<Mutation> mutations{kAllMutations.begin(), kAllMutations.end()};

  // data.*
  std::string dataset = "ring8";  // ring8 | grid25 | file
  std::string data_file;
  std::optional<scalar_t> data_sigma;
  std::optional<scalar_t> data_scale;  // ring radius or grid half-span

  // net.*
  int z_dim = 2;
  int width = 128;
  int depth = 3;

  // eval.*
  long eval_samples = 4096;
  scalar_t k_sigma = 3.0;
  std::optional<scalar_t> kde_bandwidth;  // default 0.1 ring8, 0.15 grid25
  scalar_t kde_extent = 6.0;              // grid spans [-extent, extent]^2
  index_t kde_resolution = 128;
  long hist_window = 0;  // 0 = iterations / 50, at least 1
};

/** Apply one key=value pair; unknown keys or bad values raise ConfigError. */
void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value);

/** Flat key-value file: `section.key = value`, '#' comments, blank lines. */
RunConfig load_config_file(const std::filesystem::path& path);

/** Resolved snapshot as sorted key/value pairs (for the run manifest). */
std::vector<std::pair<std::string, std::string>> config_snapshot(const RunConfig& cfg);

void validate(const RunConfig& cfg);

TrainingConfig to_training_config(const RunConfig& cfg);
DataSampler make_sampler(const RunConfig& cfg);

/** The mixture behind a synthetic dataset name; nullopt for file sources. */
std::optional<GaussianMixture> reference_mixture(const RunConfig& cfg);

scalar_t resolved_kde_bandwidth(const RunConfig& cfg);
long resolved_hist_window(const RunConfig& cfg);

}  // namespace egan
