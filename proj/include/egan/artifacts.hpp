#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "egan/data.hpp"
#include "egan/evolution.hpp"
#include "egan/metrics.hpp"
#include "egan/types.hpp"

namespace egan {

/** Doubles formatted with 17 significant digits (value-exact round trip). */
std::string format_real(scalar_t v);

/** FNV-1a 64 over the raw bytes of a file. */
std::uint64_t fnv1a_file(const std::filesystem::path& path);

/** Streaming CSV writer for evolutionary step logs (one row per step). */
class StepLogWriter {
 public:
  StepLogWriter(const std::filesystem::path& path, int n_children);
  void write(const EvolutionStepLog& log);

 private:
  std::ofstream out_;
  int n_children_;
};

/** Streaming CSV writer for baseline step logs (no fitness columns). */
class BaselineLogWriter {
 public:
  explicit BaselineLogWriter(const std::filesystem::path& path);
  void write(const BaselineStepLog& log);

 private:
  std::ofstream out_;
};

void write_samples_csv(const std::filesystem::path& path, const matrix_t& samples);

void write_coverage_csv(const std::filesystem::path& summary_path,
                        const std::filesystem::path& per_mode_path,
                        const ModeCoverageReport& report, const GaussianMixture& gm);

/** Header row declares extent, resolution and bandwidth; grid rows follow. */
void write_kde_csv(const std::filesystem::path& path, const KdeGrid& grid);

void write_selection_hist_csv(const std::filesystem::path& path,
                              const MutationSelectionLog& hist);

/** Columns: t, then the generator output dimensions. */
void write_interp_csv(const std::filesystem::path& path, const matrix_t& outputs);

/** Key=value manifest: config snapshot plus FNV-1a checksums of artifacts. */
void write_manifest(const std::filesystem::path& path,
                    std::vector<std::pair<std::string, std::string>> entries,
                    const std::vector<std::filesystem::path>& artifacts);

}  // namespace egan
