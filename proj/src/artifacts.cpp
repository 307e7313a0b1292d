#include "egan/artifacts.hpp"

#include <algorithm>
#include <cstdio>

#include "egan/errors.hpp"

namespace egan {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  return out;
}

std::string join_reals(const std::vector<scalar_t>& values, char sep) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += sep;
    s += format_real(values[i]);
  }
  return s;
}

}  // namespace

std::string format_real(scalar_t v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char chunk[4096];
  while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(chunk[i]);
      h *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  return h;
}

StepLogWriter::StepLogWriter(const std::filesystem::path& path, int n_children)
    : out_(open_out(path)), n_children_(n_children) {
  out_ << "step,disc_obj";
  for (int i = 0; i < n_children_; ++i)
    out_ << ",c" << i << "_mutation,c" << i << "_fq,c" << i << "_fd,c" << i << "_total";
  out_ << ",survivors\n";
}

void StepLogWriter::write(const EvolutionStepLog& log) {
  if (static_cast<int>(log.children.size()) != n_children_)
    throw UsageError("StepLogWriter: child count changed mid-run");
  out_ << log.step << "," << join_reals(log.disc_objectives, ';');
  for (const ChildRecord& c : log.children)
    out_ << "," << to_string(c.tag) << "," << format_real(c.score.fq) << ","
         << format_real(c.score.fd) << "," << format_real(c.score.total);
  out_ << ",";
  for (std::size_t i = 0; i < log.survivors.size(); ++i)
    out_ << (i ? ";" : "") << log.survivors[i];
  out_ << "\n";
}

BaselineLogWriter::BaselineLogWriter(const std::filesystem::path& path)
    : out_(open_out(path)) {
  out_ << "step,disc_obj,gen_loss\n";
}

void BaselineLogWriter::write(const BaselineStepLog& log) {
  out_ << log.step << "," << join_reals(log.disc_objectives, ';') << ","
       << format_real(log.gen_loss) << "\n";
}

void write_samples_csv(const std::filesystem::path& path, const matrix_t& samples) {
  auto out = open_out(path);
  out << "x,y\n";
  for (index_t i = 0; i < samples.rows(); ++i)
    out << format_real(samples(i, 0)) << "," << format_real(samples(i, 1)) << "\n";
}

void write_coverage_csv(const std::filesystem::path& summary_path,
                        const std::filesystem::path& per_mode_path,
                        const ModeCoverageReport& report, const GaussianMixture& gm) {
  {
    auto out = open_out(summary_path);
    out << "modes_captured,modes_hit,high_quality_ratio,n_samples,capture_threshold\n";
    out << report.modes_captured << "," << report.modes_hit << ","
        << format_real(report.high_quality_ratio) << "," << report.n_samples << ","
        << format_real(report.capture_threshold) << "\n";
  }
  auto out = open_out(per_mode_path);
  out << "mode,center_x,center_y,hq_count,captured\n";
  for (std::size_t i = 0; i < report.per_mode_counts.size(); ++i) {
    const auto idx = static_cast<index_t>(i);
    out << i << "," << format_real(gm.centers(idx, 0)) << ","
        << format_real(gm.centers(idx, 1)) << "," << report.per_mode_counts[i] << ","
        << (static_cast<scalar_t>(report.per_mode_counts[i]) >= report.capture_threshold
                ? 1
                : 0)
        << "\n";
  }
}

void write_kde_csv(const std::filesystem::path& path, const KdeGrid& grid) {
  auto out = open_out(path);
  out << "xmin,xmax,ymin,ymax,resolution,bandwidth\n";
  out << format_real(grid.xmin) << "," << format_real(grid.xmax) << ","
      << format_real(grid.ymin) << "," << format_real(grid.ymax) << ","
      << grid.resolution << "," << format_real(grid.bandwidth) << "\n";
  for (index_t i = 0; i < grid.density.rows(); ++i) {
    for (index_t j = 0; j < grid.density.cols(); ++j)
      out << (j ? "," : "") << format_real(grid.density(i, j));
    out << "\n";
  }
}

void write_selection_hist_csv(const std::filesystem::path& path,
                              const MutationSelectionLog& hist) {
  auto out = open_out(path);
  out << "window_start,window_length,minimax,heuristic,leastsq\n";
  for (const SelectionWindow& w : hist.windows)
    out << w.start << "," << w.length << "," << w.counts[0] << "," << w.counts[1] << ","
        << w.counts[2] << "\n";
}

void write_interp_csv(const std::filesystem::path& path, const matrix_t& outputs) {
  auto out = open_out(path);
  out << "t";
  for (index_t j = 0; j < outputs.cols(); ++j) out << ",y" << j;
  out << "\n";
  const index_t steps = outputs.rows();
  for (index_t i = 0; i < steps; ++i) {
    out << format_real(static_cast<scalar_t>(i) / static_cast<scalar_t>(steps - 1));
    for (index_t j = 0; j < outputs.cols(); ++j) out << "," << format_real(outputs(i, j));
    out << "\n";
  }
}

void write_manifest(const std::filesystem::path& path,
                    std::vector<std::pair<std::string, std::string>> entries,
                    const std::vector<std::filesystem::path>& artifacts) {
  std::vector<std::filesystem::path> files = artifacts;
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a_file(f)));
    entries.emplace_back("artifact." + f.filename().string() + ".fnv1a64", hex);
  }
  std::sort(entries.begin(), entries.end());
  auto out = open_out(path);
  for (const auto& [k, v] : entries) out << k << "=" << v << "\n";
}

}  // namespace egan
