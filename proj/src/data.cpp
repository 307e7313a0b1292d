#include "egan/data.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "egan/errors.hpp"

namespace egan {

GaussianMixture ring8(scalar_t radius, scalar_t sigma) {
  GaussianMixture gm;
  gm.centers.resize(8, 2);
  for (index_t k = 0; k < 8; ++k) {
    const scalar_t angle =
        2.0 * std::numbers::pi_v<scalar_t> * static_cast<scalar_t>(k) / 8.0;
    gm.centers(k, 0) = radius * std::cos(angle);
    gm.centers(k, 1) = radius * std::sin(angle);
  }
  gm.sigma = sigma;
  return gm;
}

GaussianMixture grid25(scalar_t half_span, scalar_t sigma) {
  GaussianMixture gm;
  gm.centers.resize(25, 2);
  const scalar_t spacing = half_span / 2.0;
  for (index_t i = 0; i < 5; ++i)
    for (index_t j = 0; j < 5; ++j) {
      gm.centers(5 * i + j, 0) = spacing * static_cast<scalar_t>(i - 2);
      gm.centers(5 * i + j, 1) = spacing * static_cast<scalar_t>(j - 2);
    }
  gm.sigma = sigma;
  return gm;
}

matrix_t sample_mixture(const GaussianMixture& gm, index_t n, RandomStream& rng) {
  if (gm.centers.rows() < 1 || gm.sigma <= 0)
    throw UsageError("sample_mixture: mixture needs >= 1 center and sigma > 0");
  matrix_t out(n, 2);
  const auto k = static_cast<std::uint64_t>(gm.centers.rows());
  for (index_t i = 0; i < n; ++i) {
    const auto c = static_cast<index_t>(rng.next_below(k));
    out(i, 0) = gm.centers(c, 0) + gm.sigma * rng.next_gaussian();
    out(i, 1) = gm.centers(c, 1) + gm.sigma * rng.next_gaussian();
  }
  return out;
}

matrix_t sample_noise(index_t n, index_t z_dim, RandomStream& rng) {
  if (n < 1 || z_dim < 1) throw UsageError("sample_noise: n and z_dim must be >= 1");
  return rng.gaussian_matrix(n, z_dim);
}

DataSampler DataSampler::from_mixture(GaussianMixture gm) {
  DataSampler s;
  s.mixture_ = std::move(gm);
  return s;
}

DataSampler DataSampler::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("dataset: cannot open " + path.string());
  std::vector<std::pair<scalar_t, scalar_t>> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ','))
      throw DataError("dataset: line " + std::to_string(line_no) +
                      ": expected two comma-separated reals");
    if (std::getline(ls, extra, ','))
      throw DataError("dataset: line " + std::to_string(line_no) + ": extra fields");
    try {
      std::size_t pos_a = 0, pos_b = 0;
      const scalar_t x = std::stod(a, &pos_a);
      const scalar_t y = std::stod(b, &pos_b);
      while (pos_a < a.size() && std::isspace(static_cast<unsigned char>(a[pos_a]))) ++pos_a;
      while (pos_b < b.size() && std::isspace(static_cast<unsigned char>(b[pos_b]))) ++pos_b;
      if (pos_a != a.size() || pos_b != b.size()) throw std::invalid_argument(line);
      rows.emplace_back(x, y);
    } catch (const std::exception&) {
      throw DataError("dataset: line " + std::to_string(line_no) +
                      ": malformed number");
    }
  }
  if (rows.empty()) throw DataError("dataset: " + path.string() + " holds no points");
  DataSampler s;
  s.points_.resize(static_cast<index_t>(rows.size()), 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s.points_(static_cast<index_t>(i), 0) = rows[i].first;
    s.points_(static_cast<index_t>(i), 1) = rows[i].second;
  }
  return s;
}

matrix_t DataSampler::sample(index_t n, RandomStream& rng) const {
  if (n < 1) throw UsageError("DataSampler::sample: n must be >= 1");
  if (mixture_) return sample_mixture(*mixture_, n, rng);
  matrix_t out(n, 2);
  const auto rows = static_cast<std::uint64_t>(points_.rows());
  for (index_t i = 0; i < n; ++i)
    out.row(i) = points_.row(static_cast<index_t>(rng.next_below(rows)));
  return out;
}

}  // namespace egan
