#include "egan/rng.hpp"

#include <cmath>
#include <numbers>

#include "egan/errors.hpp"

namespace egan {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::string_view stream_name)
    : key_(mix64(master_seed ^ mix64(fnv1a64(stream_name)))) {}

std::uint64_t RandomStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGamma);
}

scalar_t RandomStream::next_uniform() {
  return static_cast<scalar_t>(next_u64() >> 11) * 0x1.0p-53;
}

scalar_t RandomStream::next_gaussian() {
  // 1 - u lies in (0, 1], so the log is finite.
  const scalar_t u1 = 1.0 - next_uniform();
  const scalar_t u2 = next_uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi_v<scalar_t> * u2);
}

std::uint64_t RandomStream::next_below(std::uint64_t n) {
  if (n == 0) throw UsageError("RandomStream::next_below: n must be positive");
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

matrix_t RandomStream::gaussian_matrix(index_t rows, index_t cols) {
  matrix_t out(rows, cols);
  for (index_t i = 0; i < rows; ++i)
    for (index_t j = 0; j < cols; ++j) out(i, j) = next_gaussian();
  return out;
}

}  // namespace egan
