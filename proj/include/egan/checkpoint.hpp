#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "egan/mlp.hpp"

namespace egan {

/** One serialized network: its role tag, architecture, and parameters. */
struct Checkpoint {
  std::string kind;  // "generator" or "discriminator"
  MlpSpec spec;
  ParamVector params;
};

/**
 * Versioned textual checkpoint. Layer shapes are listed first, then values
 * in row-major order as hex floats, so a load/save cycle is bit-exact.
 */
void save_checkpoint(std::ostream& out, const Checkpoint& ckpt);
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);

Checkpoint load_checkpoint(std::istream& in);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace egan
