#pragma once

#include <string>
#include <vector>

namespace egan::cli {

/**
 * Experiment runner entry point. Commands: train, baseline, eval, interp.
 * Returns 0 on success, 2 on configuration/usage errors, 3 on numeric
 * failures (after checkpointing the last good state).
 */
int run(int argc, const char* const* argv);

/** Convenience overload for in-process invocation; args exclude argv[0]. */
int run(const std::vector<std::string>& args);

}  // namespace egan::cli
