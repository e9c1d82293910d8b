#pragma once

// The peq command line: check, schedule and mate.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "peq/pullback.hpp"

namespace peq {

inline constexpr int kExitUsage = 64;

/// Environment variable naming the default artifact directory of `mate`.
inline constexpr const char* kDumpDirVariable = "PEQ_DUMP_DIR";

struct RunConfig {
    std::string alpha;
    std::string beta;
    IterateOptions options;
    std::string dump_dir;  ///< empty: no artifacts
    bool render = false;
    std::uint64_t seed = 0;  ///< only used by the property tests
};

/// Stable identifier of a configuration (FNV-1a over its canonical text).
/// The thread count is not part of it because it does not change results.
std::string run_id(const RunConfig& config);

/// Runs the command line and returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace peq
