#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "wignerlab/io.hpp"

namespace wignerlab {

/// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitUnexpectedVerdict = 2,
    kExitNegativity = 3,
};

/// Bad flags or inputs; maps to kExitUsage.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kMinDim = 2;
inline constexpr std::int64_t kMaxDim = 32;

struct CommandResult {
    int exit_code = kExitOk;
    /// Human-readable lines for stdout.
    std::string text;
    /// Fields: schema_version, command, parameters, ..., checks, exit_code,
    /// wall_time_seconds.
    Json report;
};

/// Builds and solves the outcome-assignment system. Odd d also checks the
/// Gross match and the ontic labelling; exit 0 when the verdict is the
/// expected one for the parity of d.
CommandResult cmd_uniqueness(std::int64_t d);

/// Wigner table, minimum entry, sum-negativity and classification.
CommandResult cmd_wigner(const std::string& state_path, std::int64_t d, int n);

/// Compile, sample, and compare with the exact table when d^n <= 1024.
CommandResult cmd_simulate(const std::string& circuit_path, std::uint64_t shots, std::uint64_t seed);

/// cmd_uniqueness for each d in [lo, hi].
CommandResult cmd_sweep(std::int64_t lo, std::int64_t hi);

/// Parses "a..b" or a single "a".
std::pair<std::int64_t, std::int64_t> parse_dim_range(const std::string& text);

}  // namespace wignerlab
