#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slinv/spectra.hpp"

namespace slinv::cli {

enum class Command { Validate, Direct, Inverse, RoundTrip, Isospectral, Stability, Riesz };

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kValidationFailure = 1;
inline constexpr int kNumericalFailure = 2;
inline constexpr int kIoOrConfigError = 3;

inline constexpr std::size_t kDefaultGrid = 256;
inline constexpr std::size_t kDefaultCount = 64;
inline constexpr std::uint64_t kDefaultSeed = 12345;

struct RunConfig {
    Command command = Command::Validate;
    std::string input;
    std::string output;  // empty: JSON goes to standard output
    std::size_t grid = kDefaultGrid;
    std::size_t count = kDefaultCount;
    BoundaryKind kind = BoundaryKind::DD;
    std::optional<double> h;
    std::optional<double> shift;
    std::uint64_t seed = kDefaultSeed;
    std::vector<double> eps{1e-3, 1e-2};
    std::string dump_kernel;
};

// Throws StructuralError when paths are missing or sizes are out of bounds
// (16 <= grid <= 4096, 1 <= count <= 512).
void check_config(const RunConfig& config);

// Executes one command. Failures write a single line
//     error: <category>: <reason>
// to `err` and return the matching exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (subcommand + flags) and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slinv::cli
