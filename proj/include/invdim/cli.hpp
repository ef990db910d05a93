#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "invdim/common.hpp"
#include "invdim/poincare.hpp"
#include "invdim/weyl.hpp"

namespace invdim::cli {

/// Process exit codes; stable across releases.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitResource = 3,
    kExitMismatch = 4,
};

/// Environment variable naming the default cache file.
inline constexpr const char* kCacheEnvVar = "INVDIM_CACHE";

enum class Format { plain, latex, json };

struct JobSpec {
    std::string command;
    int n = 0;
    int d = 0;
    std::int64_t k = 0;  // k for dim, K for series and check
    Format format = Format::plain;
    std::optional<std::string> cache_path;
    poincare::Backend backend = poincare::Backend::dp;
    unsigned threads = 1;
    ResourceLimits caps{};
};

// Rendering. Every function returns text without the trailing newline.
std::string render_dim(const JobSpec& job, const BigInt& nu);
std::string render_series(const poincare::SeriesTruncation& series, Format format);
std::string render_orbit(int n, const std::vector<weyl::SignedDominantTerm>& terms, Format format);

/// A named way of computing nu(n, d, k), compared against the others by check.
struct NamedBackend {
    std::string name;
    std::function<BigInt(int n, int d, std::int64_t k)> compute;
};

std::vector<NamedBackend> default_backends(int n, const ResourceLimits& caps);

struct CheckRow {
    std::int64_t k = 0;
    std::vector<std::pair<std::string, BigInt>> values;
    bool pass = true;
};

struct CheckReport {
    int n = 0;
    int d = 0;
    std::int64_t max_degree = 0;
    std::vector<CheckRow> rows;
    std::optional<std::int64_t> first_mismatch;
    /// Set when a resource cap stopped the sweep early.
    std::optional<std::string> aborted;
};

/// Evaluates every backend on k = 0..max_degree. Stops at the first
/// ResourceLimit and records it in `aborted`.
CheckReport run_check(int n, int d, std::int64_t max_degree,
                      const std::vector<NamedBackend>& backends);

std::string render_check(const CheckReport& report, Format format);

/// Full command-line entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace invdim::cli
