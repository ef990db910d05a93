#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "invdim/poincare.hpp"

namespace invdim::cache {

inline constexpr int kSchemaVersion = 1;

class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Versioned JSON store of series prefixes keyed by (n, d).
///
/// The file is held under an exclusive advisory lock (a sibling ".lock"
/// file) for the lifetime of the object. A file with an unknown schema
/// version or unreadable contents is left untouched: lookups miss and
/// stores are skipped.
class SeriesCache {
public:
    /// Waits up to lock_wait for the lock, then throws CacheError.
    explicit SeriesCache(std::filesystem::path path,
                         std::chrono::milliseconds lock_wait = std::chrono::seconds(5));
    ~SeriesCache();

    SeriesCache(const SeriesCache&) = delete;
    SeriesCache& operator=(const SeriesCache&) = delete;

    /// The first max_degree + 1 coefficients, if a long enough prefix is stored.
    std::optional<poincare::SeriesTruncation> lookup(int n, int d, std::int64_t max_degree) const;

    /// Keeps the longer of the stored and the given prefix, then rewrites the file.
    void store(const poincare::SeriesTruncation& series);

    bool usable() const { return usable_; }
    const std::string& warning() const { return warning_; }

private:
    void load();
    void save() const;

    std::filesystem::path path_;
    int lock_fd_ = -1;
    bool usable_ = true;
    std::string warning_;
    std::vector<poincare::SeriesTruncation> entries_;
};

}  // namespace invdim::cache
