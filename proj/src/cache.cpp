#include "invdim/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

namespace invdim::cache {
namespace {

using nlohmann::json;

constexpr auto kLockRetryDelay = std::chrono::milliseconds(50);

poincare::SeriesTruncation parse_entry(const json& j) {
    poincare::SeriesTruncation s;
    s.n = j.at("n").get<int>();
    s.d = j.at("d").get<int>();
    s.max_degree = j.at("max_degree").get<std::int64_t>();
    const auto& coefficients = j.at("coefficients");
    if (s.n < 2 || s.d < 1 || s.max_degree < 0 ||
        coefficients.size() != static_cast<std::size_t>(s.max_degree) + 1) {
        throw CacheError("malformed cache entry");
    }
    for (const auto& c : coefficients) {
        BigInt value;
        if (value.set_str(c.get<std::string>(), 10) != 0 || sgn(value) < 0) {
            throw CacheError("malformed coefficient in cache entry");
        }
        s.coefficients.push_back(value);
    }
    return s;
}

json entry_to_json(const poincare::SeriesTruncation& s) {
    json coefficients = json::array();
    for (const auto& c : s.coefficients) coefficients.push_back(c.get_str());
    return {{"n", s.n}, {"d", s.d}, {"max_degree", s.max_degree}, {"coefficients", coefficients}};
}

}  // namespace

SeriesCache::SeriesCache(std::filesystem::path path, std::chrono::milliseconds lock_wait)
    : path_(std::move(path)) {
    const auto lock_path = path_.string() + ".lock";
    lock_fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (lock_fd_ < 0) throw CacheError("cannot open cache lock file " + lock_path);

    const auto deadline = std::chrono::steady_clock::now() + lock_wait;
    bool locked = ::flock(lock_fd_, LOCK_EX | LOCK_NB) == 0;
    while (!locked && std::chrono::steady_clock::now() < deadline) {
        std::this_thread::sleep_for(kLockRetryDelay);
        locked = ::flock(lock_fd_, LOCK_EX | LOCK_NB) == 0;
    }
    if (!locked) {
        ::close(lock_fd_);
        throw CacheError("cache " + path_.string() + " is locked by another process");
    }
    load();
}

SeriesCache::~SeriesCache() {
    if (lock_fd_ >= 0) {
        ::flock(lock_fd_, LOCK_UN);
        ::close(lock_fd_);
    }
}

void SeriesCache::load() {
    std::error_code ec;
    if (!std::filesystem::exists(path_, ec)) return;

    std::ifstream in(path_);
    try {
        const auto doc = json::parse(in);
        const auto version = doc.at("schema_version").get<int>();
        if (version != kSchemaVersion) {
            usable_ = false;
            warning_ = "ignoring cache " + path_.string() + " with unknown schema version " +
                       std::to_string(version);
            return;
        }
        for (const auto& entry : doc.at("entries")) entries_.push_back(parse_entry(entry));
    } catch (const std::exception& e) {
        usable_ = false;
        entries_.clear();
        warning_ = "ignoring unreadable cache " + path_.string() + ": " + e.what();
    }
}

void SeriesCache::save() const {
    json entries = json::array();
    for (const auto& e : entries_) entries.push_back(entry_to_json(e));
    const json doc = {{"schema_version", kSchemaVersion}, {"entries", entries}};

    auto tmp = path_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << doc.dump(2) << '\n';
        if (!out) throw CacheError("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path_);
}

std::optional<poincare::SeriesTruncation> SeriesCache::lookup(int n, int d,
                                                             std::int64_t max_degree) const {
    if (!usable_) return std::nullopt;
    for (const auto& e : entries_) {
        if (e.n != n || e.d != d || e.max_degree < max_degree) continue;
        poincare::SeriesTruncation prefix{n, d, max_degree, {}};
        prefix.coefficients.assign(e.coefficients.begin(),
                                   e.coefficients.begin() + max_degree + 1);
        return prefix;
    }
    return std::nullopt;
}

void SeriesCache::store(const poincare::SeriesTruncation& series) {
    if (!usable_) return;
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const auto& e) { return e.n == series.n && e.d == series.d; });
    if (it == entries_.end()) {
        entries_.push_back(series);
    } else if (it->max_degree < series.max_degree) {
        *it = series;
    } else {
        return;
    }
    std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
        return std::tie(a.n, a.d) < std::tie(b.n, b.d);
    });
    save();
}

}  // namespace invdim::cache
