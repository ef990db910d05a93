#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "invdim/cache.hpp"
#include "invdim/cli.hpp"

using namespace invdim;
using namespace invdim::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("invdim-test-" + std::to_string(::getpid()) + "-" +
                                            std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("dim") {
    auto r = invoke({"dim", "--n", "2", "--d", "2", "--k", "2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "1\n");

    r = invoke({"dim", "--n", "3", "--d", "2", "--k", "1"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "0\n");

    r = invoke({"dim", "--n", "1", "--d", "5", "--k", "2"});
    CHECK(r.code == kExitUsage);
    CHECK(r.out.empty());
    CHECK(r.err.find("rank") != std::string::npos);

    r = invoke({"dim", "--n", "3", "--d", "0", "--k", "2"});
    CHECK(r.code == kExitUsage);
    r = invoke({"dim", "--n", "3", "--d", "2", "--k", "-1"});
    CHECK(r.code == kExitUsage);

    r = invoke({"dim", "--n", "3", "--d", "3", "--k", "12", "--format", "json"});
    CHECK(r.code == kExitOk);
    CHECK(json::parse(r.out) == json{{"n", 3}, {"d", 3}, {"k", 12}, {"nu", "2"}});

    r = invoke({"dim", "--n", "2", "--d", "2", "--k", "2", "--format", "latex"});
    CHECK(r.out == "\\nu_{2,2}(2) = 1\n");
}

TEST_CASE("usage errors") {
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"dim", "--n", "2"}).code == kExitUsage);
    CHECK(invoke({"frobnicate"}).code == kExitUsage);
    CHECK(invoke({"series", "--n", "2", "--d", "2", "--K", "3", "--format", "xml"}).code ==
          kExitUsage);
    CHECK(invoke({"dim", "--n", "x", "--d", "2", "--k", "2"}).code == kExitUsage);
    CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("series") {
    auto r = invoke({"series", "--n", "2", "--d", "2", "--K", "4", "--format", "json"});
    CHECK(r.code == kExitOk);
    CHECK(json::parse(r.out)["coefficients"] == json{"1", "0", "1", "0", "1"});

    r = invoke({"series", "--n", "3", "--d", "3", "--K", "0"});
    CHECK(r.out == "1\n");

    r = invoke({"series", "--n", "3", "--d", "3", "--K", "12", "--no-cache"});
    CHECK(r.out == "1 + t^4 + t^6 + t^8 + t^{10} + 2 t^{12}\n");

    r = invoke({"series", "--n", "2", "--d", "2", "--K", "6", "--format", "latex"});
    CHECK(r.out == "\\,1 + t^{2} + t^{4} + t^{6} + \\dots\n");

    r = invoke({"series", "--n", "2", "--d", "2", "--K", "6", "--backend", "bruteforce",
                "--threads", "3"});
    CHECK(r.out == "1 + t^2 + t^4 + t^6\n");
}

TEST_CASE("resource caps map to exit 3") {
    auto r = invoke({"series", "--n", "3", "--d", "3", "--K", "12", "--max-dp-cells", "5"});
    CHECK(r.code == kExitResource);
    r = invoke({"orbit", "--n", "9"});
    CHECK(r.code == kExitResource);
    r = invoke({"orbit", "--n", "5", "--max-rank", "4"});
    CHECK(r.code == kExitResource);
    r = invoke({"check", "--n", "3", "--d", "3", "--K", "6", "--max-oracle-nodes", "50"});
    CHECK(r.code == kExitResource);
    CHECK(r.out.find("k=0 PASS") != std::string::npos);
    CHECK(r.out.find("INCOMPLETE") != std::string::npos);
}

TEST_CASE("orbit") {
    auto r = invoke({"orbit", "--n", "3"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "(0,0):+1 (0,3):+1 (1,1):-2 (2,2):-1 (3,0):+1\n");
    CHECK(invoke({"orbit", "--n", "2"}).out == "(0):+1 (2):-1\n");

    r = invoke({"orbit", "--n", "4", "--format", "json"});
    const auto doc = json::parse(r.out);
    std::int64_t total = 0;
    for (const auto& term : doc["terms"]) total += term["multiplicity"].get<std::int64_t>();
    CHECK(total == 0);
    CHECK(doc["terms"].size() > 0);

    r = invoke({"orbit", "--n", "2", "--format", "latex"});
    CHECK(r.out == "\\nu_{2,d}(k) = c_{2,d}(k,(0)) - c_{2,d}(k,(2))\n");
}

TEST_CASE("check") {
    auto r = invoke({"check", "--n", "2", "--d", "3", "--K", "8"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("sylvester-cayley=") != std::string::npos);
    CHECK(r.out.substr(r.out.size() - 5) == "PASS\n");

    r = invoke({"check", "--n", "3", "--d", "2", "--K", "6", "--format", "json"});
    CHECK(r.code == kExitOk);
    const auto doc = json::parse(r.out);
    CHECK(doc["status"] == "PASS");
    CHECK(doc["rows"].size() == 7);
}

TEST_CASE("check reports the first mismatch of a faulty backend") {
    auto backends = default_backends(3, {});
    backends.push_back({"faulty", [](int n, int d, std::int64_t k) {
                            BigInt v = poincare::nu(n, d, k);
                            if (k >= 4) v += 1;
                            return v;
                        }});
    const auto report = run_check(3, 3, 6, backends);
    REQUIRE(report.first_mismatch.has_value());
    CHECK(*report.first_mismatch == 4);
    CHECK(report.rows.size() == 7);
    CHECK(report.rows[3].pass);
    CHECK_FALSE(report.rows[4].pass);
    const auto text = render_check(report, Format::plain);
    CHECK(text.find("FAIL (first mismatch at k=4)") != std::string::npos);
}

TEST_CASE("JSON output round-trips") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"series", "--n", "3", "--d", "3", "--K", "12", "--format", "json"},
             {"dim", "--n", "2", "--d", "4", "--k", "6", "--format", "json"},
             {"orbit", "--n", "4", "--format", "json"},
             {"check", "--n", "2", "--d", "4", "--K", "5", "--format", "json"}}) {
        const auto r = invoke(args);
        REQUIRE(r.code == kExitOk);
        REQUIRE(r.out.back() == '\n');
        const auto parsed = json::parse(r.out);
        CHECK(parsed.dump() + "\n" == r.out);
    }
}

TEST_CASE("cache is transparent") {
    TempDir dir;
    const auto cache = (dir.path / "series.json").string();

    const auto plain = invoke({"series", "--n", "3", "--d", "3", "--K", "12"});
    const auto cold = invoke({"series", "--n", "3", "--d", "3", "--K", "12", "--cache", cache});
    CHECK(fs::exists(cache));
    const auto before = [&] {
        std::ifstream in(cache);
        return std::string(std::istreambuf_iterator<char>(in), {});
    }();
    const auto warm = invoke({"series", "--n", "3", "--d", "3", "--K", "12", "--cache", cache});
    const auto prefix = invoke({"series", "--n", "3", "--d", "3", "--K", "6", "--cache", cache});
    CHECK(plain.out == cold.out);
    CHECK(plain.out == warm.out);
    CHECK(prefix.out == invoke({"series", "--n", "3", "--d", "3", "--K", "6"}).out);

    // Cache hits do not rewrite the file.
    std::ifstream in(cache);
    CHECK(std::string(std::istreambuf_iterator<char>(in), {}) == before);

    const auto doc = json::parse(before);
    CHECK(doc["schema_version"] == cache::kSchemaVersion);
    CHECK(doc["entries"][0]["max_degree"] == 12);

    for (std::int64_t k = 0; k <= 14; ++k) {
        const auto args = std::vector<std::string>{"dim", "--n", "3", "--d", "3", "--k",
                                                   std::to_string(k)};
        auto cached = args;
        cached.insert(cached.end(), {"--cache", cache});
        CHECK(invoke(args).out == invoke(cached).out);
    }
}

TEST_CASE("cache from the environment") {
    TempDir dir;
    const auto cache = (dir.path / "env.json").string();
    ::setenv(kCacheEnvVar, cache.c_str(), 1);
    const auto r = invoke({"series", "--n", "2", "--d", "4", "--K", "8"});
    const auto skipped = (dir.path / "other.json").string();
    ::setenv(kCacheEnvVar, skipped.c_str(), 1);
    invoke({"series", "--n", "2", "--d", "4", "--K", "8", "--no-cache"});
    ::unsetenv(kCacheEnvVar);
    CHECK(r.code == kExitOk);
    CHECK(fs::exists(cache));
    CHECK_FALSE(fs::exists(skipped));
}

TEST_CASE("unknown cache versions and garbage are ignored, not migrated") {
    TempDir dir;
    const auto path = dir.path / "future.json";
    const std::string future =
        R"({"schema_version": 99, "entries": [{"n": 3, "d": 3, "max_degree": 4, "coefficients": ["7","7","7","7","7"]}]})";
    { std::ofstream(path) << future; }

    const auto r = invoke({"series", "--n", "3", "--d", "3", "--K", "4", "--cache", path.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "1 + t^4\n");
    CHECK(r.err.find("unknown schema version") != std::string::npos);
    std::ifstream in(path);
    CHECK(std::string(std::istreambuf_iterator<char>(in), {}) == future);

    { std::ofstream(path, std::ios::trunc) << "{not json"; }
    const auto g = invoke({"dim", "--n", "3", "--d", "3", "--k", "4", "--cache", path.string()});
    CHECK(g.code == kExitOk);
    CHECK(g.out == "1\n");
    CHECK(g.err.find("unreadable") != std::string::npos);
}

TEST_CASE("cache access is exclusive") {
    TempDir dir;
    const auto path = dir.path / "locked.json";
    cache::SeriesCache holder(path);
    CHECK_THROWS_AS(cache::SeriesCache(path, std::chrono::milliseconds(100)), cache::CacheError);
}

TEST_CASE("cache keeps the longest prefix") {
    TempDir dir;
    const auto path = dir.path / "prefix.json";
    {
        cache::SeriesCache store(path);
        store.store(poincare::series_truncated(2, 4, 10));
        store.store(poincare::series_truncated(2, 4, 5));
    }
    cache::SeriesCache reloaded(path);
    CHECK(reloaded.lookup(2, 4, 10) == poincare::series_truncated(2, 4, 10));
    CHECK(reloaded.lookup(2, 4, 3) == poincare::series_truncated(2, 4, 3));
    CHECK_FALSE(reloaded.lookup(2, 4, 11).has_value());
    CHECK_FALSE(reloaded.lookup(3, 4, 1).has_value());
}
