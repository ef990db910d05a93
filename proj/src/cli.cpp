#include "invdim/cli.hpp"

#include <cstdlib>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "invdim/cache.hpp"

namespace invdim::cli {
namespace {

void add_common(CLI::App& sub, JobSpec& job) {
    sub.add_option("--format", job.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"plain", Format::plain},
                                          {"latex", Format::latex},
                                          {"json", Format::json}},
            CLI::ignore_case));
    sub.add_option("--max-rank", job.caps.max_rank, "Largest rank n accepted (|W| = n!)");
    sub.add_option("--max-dp-cells", job.caps.max_dp_cells, "Cell cap for one counting table");
    sub.add_option("--max-oracle-nodes", job.caps.max_oracle_nodes,
                   "Node cap for the enumeration oracle");
}

void add_computation(CLI::App& sub, JobSpec& job, bool* no_cache) {
    sub.add_option("--d", job.d, "Degree of the forms")->required();
    sub.add_option("--backend", job.backend, "Counting backend")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, poincare::Backend>{{"dp", poincare::Backend::dp},
                                                     {"bruteforce", poincare::Backend::bruteforce}},
            CLI::ignore_case));
    sub.add_option("--threads", job.threads, "Worker threads (0 = all cores)");
    if (no_cache) {
        sub.add_option("--cache", job.cache_path,
                       std::string("Series cache file (default: $") + kCacheEnvVar + ")");
        sub.add_flag("--no-cache", *no_cache, "Ignore the cache entirely");
    }
}

void validate(const JobSpec& job) {
    if (job.n < 2) throw InvalidParameter("rank n must be at least 2, got " + std::to_string(job.n));
    if (job.n > job.caps.max_rank) {
        throw ResourceLimit("rank n = " + std::to_string(job.n) + " exceeds --max-rank " +
                            std::to_string(job.caps.max_rank));
    }
    if (job.command == "orbit") return;
    if (job.d < 1) throw InvalidParameter("degree d must be at least 1, got " + std::to_string(job.d));
    if (job.k < 0) throw InvalidParameter("degree bound must be non-negative, got " + std::to_string(job.k));
}

poincare::Options options_for(const JobSpec& job) {
    return {job.backend, job.caps, job.threads};
}

int execute(const JobSpec& job, std::ostream& out, std::ostream& err) {
    validate(job);

    if (job.command == "orbit") {
        out << render_orbit(job.n, weyl::aggregate_orbit(job.n, job.caps), job.format) << '\n';
        return kExitOk;
    }

    if (job.command == "check") {
        const auto report = run_check(job.n, job.d, job.k, default_backends(job.n, job.caps));
        out << render_check(report, job.format) << '\n';
        if (report.first_mismatch) return kExitMismatch;
        return report.aborted ? kExitResource : kExitOk;
    }

    std::optional<cache::SeriesCache> store;
    if (job.cache_path) {
        store.emplace(*job.cache_path);
        if (!store->warning().empty()) err << "warning: " << store->warning() << '\n';
    }

    if (job.command == "dim") {
        BigInt value;
        if (auto hit = store ? store->lookup(job.n, job.d, job.k) : std::nullopt) {
            value = hit->coefficients.back();
        } else {
            value = poincare::nu(job.n, job.d, job.k, options_for(job));
        }
        out << render_dim(job, value) << '\n';
        return kExitOk;
    }

    auto series = store ? store->lookup(job.n, job.d, job.k) : std::nullopt;
    if (!series) {
        series = poincare::series_truncated(job.n, job.d, job.k, options_for(job));
        if (store) store->store(*series);
    }
    out << render_series(*series, job.format) << '\n';
    return kExitOk;
}

}  // namespace

std::vector<NamedBackend> default_backends(int n, const ResourceLimits& caps) {
    std::vector<NamedBackend> backends{
        {"dp",
         [caps](int n, int d, std::int64_t k) {
             return poincare::nu(n, d, k, {poincare::Backend::dp, caps, 1});
         }},
        {"bruteforce",
         [caps](int n, int d, std::int64_t k) {
             return poincare::nu(n, d, k, {poincare::Backend::bruteforce, caps, 1});
         }},
    };
    if (n == 2) {
        backends.push_back({"sylvester-cayley", [](int, int d, std::int64_t k) {
                                return poincare::sylvester_cayley_binary(d, k);
                            }});
    }
    return backends;
}

CheckReport run_check(int n, int d, std::int64_t max_degree,
                      const std::vector<NamedBackend>& backends) {
    CheckReport report{n, d, max_degree, {}, std::nullopt, std::nullopt};
    for (std::int64_t k = 0; k <= max_degree; ++k) {
        CheckRow row{k, {}, true};
        try {
            for (const auto& backend : backends) {
                row.values.emplace_back(backend.name, backend.compute(n, d, k));
            }
        } catch (const ResourceLimit& e) {
            report.aborted = "k=" + std::to_string(k) + ": " + e.what();
            break;
        }
        for (const auto& [name, value] : row.values) {
            row.pass = row.pass && value == row.values.front().second;
        }
        if (!row.pass && !report.first_mismatch) report.first_mismatch = k;
        report.rows.push_back(std::move(row));
    }
    return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dimensions and Poincare series of invariants of n-ary forms", "invdim"};
    app.require_subcommand(1);

    JobSpec job;
    bool no_cache = false;

    auto* dim = app.add_subcommand("dim", "Dimension nu_{n,d}(k) of degree-k invariants");
    dim->add_option("--n", job.n, "Number of variables")->required();
    dim->add_option("--k", job.k, "Degree of the invariants")->required();
    add_computation(*dim, job, &no_cache);
    add_common(*dim, job);

    auto* series = app.add_subcommand("series", "Poincare series truncated after t^K");
    series->add_option("--n", job.n, "Number of variables")->required();
    series->add_option("--K", job.k, "Truncation degree")->required();
    add_computation(*series, job, &no_cache);
    add_common(*series, job);

    auto* orbit = app.add_subcommand("orbit", "Aggregated signed dominant weights of rho - W(rho)");
    orbit->add_option("--n", job.n, "Number of variables")->required();
    add_common(*orbit, job);

    auto* check = app.add_subcommand("check", "Cross-check all counting backends for k = 0..K");
    check->add_option("--n", job.n, "Number of variables")->required();
    check->add_option("--K", job.k, "Truncation degree")->required();
    add_computation(*check, job, nullptr);
    add_common(*check, job);

    // CLI11 wants argv order reversed when given a vector.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    job.command = app.get_subcommands().front()->get_name();
    if (!job.cache_path && !no_cache && job.command != "check" && job.command != "orbit") {
        if (const char* env = std::getenv(kCacheEnvVar); env && *env) job.cache_path = env;
    }
    if (no_cache) job.cache_path.reset();

    try {
        return execute(job, out, err);
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResourceLimit& e) {
        err << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const cache::CacheError& e) {
        err << "cache error: " << e.what() << '\n';
        return kExitResource;
    }
}

}  // namespace invdim::cli
