#include "invdim/poincare.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "invdim/counting.hpp"
#include "invdim/weyl.hpp"

namespace invdim::poincare {
namespace {

void require_params(int n, int d, std::int64_t k) {
    if (n < 2) throw InvalidParameter("rank n must be at least 2, got " + std::to_string(n));
    if (d < 1) throw InvalidParameter("degree d must be at least 1, got " + std::to_string(d));
    if (k < 0) throw InvalidParameter("degree k must be non-negative, got " + std::to_string(k));
}

using Polynomial = std::vector<BigInt>;

// Coefficients of the Gaussian binomial [top choose bottom]_q.
Polynomial gaussian_binomial(std::int64_t top, std::int64_t bottom) {
    // row[r] = [m choose r]_q for the current m.
    std::vector<Polynomial> row{Polynomial{BigInt(1)}};
    for (std::int64_t m = 1; m <= top; ++m) {
        const auto width = std::min(m, bottom);
        std::vector<Polynomial> next(static_cast<std::size_t>(width) + 1);
        next[0] = Polynomial{BigInt(1)};
        for (std::int64_t r = 1; r <= width; ++r) {
            // [m, r] = [m-1, r-1] + q^r [m-1, r]
            auto& poly = next[static_cast<std::size_t>(r)];
            poly.assign(static_cast<std::size_t>(r * (m - r)) + 1, BigInt(0));
            const auto& left = row[static_cast<std::size_t>(r - 1)];
            for (std::size_t i = 0; i < left.size(); ++i) poly[i] += left[i];
            if (r <= m - 1) {
                const auto& right = row[static_cast<std::size_t>(r)];
                for (std::size_t i = 0; i < right.size(); ++i) {
                    poly[i + static_cast<std::size_t>(r)] += right[i];
                }
            }
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(std::min(top, bottom))];
}

BigInt nu_checked(int n, int d, std::int64_t k, const Options& options) {
    if (k == 0) return BigInt(1);
    if ((k * d) % n != 0) return BigInt(0);

    struct Feasible {
        std::int64_t multiplicity;
        counting::TargetVector tv;
    };
    std::vector<Feasible> feasible;
    for (const auto& term : weyl::aggregate_orbit(n, options.limits)) {
        if (auto tv = counting::targets(n, d, k, term.dominant)) {
            feasible.push_back({term.multiplicity, std::move(*tv)});
        }
    }
    if (feasible.empty()) return BigInt(0);

    BigInt total = 0;
    if (options.backend == Backend::bruteforce) {
        for (const auto& f : feasible) {
            total += BigInt(static_cast<long>(f.multiplicity)) *
                     counting::count_solutions_bruteforce(n, d, f.tv, options.limits).value;
        }
    } else {
        // One table over the componentwise-largest target serves every term.
        std::vector<std::int64_t> box(static_cast<std::size_t>(n - 1), 0);
        for (const auto& f : feasible) {
            for (std::size_t s = 0; s < box.size(); ++s) box[s] = std::max(box[s], f.tv.targets[s]);
        }
        const counting::SolutionCountTable table(n, d, k, box, options.limits);
        for (const auto& f : feasible) {
            total += BigInt(static_cast<long>(f.multiplicity)) * table.at(k, f.tv.targets);
        }
    }
    if (sgn(total) < 0) {
        throw std::logic_error("negative dimension " + total.get_str() + " for n=" +
                               std::to_string(n) + " d=" + std::to_string(d) +
                               " k=" + std::to_string(k));
    }
    return total;
}

}  // namespace

BigInt nu(int n, int d, std::int64_t k, const Options& options) {
    require_params(n, d, k);
    return nu_checked(n, d, k, options);
}

SeriesTruncation series_truncated(int n, int d, std::int64_t max_degree, const Options& options) {
    require_params(n, d, max_degree);
    if (n > options.limits.max_rank) {
        throw ResourceLimit("rank n = " + std::to_string(n) + " exceeds the orbit cap of " +
                            std::to_string(options.limits.max_rank));
    }

    SeriesTruncation series{n, d, max_degree, {}};
    const auto count = static_cast<std::size_t>(max_degree) + 1;
    series.coefficients.assign(count, BigInt(0));
    std::vector<std::exception_ptr> errors(count);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (auto k = next++; k < count; k = next++) {
            try {
                series.coefficients[k] = nu_checked(n, d, static_cast<std::int64_t>(k), options);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };

    auto threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                        : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
    }

    // Report the failure at the lowest degree regardless of scheduling.
    for (const auto& error : errors) {
        if (error) std::rethrow_exception(error);
    }
    return series;
}

BigInt sylvester_cayley_binary(int d, std::int64_t k) {
    require_params(2, d, k);
    if ((static_cast<std::int64_t>(d) * k) % 2 != 0) return BigInt(0);

    // Multisets of size k from {0..d} with sum N are counted by the q^N
    // coefficient of [d+k choose k]_q.
    const auto half = static_cast<std::size_t>(d * k / 2);
    const auto poly = gaussian_binomial(d + k, k);
    BigInt value = poly[half];
    if (half > 0) value -= poly[half - 1];
    return value;
}

}  // namespace invdim::poincare
