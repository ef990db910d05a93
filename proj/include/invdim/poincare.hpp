#pragma once

#include <cstdint>
#include <vector>

#include "invdim/common.hpp"

namespace invdim::poincare {

enum class Backend { dp, bruteforce };

struct Options {
    Backend backend = Backend::dp;
    ResourceLimits limits{};
    /// Worker threads for series_truncated; 0 picks hardware concurrency.
    unsigned threads = 1;
};

/// P_{n,d}(t) truncated after t^max_degree.
struct SeriesTruncation {
    int n = 0;
    int d = 0;
    std::int64_t max_degree = 0;
    std::vector<BigInt> coefficients;

    bool operator==(const SeriesTruncation&) const = default;
};

/// Dimension of the degree-k invariants of n-ary forms of degree d.
BigInt nu(int n, int d, std::int64_t k, const Options& options = {});

SeriesTruncation series_truncated(int n, int d, std::int64_t max_degree,
                                  const Options& options = {});

/// nu(2, d, k) by the classical Cayley-Sylvester count: the difference of two
/// consecutive coefficients of the Gaussian binomial [d+k choose k]_q.
/// Shares no code with the Weyl-orbit route.
BigInt sylvester_cayley_binary(int d, std::int64_t k);

}  // namespace invdim::poincare
