#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace invdim {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Thrown when a caller passes out-of-range parameters (rank, degree, ...).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation would exceed one of the configured caps.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ResourceLimits {
    /// Largest n accepted by the orbit machinery; |W| = n!.
    int max_rank = 8;
    /// Largest number of big-integer cells in one counting table.
    std::uint64_t max_dp_cells = 50'000'000;
    /// Largest number of search nodes the enumeration oracle may visit.
    std::uint64_t max_oracle_nodes = 2'000'000'000;
};

}  // namespace invdim
