#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "invdim/common.hpp"
#include "invdim/weyl.hpp"

namespace invdim::counting {

/// Exponent vector (i_1, ..., i_{n-1}) of a monomial with |i| <= d.
struct ExponentIndex {
    std::vector<std::int64_t> exponents;

    std::int64_t total() const;
    auto operator<=>(const ExponentIndex&) const = default;
};

/// Required values of omega_1..omega_{n-1} together with the required |alpha|.
struct TargetVector {
    std::vector<std::int64_t> targets;
    std::int64_t cardinality = 0;

    bool operator==(const TargetVector&) const = default;
};

struct CountResult {
    BigInt value;

    bool operator==(const CountResult&) const = default;
};

/// All lattice points of the simplex |i| <= d in Z_+^{n-1}, in lexicographic
/// order. Size is C(d+n-1, n-1).
std::vector<ExponentIndex> index_set(int n, int d);

/// Targets omega_i = kd/n - mu'_i. Returns nullopt when any target is
/// negative or non-integral; the count is zero in that case.
std::optional<TargetVector> targets(int n, int d, std::int64_t k, const weyl::Weight& mu);

/// Exhaustive enumeration of alpha: I_{n,d} -> Z_+ with |alpha| = k and
/// omega(alpha) = targets. Visits at most limits.max_oracle_nodes nodes.
CountResult count_solutions_bruteforce(int n, int d, const TargetVector& tv,
                                       const ResourceLimits& limits = {});

/// Coefficient extraction from the truncated expansion of
/// 1 / prod_{|eta| <= d} (1 - t q^eta).
CountResult count_solutions_dp(int n, int d, const TargetVector& tv,
                               const ResourceLimits& limits = {});

/// c_{n,d}(k, mu) through the DP backend.
CountResult c(int n, int d, std::int64_t k, const weyl::Weight& mu,
              const ResourceLimits& limits = {});

/// Truncated coefficients of 1 / prod_{|eta| <= d} (1 - t q^eta) restricted
/// to t-degree <= max_degree and to q-exponents inside the box
/// [0, box[0]] x ... x [0, box[n-2]]. Every count with exponents inside the
/// box is exact, since all eta are non-negative.
class SolutionCountTable {
public:
    SolutionCountTable(int n, int d, std::int64_t max_degree, std::vector<std::int64_t> box,
                       const ResourceLimits& limits = {});

    std::int64_t max_degree() const { return max_degree_; }
    const std::vector<std::int64_t>& box() const { return box_; }
    std::uint64_t cell_count() const { return cells_.size(); }

    /// Number of alpha with |alpha| = degree and omega(alpha) = omega.
    /// Zero for any omega outside the box.
    const BigInt& at(std::int64_t degree, std::span<const std::int64_t> omega) const;

    /// All counts of one t-degree, flattened with the last coordinate fastest.
    std::span<const BigInt> layer(std::int64_t degree) const;

private:
    std::int64_t max_degree_;
    std::vector<std::int64_t> box_;
    std::vector<std::int64_t> strides_;
    std::uint64_t layer_size_ = 1;
    std::vector<BigInt> cells_;
};

}  // namespace invdim::counting
