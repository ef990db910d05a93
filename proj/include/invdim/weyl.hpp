#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "invdim/common.hpp"

namespace invdim::weyl {

/// Integral weight of sl_n written in the basis of fundamental weights.
/// The rank n is implied by the length, which is always n - 1.
struct Weight {
    std::vector<std::int64_t> coords;

    int rank() const { return static_cast<int>(coords.size()) + 1; }
    bool is_dominant() const;
    std::string to_string() const;

    auto operator<=>(const Weight&) const = default;
};

/// Coefficients on L_1..L_n. Only successive differences are meaningful.
struct LVector {
    std::vector<std::int64_t> entries;

    auto operator<=>(const LVector&) const = default;
};

struct SignedWeight {
    Weight weight;
    int sign = 1;

    bool operator==(const SignedWeight&) const = default;
};

struct SignedDominantTerm {
    Weight dominant;
    std::int64_t multiplicity = 0;

    bool operator==(const SignedDominantTerm&) const = default;
};

/// Rational weight; every entry times n is an integer.
struct RationalWeight {
    std::vector<Rational> coords;

    bool operator==(const RationalWeight&) const = default;
};

Weight rho(int n);

/// Normalized so that the last entry is zero.
LVector weight_to_lvector(const Weight& w);
Weight lvector_to_weight(const LVector& v);

/// One entry per permutation of S_n (lexicographic order of permutations):
/// rho - s(rho) with sign sgn(s). The identity comes first.
std::vector<SignedWeight> signed_orbit_rho(int n, const ResourceLimits& limits = {});

/// The unique dominant weight in the Weyl orbit of w.
Weight dominant_representative(const Weight& w);

/// signed_orbit_rho(n) grouped by dominant representative with summed signs,
/// zero multiplicities dropped, sorted lexicographically by weight.
/// Results are cached per n.
const std::vector<SignedDominantTerm>& aggregate_orbit(int n, const ResourceLimits& limits = {});

/// Coordinate shift turning a weight into exponent offsets for coefficient
/// extraction: mu'_i = sum_{s=i}^{n-2} mu_s - (sum_{s=1}^{n-2} s*mu_s - mu_{n-1}) / n.
RationalWeight mu_prime(int n, const Weight& mu);

}  // namespace invdim::weyl
