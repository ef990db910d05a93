#include "invdim/weyl.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace invdim::weyl {
namespace {

void require_rank(int n) {
    if (n < 2) {
        throw InvalidParameter("rank n must be at least 2, got " + std::to_string(n));
    }
}

void require_rank_cap(int n, const ResourceLimits& limits) {
    if (n > limits.max_rank) {
        throw ResourceLimit("rank n = " + std::to_string(n) + " exceeds the orbit cap of " +
                            std::to_string(limits.max_rank) + " (|W| = n!)");
    }
}

// Parity of a permutation via its cycle decomposition.
int permutation_sign(const std::vector<int>& perm) {
    std::vector<bool> seen(perm.size(), false);
    int sign = 1;
    for (std::size_t start = 0; start < perm.size(); ++start) {
        if (seen[start]) continue;
        std::size_t length = 0;
        for (auto i = start; !seen[i]; i = static_cast<std::size_t>(perm[i])) {
            seen[i] = true;
            ++length;
        }
        if (length % 2 == 0) sign = -sign;
    }
    return sign;
}

}  // namespace

bool Weight::is_dominant() const {
    return std::all_of(coords.begin(), coords.end(), [](auto c) { return c >= 0; });
}

std::string Weight::to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) out << ',';
        out << coords[i];
    }
    out << ')';
    return out.str();
}

Weight rho(int n) {
    require_rank(n);
    return Weight{std::vector<std::int64_t>(static_cast<std::size_t>(n - 1), 1)};
}

LVector weight_to_lvector(const Weight& w) {
    const auto n = w.coords.size() + 1;
    LVector v{std::vector<std::int64_t>(n, 0)};
    for (auto i = n - 1; i-- > 0;) {
        v.entries[i] = v.entries[i + 1] + w.coords[i];
    }
    return v;
}

Weight lvector_to_weight(const LVector& v) {
    Weight w;
    if (v.entries.empty()) return w;
    w.coords.resize(v.entries.size() - 1);
    for (std::size_t i = 0; i + 1 < v.entries.size(); ++i) {
        w.coords[i] = v.entries[i] - v.entries[i + 1];
    }
    return w;
}

std::vector<SignedWeight> signed_orbit_rho(int n, const ResourceLimits& limits) {
    require_rank(n);
    require_rank_cap(n, limits);

    const auto rho_l = weight_to_lvector(rho(n)).entries;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);

    std::vector<SignedWeight> orbit;
    LVector diff{std::vector<std::int64_t>(perm.size())};
    do {
        // s permutes the L-coordinates: s(rho)[i] = rho[perm[i]].
        for (std::size_t i = 0; i < perm.size(); ++i) {
            diff.entries[i] = rho_l[i] - rho_l[static_cast<std::size_t>(perm[i])];
        }
        orbit.push_back({lvector_to_weight(diff), permutation_sign(perm)});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return orbit;
}

Weight dominant_representative(const Weight& w) {
    auto v = weight_to_lvector(w);
    std::sort(v.entries.begin(), v.entries.end(), std::greater<>{});
    return lvector_to_weight(v);
}

const std::vector<SignedDominantTerm>& aggregate_orbit(int n, const ResourceLimits& limits) {
    require_rank(n);
    require_rank_cap(n, limits);

    static std::mutex mutex;
    static std::map<int, std::vector<SignedDominantTerm>> cache;

    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;

    std::map<Weight, std::int64_t> grouped;
    for (const auto& term : signed_orbit_rho(n, limits)) {
        grouped[dominant_representative(term.weight)] += term.sign;
    }
    std::vector<SignedDominantTerm> terms;
    for (auto& [weight, multiplicity] : grouped) {
        if (multiplicity != 0) terms.push_back({weight, multiplicity});
    }
    return cache.emplace(n, std::move(terms)).first->second;
}

RationalWeight mu_prime(int n, const Weight& mu) {
    require_rank(n);
    if (mu.coords.size() != static_cast<std::size_t>(n - 1)) {
        throw InvalidParameter("weight " + mu.to_string() + " does not have length n - 1 = " +
                               std::to_string(n - 1));
    }
    const auto last = static_cast<std::size_t>(n - 2);

    // (sum_{s=1}^{n-2} s mu_s - mu_{n-1}) / n, shared by every coordinate.
    BigInt weighted = 0;
    for (std::size_t s = 0; s < last; ++s) {
        weighted += BigInt(static_cast<long>(s + 1)) * BigInt(static_cast<long>(mu.coords[s]));
    }
    weighted -= BigInt(static_cast<long>(mu.coords[last]));
    Rational correction(weighted, BigInt(n));
    correction.canonicalize();

    RationalWeight out;
    out.coords.resize(static_cast<std::size_t>(n - 1));
    BigInt tail = 0;  // sum_{s=i}^{n-2} mu_s
    for (auto i = static_cast<std::size_t>(n - 1); i-- > 0;) {
        if (i < last) tail += BigInt(static_cast<long>(mu.coords[i]));
        out.coords[i] = Rational(tail) - correction;
    }
    return out;
}

}  // namespace invdim::weyl
