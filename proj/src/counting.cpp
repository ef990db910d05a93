#include "invdim/counting.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace invdim::counting {
namespace {

void require_shape(int n, int d) {
    if (n < 2) throw InvalidParameter("rank n must be at least 2, got " + std::to_string(n));
    if (d < 1) throw InvalidParameter("degree d must be at least 1, got " + std::to_string(d));
}

void require_target(int n, const TargetVector& tv) {
    if (tv.targets.size() != static_cast<std::size_t>(n - 1)) {
        throw InvalidParameter("target vector must have length n - 1 = " + std::to_string(n - 1));
    }
    if (tv.cardinality < 0 ||
        std::any_of(tv.targets.begin(), tv.targets.end(), [](auto t) { return t < 0; })) {
        throw InvalidParameter("targets and cardinality must be non-negative");
    }
}

void fill_simplex(std::vector<std::int64_t>& prefix, std::size_t slot, std::int64_t budget,
                  std::vector<ExponentIndex>& out) {
    if (slot == prefix.size()) {
        out.push_back({prefix});
        return;
    }
    for (std::int64_t e = 0; e <= budget; ++e) {
        prefix[slot] = e;
        fill_simplex(prefix, slot + 1, budget - e, out);
    }
    prefix[slot] = 0;
}

class Enumerator {
public:
    Enumerator(std::vector<ExponentIndex> monomials, std::uint64_t node_cap)
        : monomials_(std::move(monomials)), node_cap_(node_cap) {
        const auto dims = monomials_.front().exponents.size();
        const auto m = monomials_.size();
        // suffix_max_[j][s]: largest s-th exponent among monomials j..m-1.
        suffix_max_.assign(m + 1, std::vector<std::int64_t>(dims, 0));
        suffix_min_.assign(m + 1, std::vector<std::int64_t>(dims, 0));
        suffix_max_total_.assign(m + 1, 0);
        for (auto j = m; j-- > 0;) {
            const auto& e = monomials_[j].exponents;
            for (std::size_t s = 0; s < dims; ++s) {
                suffix_max_[j][s] = std::max(suffix_max_[j + 1][s], e[s]);
                suffix_min_[j][s] = j + 1 == m ? e[s] : std::min(suffix_min_[j + 1][s], e[s]);
            }
            suffix_max_total_[j] = std::max(suffix_max_total_[j + 1], monomials_[j].total());
        }
    }

    std::uint64_t run(std::vector<std::int64_t> remaining, std::int64_t k) {
        if (!reachable(0, remaining, k)) return 0;
        search(0, remaining, k);
        return leaves_;
    }

private:
    bool reachable(std::size_t j, const std::vector<std::int64_t>& remaining,
                   std::int64_t k) const {
        if (j == monomials_.size()) {
            return k == 0 && std::all_of(remaining.begin(), remaining.end(),
                                         [](auto r) { return r == 0; });
        }
        std::int64_t total = 0;
        for (std::size_t s = 0; s < remaining.size(); ++s) {
            if (remaining[s] < 0) return false;
            if (remaining[s] > k * suffix_max_[j][s]) return false;
            if (remaining[s] < k * suffix_min_[j][s]) return false;
            total += remaining[s];
        }
        return total <= k * suffix_max_total_[j];
    }

    void search(std::size_t j, std::vector<std::int64_t>& remaining, std::int64_t k) {
        if (++nodes_ > node_cap_) {
            throw ResourceLimit("enumeration oracle exceeded " + std::to_string(node_cap_) +
                                " search nodes");
        }
        if (j == monomials_.size()) {
            ++leaves_;
            return;
        }
        const auto& e = monomials_[j].exponents;
        if (j + 1 == monomials_.size()) {
            // The last monomial must absorb everything that is left.
            for (std::size_t s = 0; s < e.size(); ++s) remaining[s] -= k * e[s];
            if (reachable(j + 1, remaining, 0)) search(j + 1, remaining, 0);
            for (std::size_t s = 0; s < e.size(); ++s) remaining[s] += k * e[s];
            return;
        }
        std::int64_t used = 0;
        while (used <= k) {
            if (reachable(j + 1, remaining, k - used)) search(j + 1, remaining, k - used);
            bool overshoot = false;
            for (std::size_t s = 0; s < e.size(); ++s) {
                remaining[s] -= e[s];
                overshoot = overshoot || remaining[s] < 0;
            }
            ++used;
            if (overshoot) break;
        }
        for (std::size_t s = 0; s < e.size(); ++s) remaining[s] += used * e[s];
    }

    std::vector<ExponentIndex> monomials_;
    std::uint64_t node_cap_;
    std::vector<std::vector<std::int64_t>> suffix_max_;
    std::vector<std::vector<std::int64_t>> suffix_min_;
    std::vector<std::int64_t> suffix_max_total_;
    std::uint64_t nodes_ = 0;
    std::uint64_t leaves_ = 0;
};

}  // namespace

std::int64_t ExponentIndex::total() const {
    return std::accumulate(exponents.begin(), exponents.end(), std::int64_t{0});
}

std::vector<ExponentIndex> index_set(int n, int d) {
    require_shape(n, d);
    std::vector<ExponentIndex> out;
    std::vector<std::int64_t> prefix(static_cast<std::size_t>(n - 1), 0);
    fill_simplex(prefix, 0, d, out);
    return out;
}

std::optional<TargetVector> targets(int n, int d, std::int64_t k, const weyl::Weight& mu) {
    require_shape(n, d);
    if (k < 0) throw InvalidParameter("degree k must be non-negative, got " + std::to_string(k));

    const auto shift = weyl::mu_prime(n, mu);
    Rational base(BigInt(static_cast<long>(k)) * d, BigInt(n));
    base.canonicalize();

    TargetVector tv;
    tv.cardinality = k;
    tv.targets.reserve(shift.coords.size());
    for (const auto& offset : shift.coords) {
        Rational target = base - offset;
        if (target.get_den() != 1 || target < 0) return std::nullopt;
        const auto& num = target.get_num();
        if (!num.fits_slong_p()) throw ResourceLimit("target exponent does not fit in 64 bits");
        tv.targets.push_back(num.get_si());
    }
    return tv;
}

CountResult count_solutions_bruteforce(int n, int d, const TargetVector& tv,
                                       const ResourceLimits& limits) {
    require_shape(n, d);
    require_target(n, tv);
    Enumerator enumerator(index_set(n, d), limits.max_oracle_nodes);
    const auto leaves = enumerator.run(tv.targets, tv.cardinality);
    BigInt value;
    mpz_import(value.get_mpz_t(), 1, 1, sizeof(leaves), 0, 0, &leaves);
    return {value};
}

CountResult count_solutions_dp(int n, int d, const TargetVector& tv,
                               const ResourceLimits& limits) {
    require_shape(n, d);
    require_target(n, tv);
    const SolutionCountTable table(n, d, tv.cardinality, tv.targets, limits);
    return {table.at(tv.cardinality, tv.targets)};
}

CountResult c(int n, int d, std::int64_t k, const weyl::Weight& mu, const ResourceLimits& limits) {
    const auto tv = targets(n, d, k, mu);
    if (!tv) return {BigInt(0)};
    return count_solutions_dp(n, d, *tv, limits);
}

SolutionCountTable::SolutionCountTable(int n, int d, std::int64_t max_degree,
                                       std::vector<std::int64_t> box,
                                       const ResourceLimits& limits)
    : max_degree_(max_degree), box_(std::move(box)) {
    require_shape(n, d);
    if (box_.size() != static_cast<std::size_t>(n - 1)) {
        throw InvalidParameter("table box must have length n - 1 = " + std::to_string(n - 1));
    }
    if (max_degree_ < 0 || std::any_of(box_.begin(), box_.end(), [](auto b) { return b < 0; })) {
        throw InvalidParameter("table bounds must be non-negative");
    }

    // Cell count with overflow-safe comparison against the cap.
    const auto cap = limits.max_dp_cells;
    auto too_big = [&] {
        return ResourceLimit("counting table would exceed " + std::to_string(cap) + " cells");
    };
    strides_.assign(box_.size(), 1);
    for (auto s = box_.size(); s-- > 0;) {
        strides_[s] = static_cast<std::int64_t>(layer_size_);
        const auto extent = static_cast<std::uint64_t>(box_[s]) + 1;
        if (layer_size_ > cap / extent) throw too_big();
        layer_size_ *= extent;
    }
    const auto layers = static_cast<std::uint64_t>(max_degree_) + 1;
    if (layer_size_ > cap / layers) throw too_big();
    cells_.assign(layer_size_ * layers, BigInt(0));
    cells_[0] = 1;

    std::vector<std::int64_t> omega(box_.size());
    for (const auto& monomial : index_set(n, d)) {
        const auto& eta = monomial.exponents;
        bool fits = true;
        std::int64_t shift = 0;
        for (std::size_t s = 0; s < eta.size(); ++s) {
            fits = fits && eta[s] <= box_[s];
            shift += eta[s] * strides_[s];
        }
        if (!fits) continue;

        // Multiplying by 1/(1 - t q^eta): in-place forward pass over t-degree.
        for (std::int64_t degree = 1; degree <= max_degree_; ++degree) {
            BigInt* dst = cells_.data() + static_cast<std::uint64_t>(degree) * layer_size_;
            const BigInt* src = dst - layer_size_;
            std::fill(omega.begin(), omega.end(), 0);
            for (std::uint64_t flat = 0; flat < layer_size_; ++flat) {
                bool inside = true;
                for (std::size_t s = 0; s < eta.size() && inside; ++s) inside = omega[s] >= eta[s];
                if (inside) {
                    const auto& from = src[static_cast<std::int64_t>(flat) - shift];
                    if (sgn(from) != 0) dst[flat] += from;
                }
                for (auto s = omega.size(); s-- > 0;) {
                    if (++omega[s] <= box_[s]) break;
                    omega[s] = 0;
                }
            }
        }
    }
}

const BigInt& SolutionCountTable::at(std::int64_t degree,
                                     std::span<const std::int64_t> omega) const {
    static const BigInt zero(0);
    if (degree < 0 || degree > max_degree_ || omega.size() != box_.size()) return zero;
    std::uint64_t flat = static_cast<std::uint64_t>(degree) * layer_size_;
    for (std::size_t s = 0; s < omega.size(); ++s) {
        if (omega[s] < 0 || omega[s] > box_[s]) return zero;
        flat += static_cast<std::uint64_t>(omega[s] * strides_[s]);
    }
    return cells_[flat];
}

std::span<const BigInt> SolutionCountTable::layer(std::int64_t degree) const {
    if (degree < 0 || degree > max_degree_) {
        throw InvalidParameter("t-degree " + std::to_string(degree) + " outside the table");
    }
    return {cells_.data() + static_cast<std::uint64_t>(degree) * layer_size_, layer_size_};
}

}  // namespace invdim::counting
