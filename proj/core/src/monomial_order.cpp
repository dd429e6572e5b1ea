#include "fockrank/monomial_order.hpp"

#include <algorithm>
#include <string>

namespace fockrank {

namespace {

// All m with |m| = remaining appended in lexicographically increasing order.
void enumerate_degree(int k, MultiIndex& current, int pos, int remaining,
                      std::vector<MultiIndex>& out) {
    if (pos == k - 1) {
        current[pos] = remaining;
        out.push_back(current);
        return;
    }
    for (int n = 0; n <= remaining; ++n) {
        current[pos] = n;
        enumerate_degree(k, current, pos + 1, remaining - n, out);
    }
}

}  // namespace

std::int64_t MonomialOrder::count_multi_indices(int k, int degree_cap) {
    // C(degree_cap + k, k), computed without overflow for the sizes in use.
    std::int64_t count = 1;
    for (int i = 1; i <= k; ++i) {
        count = count * (degree_cap + i) / i;
    }
    return count;
}

MonomialOrder::MonomialOrder(int k, int degree_cap) : k_(k), cap_(degree_cap) {
    if (k <= 0) throw ValidationError(ValidationError::Kind::BadField,
                                      "monomial order needs k >= 1");
    if (degree_cap < 0 || degree_cap > kFactorialDegreeCap) {
        throw ValidationError(
            ValidationError::Kind::BadField,
            "degree cap " + std::to_string(degree_cap) +
                " outside [0, " + std::to_string(kFactorialDegreeCap) + "]");
    }
    // Entries are packed into a 64-bit key, 64/k bits per variable.  Worst
    // case k=6 gives 10 bits (cap 1023); any table that large is refused by
    // the engine's memory guard long before construction.
    pack_bits_ = k_ == 1 ? 16 : 64 / k_;
    if (degree_cap >= (1LL << pack_bits_)) {
        throw ResourceGuardError("degree cap " + std::to_string(degree_cap) +
                                 " too large to index with k=" +
                                 std::to_string(k_) + " variables");
    }

    monos_.reserve(count_multi_indices(k, degree_cap));
    prefix_.assign(degree_cap + 1, 0);
    MultiIndex current(k, 0);
    for (int s = 0; s <= degree_cap; ++s) {
        enumerate_degree(k, current, 0, s, monos_);
        prefix_[s] = static_cast<std::int64_t>(monos_.size());
    }

    degree_.resize(monos_.size());
    weight_.resize(monos_.size());

    std::vector<long double> fact(degree_cap + 1, 1.0L);
    for (int n = 1; n <= degree_cap; ++n) fact[n] = fact[n - 1] * n;

    rank_.reserve(monos_.size() * 2);
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(monos_.size()); ++r) {
        const auto& m = monos_[r];
        int deg = 0;
        long double w = 1.0L;
        for (int a = 0; a < k_; ++a) {
            deg += m[a];
            w *= fact[m[a]];
        }
        degree_[r] = deg;
        weight_[r] = w;
        rank_.emplace(pack(m), r);
    }
}

std::uint64_t MonomialOrder::pack(const MultiIndex& m) const {
    std::uint64_t key = static_cast<std::uint64_t>(m[0]);
    for (int a = 1; a < k_; ++a) {
        key = (key << pack_bits_) | static_cast<std::uint64_t>(m[a]);
    }
    return key;
}

std::int64_t MonomialOrder::rank_of(const MultiIndex& m) const {
    int deg = 0;
    for (int a = 0; a < k_; ++a) {
        if (m[a] < 0) return -1;
        deg += m[a];
    }
    if (deg > cap_) return -1;
    auto it = rank_.find(pack(m));
    return it == rank_.end() ? -1 : it->second;
}

std::int64_t MonomialOrder::rank_of_difference(std::int64_t rank,
                                               const MultiIndex& delta) const {
    const auto& m = monos_[rank];
    MultiIndex diff(k_);
    for (int a = 0; a < k_; ++a) {
        diff[a] = m[a] - delta[a];
        if (diff[a] < 0) return -1;
    }
    auto it = rank_.find(pack(diff));
    return it == rank_.end() ? -1 : it->second;
}

}  // namespace fockrank
