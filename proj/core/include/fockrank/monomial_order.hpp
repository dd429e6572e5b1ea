#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "fockrank/errors.hpp"

namespace fockrank {

using MultiIndex = std::vector<int>;

/// Graded lexicographic enumeration of multi-indices in k variables.
/// The order is independent of any degree cap (a cap is just a prefix of the
/// same sequence), so ranks are shared between tables of different sizes:
/// indices with total degree <= s occupy exactly ranks [0, count_up_to(s)).
class MonomialOrder {
public:
    MonomialOrder(int k, int degree_cap);

    int vars() const { return k_; }
    int degree_cap() const { return cap_; }

    /// Number of multi-indices with total degree <= s.
    std::int64_t count_up_to(int s) const { return prefix_.at(s); }

    std::int64_t size() const { return static_cast<std::int64_t>(monos_.size()); }

    const MultiIndex& at(std::int64_t rank) const { return monos_[rank]; }
    int total_degree(std::int64_t rank) const { return degree_[rank]; }

    /// Rank of a multi-index, or -1 if it has a negative entry or exceeds
    /// the cap.
    std::int64_t rank_of(const MultiIndex& m) const;

    /// Rank of (at(rank) - delta), or -1 if any entry would go negative.
    std::int64_t rank_of_difference(std::int64_t rank, const MultiIndex& delta) const;

    /// prod_alpha m_alpha! as a long double (exact for small degrees, finite
    /// up to total degree 1754).
    long double factorial_weight(std::int64_t rank) const { return weight_[rank]; }

    static std::int64_t count_multi_indices(int k, int degree_cap);

private:
    std::uint64_t pack(const MultiIndex& m) const;

    int k_;
    int cap_;
    std::vector<MultiIndex> monos_;
    std::vector<int> degree_;
    std::vector<long double> weight_;
    std::vector<std::int64_t> prefix_;  // prefix_[s] = #indices with degree <= s
    std::unordered_map<std::uint64_t, std::int64_t> rank_;
    int pack_bits_ = 0;
};

/// Largest total degree whose factorial is finite in long double.
inline constexpr int kFactorialDegreeCap = 1754;

}  // namespace fockrank
