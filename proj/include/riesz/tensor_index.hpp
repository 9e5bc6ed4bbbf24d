#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace riesz {

/// One component (i_1, ..., i_t) of an order-t tensor over R^n.
/// Indices are 1-based coordinate numbers in [1..n].
class MultiIndex {
public:
    MultiIndex(int n, std::vector<int> indices);

    int dimension() const noexcept { return n_; }
    int order() const noexcept { return static_cast<int>(indices_.size()); }
    std::span<const int> indices() const noexcept { return indices_; }
    int operator[](std::size_t pos) const noexcept { return indices_[pos]; }

    /// Indices sorted ascending: the representative of the permutation class.
    MultiIndex canonical() const;

    std::string to_string() const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.indices_ <=> b.indices_; }

private:
    int n_;
    std::vector<int> indices_;
};

/// Multiplicity s(i) of each coordinate index i in a component.
class MultiplicityMap {
public:
    /// counts[i-1] is the multiplicity of coordinate i; zeros allowed.
    explicit MultiplicityMap(std::vector<int> counts);
    static MultiplicityMap of(const MultiIndex& idx);

    int dimension() const noexcept { return static_cast<int>(counts_.size()); }
    int total() const noexcept { return total_; }
    /// Multiplicity of 1-based coordinate i.
    int at(int i) const { return counts_.at(static_cast<std::size_t>(i - 1)); }
    std::span<const int> counts() const noexcept { return counts_; }

    /// Multiplicities of the coordinates that actually occur.
    std::vector<int> nonzero_counts() const;

    bool has_odd() const noexcept;
    bool all_even() const noexcept { return !has_odd(); }

    /// Ascending multi-index with these multiplicities.
    MultiIndex to_multi_index() const;

    friend bool operator==(const MultiplicityMap&, const MultiplicityMap&) = default;

private:
    std::vector<int> counts_;
    int total_ = 0;
};

/// Every ascending multi-index of order t over [1..n], in lexicographic order.
std::vector<MultiIndex> enumerate_classes(int n, int t);

}  // namespace riesz
