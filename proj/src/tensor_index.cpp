#include "riesz/tensor_index.hpp"

#include <algorithm>

#include "riesz/errors.hpp"

namespace riesz {

MultiIndex::MultiIndex(int n, std::vector<int> indices) : n_(n), indices_(std::move(indices))
{
    if (n_ < 2) throw DomainError("MultiIndex: dimension must be at least 2");
    if (indices_.empty()) throw DomainError("MultiIndex: tensor order must be at least 1");
    for (int i : indices_)
        if (i < 1 || i > n_)
            throw DomainError("MultiIndex: index " + std::to_string(i) + " outside [1.." + std::to_string(n_) + "]");
}

MultiIndex MultiIndex::canonical() const
{
    std::vector<int> sorted = indices_;
    std::sort(sorted.begin(), sorted.end());
    return MultiIndex(n_, std::move(sorted));
}

std::string MultiIndex::to_string() const
{
    std::string out;
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(indices_[k]);
    }
    return out;
}

MultiplicityMap::MultiplicityMap(std::vector<int> counts) : counts_(std::move(counts))
{
    if (counts_.size() < 2) throw DomainError("MultiplicityMap: dimension must be at least 2");
    for (int c : counts_) {
        if (c < 0) throw DomainError("MultiplicityMap: negative multiplicity");
        total_ += c;
    }
}

MultiplicityMap MultiplicityMap::of(const MultiIndex& idx)
{
    std::vector<int> counts(static_cast<std::size_t>(idx.dimension()), 0);
    for (int i : idx.indices()) ++counts[static_cast<std::size_t>(i - 1)];
    return MultiplicityMap(std::move(counts));
}

std::vector<int> MultiplicityMap::nonzero_counts() const
{
    std::vector<int> out;
    for (int c : counts_)
        if (c > 0) out.push_back(c);
    return out;
}

bool MultiplicityMap::has_odd() const noexcept
{
    return std::any_of(counts_.begin(), counts_.end(), [](int c) { return c % 2 != 0; });
}

MultiIndex MultiplicityMap::to_multi_index() const
{
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(total_));
    for (std::size_t i = 0; i < counts_.size(); ++i) idx.insert(idx.end(), static_cast<std::size_t>(counts_[i]), static_cast<int>(i + 1));
    return MultiIndex(dimension(), std::move(idx));
}

std::vector<MultiIndex> enumerate_classes(int n, int t)
{
    if (n < 2 || t < 1) throw DomainError("enumerate_classes: need n >= 2 and t >= 1");
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(t), 1);
    while (true) {
        out.emplace_back(n, cur);
        // advance to the next non-decreasing sequence
        int pos = t - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n) --pos;
        if (pos < 0) break;
        const int v = cur[static_cast<std::size_t>(pos)] + 1;
        for (int k = pos; k < t; ++k) cur[static_cast<std::size_t>(k)] = v;
    }
    return out;
}

}  // namespace riesz
