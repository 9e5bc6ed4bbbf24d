#pragma once

// xi-adapted orthonormal basis obtained by Schmidt orthonormalization of
// (xi, i_1, i_2, ..., i_{n-1}).
//
// Index convention: R(l, k) is the l-th canonical coordinate of the k-th new
// basis vector, so column 0 is xi itself. In the rotated-frame expansion a
// canonical coordinate theta_l equals sum_k R(l, k) theta'_k.

#include <cstddef>
#include <span>
#include <vector>

#include "riesz/direction.hpp"
#include "riesz/multiplier.hpp"

namespace riesz {

class BasisMatrix {
public:
    int dimension() const noexcept { return n_; }
    /// 0-based (row, column).
    double operator()(int row, int col) const noexcept
    {
        return data_[static_cast<std::size_t>(col) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(row)];
    }
    std::span<const double> column(int col) const noexcept
    {
        return {data_.data() + static_cast<std::size_t>(col) * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
    }
    /// True when the coordinates were reordered to avoid a vanishing B(j).
    bool pivoted() const noexcept { return pivoted_; }
    /// Coordinate order used for the construction (identity unless pivoted).
    std::span<const int> coordinate_order() const noexcept { return order_; }
    /// B(j) = sqrt(1 - sum_{k < j} xi_k^2) in construction order (0-based
    /// coordinates, j = 0..n-1), computed from tail sums; B(0) = 1.
    std::span<const double> b_values() const noexcept { return b_; }

private:
    friend BasisMatrix build_basis(const Direction& xi);
    int n_ = 0;
    std::vector<double> data_;
    std::vector<int> order_;
    std::vector<double> b_;
    bool pivoted_ = false;
};

/// B(j) threshold below which the coordinates are reordered.
inline constexpr double kDegenerateB = 1e-10;

BasisMatrix build_basis(const Direction& xi);
/// Rejects vectors that are not unit within 1e-12.
BasisMatrix build_basis(std::span<const double> xi);

/// sum_{i=2}^n R(p, i) R(q, i) for 1-based p, q; equals delta_pq - xi_p xi_q.
double row_pair_sum(const BasisMatrix& r, int p, int q);

/// Largest deviations of the frame identities, for validation.
struct FrameDefects {
    double column_orthonormality = 0.0;  // max |R^T R - I|
    double row_orthonormality = 0.0;     // max |R R^T - I|
    double first_column = 0.0;           // max |R(l, 0) - xi_l|
    double triangularity = 0.0;          // max |R(l, k)| over l < k-1, construction order
    double pair_sum = 0.0;               // max |row_pair_sum - (delta - xi xi)|
};
FrameDefects frame_defects(const BasisMatrix& r, const Direction& xi);

/// T^{lmn...} obtained by contracting R factors against the closed-form
/// rotated-frame components T'. Cost n^t; refuses above max_terms.
ComponentValue rotate_component_oracle(const KernelSpec& spec, std::span<const double> xi,
                                       Normalization norm = Normalization::per_sphere_surface,
                                       std::size_t max_terms = 2'000'000);

}  // namespace riesz
