#pragma once

#include <span>
#include <vector>

namespace riesz {

/// Unit vector of R^n (n >= 2): the point at which a multiplier is evaluated.
class Direction {
public:
    /// Scales any finite nonzero vector to unit length. Scaling v by a power
    /// of two leaves the result bit-identical, and normalizing an already
    /// normalized vector returns it unchanged.
    static Direction normalize(std::span<const double> v);
    /// Accepts v only if | ||v|| - 1 | <= tol.
    static Direction from_unit(std::span<const double> v, double tol = 1e-12);

    int dimension() const noexcept { return static_cast<int>(coords_.size()); }
    std::span<const double> coords() const noexcept { return coords_; }
    double operator[](std::size_t i) const noexcept { return coords_[i]; }

private:
    explicit Direction(std::vector<double> c) : coords_(std::move(c)) {}
    std::vector<double> coords_;
};

}  // namespace riesz
