#include "riesz/direction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "riesz/errors.hpp"

namespace riesz {

Direction Direction::normalize(std::span<const double> v)
{
    if (v.size() < 2) throw DomainError("direction needs at least 2 coordinates");
    double scale = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) throw DomainError("direction has a non-finite coordinate");
        scale = std::max(scale, std::abs(x));
    }
    if (scale == 0.0) throw DomainError("direction must be nonzero");
    // Power-of-two rescaling is exact, so v and 2^k v give the same result.
    int e = 0;
    std::frexp(scale, &e);
    std::vector<double> c(v.begin(), v.end());
    double sq = 0.0;
    for (double& x : c) {
        x = std::ldexp(x, -e);
        sq += x * x;
    }
    int k = static_cast<int>(std::lround(0.5 * std::log2(sq)));
    if (k != 0) {
        sq = 0.0;
        for (double& x : c) {
            x = std::ldexp(x, -k);
            sq += x * x;
        }
    }
    // already unit up to rounding: keep as is, which makes normalize idempotent
    const double tol = 4.0 * static_cast<double>(c.size() + 2) * std::numeric_limits<double>::epsilon();
    if (std::abs(sq - 1.0) <= tol) return Direction(std::move(c));
    const double norm = std::sqrt(sq);
    for (double& x : c) x /= norm;
    return Direction(std::move(c));
}

Direction Direction::from_unit(std::span<const double> v, double tol)
{
    if (v.size() < 2) throw DomainError("direction needs at least 2 coordinates");
    double sq = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) throw DomainError("direction has a non-finite coordinate");
        sq += x * x;
    }
    if (std::abs(std::sqrt(sq) - 1.0) > tol) throw DomainError("direction is not a unit vector");
    return Direction(std::vector<double>(v.begin(), v.end()));
}

}  // namespace riesz
