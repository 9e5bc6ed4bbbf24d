#include "riesz/frame.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "riesz/detail/neumaier_sum.hpp"
#include "riesz/errors.hpp"
#include "riesz/special_functions.hpp"

namespace riesz {

namespace {

// tail[j] = sqrt(sum_{m >= j} x_m^2); summed from the end so that small
// tails are not lost to cancellation against 1.
std::vector<double> tail_norms(std::span<const double> x)
{
    const std::size_t n = x.size();
    std::vector<double> tail(n);
    double acc = 0.0;
    for (std::size_t j = n; j-- > 0;) {
        acc += x[j] * x[j];
        tail[j] = std::sqrt(acc);
    }
    return tail;
}

}  // namespace

BasisMatrix build_basis(const Direction& xi)
{
    const int n = xi.dimension();
    const auto nn = static_cast<std::size_t>(n);
    BasisMatrix r;
    r.n_ = n;
    r.order_.resize(nn);
    std::iota(r.order_.begin(), r.order_.end(), 0);

    std::vector<double> x(xi.coords().begin(), xi.coords().end());
    std::vector<double> tail = tail_norms(x);
    if (*std::min_element(tail.begin(), tail.end()) < kDegenerateB) {
        // put the largest components last so every tail is >= max |xi| >= 1/sqrt(n)
        std::stable_sort(r.order_.begin(), r.order_.end(),
                         [&](int a, int b) { return std::abs(xi[static_cast<std::size_t>(a)]) < std::abs(xi[static_cast<std::size_t>(b)]); });
        for (std::size_t k = 0; k < nn; ++k) x[k] = xi[static_cast<std::size_t>(r.order_[k])];
        tail = tail_norms(x);
        r.pivoted_ = true;
    }
    r.b_ = tail;

    // basis in construction coordinates, column-major
    std::vector<double> local(nn * nn, 0.0);
    for (std::size_t row = 0; row < nn; ++row) local[row] = x[row];
    for (std::size_t c = 1; c < nn; ++c) {
        const double denom = tail[c] * tail[c - 1];
        local[c * nn + (c - 1)] = tail[c] / tail[c - 1];
        for (std::size_t row = c; row < nn; ++row) local[c * nn + row] = -x[c - 1] * x[row] / denom;
    }

    r.data_.assign(nn * nn, 0.0);
    for (std::size_t c = 0; c < nn; ++c)
        for (std::size_t k = 0; k < nn; ++k)
            r.data_[c * nn + static_cast<std::size_t>(r.order_[k])] = local[c * nn + k];
    // the first column is xi itself, copied exactly
    for (std::size_t row = 0; row < nn; ++row) r.data_[row] = xi[row];
    return r;
}

BasisMatrix build_basis(std::span<const double> xi)
{
    return build_basis(Direction::from_unit(xi));
}

double row_pair_sum(const BasisMatrix& r, int p, int q)
{
    const int n = r.dimension();
    if (p < 1 || p > n || q < 1 || q > n)
        throw DomainError("row_pair_sum: index outside [1.." + std::to_string(n) + "]");
    double s = 0.0;
    for (int i = 1; i < n; ++i) s += r(p - 1, i) * r(q - 1, i);
    return s;
}

FrameDefects frame_defects(const BasisMatrix& r, const Direction& xi)
{
    const int n = r.dimension();
    FrameDefects d;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double delta = a == b ? 1.0 : 0.0;
            double cols = 0.0, rows = 0.0;
            for (int k = 0; k < n; ++k) {
                cols += r(k, a) * r(k, b);
                rows += r(a, k) * r(b, k);
            }
            d.column_orthonormality = std::max(d.column_orthonormality, std::abs(cols - delta));
            d.row_orthonormality = std::max(d.row_orthonormality, std::abs(rows - delta));
            const double pair = row_pair_sum(r, a + 1, b + 1);
            d.pair_sum = std::max(d.pair_sum, std::abs(pair - (delta - xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(b)])));
        }
    const auto order = r.coordinate_order();
    for (int l = 0; l < n; ++l) {
        d.first_column = std::max(d.first_column, std::abs(r(l, 0) - xi[static_cast<std::size_t>(l)]));
        for (int k = l + 2; k < n; ++k)
            d.triangularity = std::max(d.triangularity, std::abs(r(order[static_cast<std::size_t>(l)], k)));
    }
    return d;
}

ComponentValue rotate_component_oracle(const KernelSpec& spec, std::span<const double> xi, Normalization norm,
                                       std::size_t max_terms)
{
    const int n = spec.n();
    const int t = spec.t();
    if (static_cast<int>(xi.size()) != n)
        throw DomainError("xi has " + std::to_string(xi.size()) + " coordinates, expected " + std::to_string(n));
    if (std::pow(static_cast<double>(n), t) > static_cast<double>(max_terms))
        throw SizeCapError("rotated-frame contraction needs n^t = " + std::to_string(n) + "^" + std::to_string(t) +
                           " terms, above the cap");
    const Direction dir = Direction::normalize(xi);
    const BasisMatrix r = build_basis(dir);
    const auto idx = spec.component.indices();

    ComponentValue out;
    out.normalized = norm == Normalization::per_sphere_surface;
    out.parity_mismatch = !spec.parity_compatible();

    detail::NeumaierSum sum;
    std::vector<int> k(static_cast<std::size_t>(t), 0);
    std::vector<int> counts(static_cast<std::size_t>(n));
    while (true) {
        double weight = 1.0;
        for (int p = 0; p < t && weight != 0.0; ++p)
            weight *= r(idx[static_cast<std::size_t>(p)] - 1, k[static_cast<std::size_t>(p)]);
        if (weight != 0.0) {
            std::fill(counts.begin(), counts.end(), 0);
            for (int kp : k) ++counts[static_cast<std::size_t>(kp)];
            const double tp = tprime_component(MultiplicityMap(counts), spec.kernel);
            if (tp != 0.0) sum.add(weight * tp);
        }
        int pos = t - 1;
        while (pos >= 0 && k[static_cast<std::size_t>(pos)] == n - 1) k[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
        ++k[static_cast<std::size_t>(pos)];
    }
    out.value = sum.value();
    if (out.normalized) out.value /= sphere_surface(n);
    return out;
}

}  // namespace riesz
