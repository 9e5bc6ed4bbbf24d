#pragma once

// Closed-form coefficients for the polyadic multiplier: double factorials,
// Gamma/digamma, Wallis integrals, the angular moments G_a(t, n) for the
// sgn and -ln|.| kernels, and the per-level prefactors Z(t, n, w).

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace riesz {

enum class Parity { even, odd };

constexpr Parity parity_of(int m) noexcept { return (m % 2 == 0) ? Parity::even : Parity::odd; }

/// The two scalar kernels g of the multiplier integral: sgn(x) and -ln|x|.
enum class KernelG { sgn, neglog };

/// Kernel whose moments survive for tensor order t (sgn for odd t, -ln for even t).
constexpr KernelG natural_kernel(int t) noexcept { return (t % 2 != 0) ? KernelG::sgn : KernelG::neglog; }

const char* to_string(KernelG g) noexcept;
KernelG kernel_from_string(const std::string_view name);

/// m!! for m >= -1, with (-1)!! = 0!! = 1.
double double_factorial(int m);

/// num!! / den!!, accumulated by interleaving factors so that large
/// arguments do not overflow before the division.
double double_factorial_ratio(int num, int den);

double gamma(double x);
double digamma(double x);

enum class WallisRange { half, full };

/// Integral of sin^m over [0, pi/2] (half) or [0, pi] (full).
double wallis(int m, WallisRange range);

/// Surface measure of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
double sphere_surface(int n);

/// G_a(t, n) = int_0^pi g(cos p) cos^a p sin^{n-2+t-a} p dp.
double g_a_sgn(int a, int t, int n);
double g_a_log(int a, int t, int n);
double g_a(KernelG g, int a, int t, int n);

/// Prefactor of one (subset, matching) term of a component of T / S_{n-1},
/// indexed by the size a of the pure-xi subset:
///   G_a(t, n) (n-3)!! / ((n-3+t-a)!! * wallis(n-2, full)).
double level_coefficient(KernelG g, int t, int n, int a);

/// Level prefactor indexed the way the recursion walks it: for odd t the
/// subset has 2w+1 positions (sgn kernel), for even t it has 2w (-ln kernel).
double z_coefficient(int t, int n, int w, Parity parity);

/// All level prefactors needed by one evaluation at fixed (n, t, g).
class CoefficientTable {
public:
    CoefficientTable(int n, int t, KernelG g);

    int n() const noexcept { return n_; }
    int t() const noexcept { return t_; }
    KernelG kernel() const noexcept { return g_; }

    /// Prefactor for a pure-xi subset of size a (0 <= a <= t).
    double at_subset_size(int a) const;

private:
    int n_;
    int t_;
    KernelG g_;
    std::vector<double> by_subset_size_;
};

/// C1 = t! / prod s(j)!: ordered assignments of positions to indices.
std::uint64_t count_c1(std::span<const int> multiplicities);
/// C2 = (t/2)! / prod (s(j)/2)!; every multiplicity must be even.
std::uint64_t count_c2(std::span<const int> multiplicities);
/// C3 = prod (s(j)/2)! (s(j)-1)!!, so that C1 * C3 = t! / 2^{t/2}.
std::uint64_t count_c3(std::span<const int> multiplicities);

std::uint64_t binomial(int n, int k);

}  // namespace riesz
