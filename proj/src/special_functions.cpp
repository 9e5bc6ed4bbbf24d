#include "riesz/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "riesz/errors.hpp"

namespace riesz {

const char* to_string(KernelG g) noexcept
{
    return g == KernelG::sgn ? "sgn" : "neglog";
}

KernelG kernel_from_string(const std::string_view name)
{
    if (name == "sgn") return KernelG::sgn;
    if (name == "neglog" || name == "log") return KernelG::neglog;
    throw DomainError("unknown kernel '" + std::string(name) + "' (expected sgn or neglog)");
}

double double_factorial(int m)
{
    if (m < -1) throw DomainError("double_factorial: argument below -1");
    double r = 1.0;
    for (int k = m; k > 1; k -= 2) r *= k;
    return r;
}

double double_factorial_ratio(int num, int den)
{
    if (num < -1 || den < -1) throw DomainError("double_factorial_ratio: argument below -1");
    double r = 1.0;
    int a = num;
    int b = den;
    while (a > 1 || b > 1) {
        if (a > 1) {
            r *= a;
            a -= 2;
        }
        if (b > 1) {
            r /= b;
            b -= 2;
        }
    }
    return r;
}

namespace {

// Lanczos approximation, g = 7, nine terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x)
{
    // valid for x >= 0.5
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (z + static_cast<double>(i));
    const double tt = z + kLanczosG + 0.5;
    // split the power so tt^(z+0.5) does not overflow before exp(-tt) is applied
    const double half_pow = std::pow(tt, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half_pow * (half_pow * std::exp(-tt)) * acc;
}

}  // namespace

double gamma(double x)
{
    if (!(x > 0.0)) throw DomainError("gamma: argument must be positive");
    if (x >= 0.5) return lanczos_gamma(x);
    return lanczos_gamma(x + 1.0) / x;
}

double digamma(double x)
{
    if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli tail: B_2k / (2k x^2k)
    const double tail =
        inv2 * (1.0 / 12 -
                inv2 * (1.0 / 120 -
                        inv2 * (1.0 / 252 -
                                inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12))))));
    return shift + std::log(x) - 0.5 * inv - tail;
}

double wallis(int m, WallisRange range)
{
    if (m < 0) throw DomainError("wallis: exponent must be non-negative");
    double half = double_factorial_ratio(m - 1, m);
    if (m % 2 == 0) half *= std::numbers::pi / 2.0;
    return range == WallisRange::half ? half : 2.0 * half;
}

double sphere_surface(int n)
{
    if (n < 2) throw DomainError("sphere_surface: dimension must be at least 2");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / gamma(0.5 * n);
}

namespace {

void check_moment_args(int a, int t, int n, const char* who)
{
    if (n < 2) throw DomainError(std::string(who) + ": dimension must be at least 2");
    if (a < 0 || a > t) throw DomainError(std::string(who) + ": level a must satisfy 0 <= a <= t");
}

}  // namespace

double g_a_sgn(int a, int t, int n)
{
    check_moment_args(a, t, n, "g_a_sgn");
    if (a % 2 == 0) return 0.0;
    // 2 (a-1)!! (n-3+t-a)!! / (n-2+t)!!, the (a-1)!! folded into the ratio
    return 2.0 * double_factorial(a - 1) * double_factorial_ratio(n - 3 + t - a, n - 2 + t);
}

double g_a_log(int a, int t, int n)
{
    check_moment_args(a, t, n, "g_a_log");
    if (a % 2 != 0) return 0.0;
    const double p = 0.5 * (a + 1);
    const double s = 0.5 * (n + t);
    const double q = s - p;
    return 0.5 * gamma(p) * gamma(q) / gamma(s) * (digamma(s) - digamma(p));
}

double g_a(KernelG g, int a, int t, int n)
{
    return g == KernelG::sgn ? g_a_sgn(a, t, n) : g_a_log(a, t, n);
}

double level_coefficient(KernelG g, int t, int n, int a)
{
    if (t < 1) throw DomainError("level_coefficient: tensor order must be positive");
    if (a < 0 || a > t || (t - a) % 2 != 0)
        throw DomainError("level_coefficient: subset size must have the parity of t and lie in [0, t]");
    const double ga = g_a(g, a, t, n);
    if (ga == 0.0) return 0.0;
    return ga * double_factorial_ratio(n - 3, n - 3 + t - a) / wallis(n - 2, WallisRange::full);
}

double z_coefficient(int t, int n, int w, Parity parity)
{
    if (parity_of(t) != parity) throw DomainError("z_coefficient: parity does not match tensor order");
    const int a = parity == Parity::odd ? 2 * w + 1 : 2 * w;
    if (w < 0 || a > t) throw DomainError("z_coefficient: level w out of range");
    return level_coefficient(natural_kernel(t), t, n, a);
}

CoefficientTable::CoefficientTable(int n, int t, KernelG g) : n_(n), t_(t), g_(g), by_subset_size_(t + 1, 0.0)
{
    if (n < 2) throw DomainError("CoefficientTable: dimension must be at least 2");
    if (t < 1) throw DomainError("CoefficientTable: tensor order must be positive");
    for (int a = t % 2; a <= t; a += 2) by_subset_size_[a] = level_coefficient(g, t, n, a);
}

double CoefficientTable::at_subset_size(int a) const
{
    if (a < 0 || a > t_) throw DomainError("CoefficientTable: subset size out of range");
    return by_subset_size_[a];
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw SizeCapError("combinatorial count overflows 64 bits");
    return a * b;
}

std::uint64_t factorial(int m)
{
    std::uint64_t r = 1;
    for (int k = 2; k <= m; ++k) r = checked_mul(r, static_cast<std::uint64_t>(k));
    return r;
}

int total_of(std::span<const int> mults)
{
    int t = 0;
    for (int s : mults) {
        if (s < 0) throw DomainError("multiplicities must be non-negative");
        t += s;
    }
    return t;
}

void require_all_even(std::span<const int> mults, const char* who)
{
    for (int s : mults)
        if (s % 2 != 0) throw DomainError(std::string(who) + ": every multiplicity must be even");
}

}  // namespace

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        // r * (n-k+i) is divisible by i at every step
        r = checked_mul(r, static_cast<std::uint64_t>(n - k + i)) / static_cast<std::uint64_t>(i);
    }
    return r;
}

std::uint64_t count_c1(std::span<const int> multiplicities)
{
    int remaining = total_of(multiplicities);
    std::uint64_t r = 1;
    for (int s : multiplicities) {
        r = checked_mul(r, binomial(remaining, s));
        remaining -= s;
    }
    return r;
}

std::uint64_t count_c2(std::span<const int> multiplicities)
{
    require_all_even(multiplicities, "count_c2");
    std::vector<int> halves;
    halves.reserve(multiplicities.size());
    for (int s : multiplicities) halves.push_back(s / 2);
    return count_c1(halves);
}

std::uint64_t count_c3(std::span<const int> multiplicities)
{
    require_all_even(multiplicities, "count_c3");
    std::uint64_t r = 1;
    for (int s : multiplicities) {
        r = checked_mul(r, factorial(s / 2));
        r = checked_mul(r, static_cast<std::uint64_t>(double_factorial(s - 1)));
    }
    return r;
}

}  // namespace riesz
