#pragma once

// Independent reference computations for the tests: numeric quadrature of
// the defining integrals and high-precision special functions. Nothing here
// calls the closed forms under test.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "riesz/multiplier.hpp"

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

inline double gamma_hp(double x)
{
    return static_cast<double>(boost::math::tgamma(big(x)));
}

inline double digamma_hp(double x)
{
    return static_cast<double>(boost::math::digamma(big(x)));
}

/// Integral over [a, b] of a function that may have integrable endpoint
/// singularities (log, sqrt). Interior singular points must be split off by
/// the caller.
inline double integrate(const std::function<double(double)>& f, double a, double b)
{
    if (a == b) return 0.0;
    boost::math::quadrature::tanh_sinh<double> ts(15);
    return ts.integrate(f, a, b);
}

/// Same, splitting [a, b] at the given interior points.
inline double integrate_split(const std::function<double(double)>& f, double a, double b, std::vector<double> cuts)
{
    cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [&](double c) { return !(c > a && c < b); }), cuts.end());
    std::sort(cuts.begin(), cuts.end());
    double lo = a, sum = 0.0;
    for (double c : cuts) {
        sum += integrate(f, lo, c);
        lo = c;
    }
    return sum + integrate(f, lo, b);
}

inline double g_value(riesz::KernelG g, double d)
{
    if (g == riesz::KernelG::sgn) return d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0);
    return d == 0.0 ? 0.0 : -std::log(std::abs(d));
}

/// G_a(t, n) = int_0^pi g(cos p) cos^a p sin^{n-2+t-a} p dp by quadrature.
inline double g_a_quadrature(riesz::KernelG g, int a, int t, int n)
{
    auto f = [=](double p) {
        return g_value(g, std::cos(p)) * std::pow(std::cos(p), a) * std::pow(std::sin(p), n - 2 + t - a);
    };
    return integrate_split(f, 0.0, std::numbers::pi, {std::numbers::pi / 2});
}

/// T(xi) = int_{S^1} f(theta) g(xi . theta) dtheta for n = 2, by quadrature
/// on the circle split where xi . theta changes sign.
inline double circle_component(const riesz::KernelSpec& spec, std::span<const double> xi)
{
    const double nrm = std::hypot(xi[0], xi[1]);
    const double nu = std::atan2(xi[1] / nrm, xi[0] / nrm);
    auto f = [&](double a) {
        const double th[2] = {std::cos(a), std::sin(a)};
        double v = 1.0;
        for (int i : spec.component.indices()) v *= th[i - 1];
        return v * g_value(spec.kernel, (xi[0] * th[0] + xi[1] * th[1]) / nrm);
    };
    // integrate over [nu - pi/2, nu + 3 pi/2] so both zeros are endpoints or a cut
    const double a0 = nu - std::numbers::pi / 2;
    return integrate_split(f, a0, a0 + 2 * std::numbers::pi, {nu + std::numbers::pi / 2});
}

/// T(xi) for n = 3 by iterated quadrature in (polar, azimuth) with the inner
/// azimuth integral split at the zeros of xi . theta.
inline double sphere_component(const riesz::KernelSpec& spec, std::span<const double> xi)
{
    const double nrm = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    const double x1 = xi[0] / nrm, x2 = xi[1] / nrm, x3 = xi[2] / nrm;
    const double rho = std::hypot(x2, x3);
    const double phi = std::atan2(x3, x2);
    boost::math::quadrature::gauss_kronrod<double, 31> gk;
    auto outer = [&](double p) {
        const double cp = std::cos(p), sp = std::sin(p);
        auto inner = [&](double az) {
            const double th[3] = {cp, sp * std::cos(az), sp * std::sin(az)};
            double v = 1.0;
            for (int i : spec.component.indices()) v *= th[i - 1];
            return v * g_value(spec.kernel, x1 * th[0] + x2 * th[1] + x3 * th[2]);
        };
        std::vector<double> cuts;
        if (rho > 0 && sp > 0) {
            const double c = -x1 * cp / (rho * sp);
            if (std::abs(c) < 1) {
                const double d = std::acos(c);
                for (double r : {phi + d, phi - d})
                    cuts.push_back(std::fmod(std::fmod(r, 2 * std::numbers::pi) + 2 * std::numbers::pi, 2 * std::numbers::pi));
            }
        }
        return sp * integrate_split(inner, 0.0, 2 * std::numbers::pi, cuts);
    };
    // the polar integrand has kinks where the azimuth zeros appear
    std::vector<double> pcuts;
    if (rho > 0) {
        const double pk = std::atan2(rho, std::abs(x1));
        pcuts = {pk, std::numbers::pi - pk};
    }
    pcuts.push_back(std::numbers::pi / 2);
    std::sort(pcuts.begin(), pcuts.end());
    double lo = 0.0, sum = 0.0;
    for (double c : pcuts) {
        if (c <= lo || c >= std::numbers::pi) continue;
        sum += gk.integrate(outer, lo, c, 12, 1e-11);
        lo = c;
    }
    return sum + gk.integrate(outer, lo, std::numbers::pi, 12, 1e-11);
}

/// Uniform random unit vector (test-side generator, independent of the
/// library's samplers).
inline std::vector<double> random_unit(std::mt19937_64& rng, int n)
{
    std::normal_distribution<double> nd;
    std::vector<double> v(static_cast<std::size_t>(n));
    double s = 0;
    do {
        s = 0;
        for (double& x : v) {
            x = nd(rng);
            s += x * x;
        }
    } while (s < 1e-6);
    for (double& x : v) x /= std::sqrt(s);
    return v;
}

}  // namespace oracle
