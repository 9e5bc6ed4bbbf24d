#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "riesz/errors.hpp"
#include "riesz/mc_oracle.hpp"

using namespace riesz;

namespace {

const std::vector<double> kRef{-0.0054, 0.1491, 0.9888};
const KernelSpec kRefSpec{MultiIndex(3, {1, 3, 3, 3, 3}), KernelG::sgn};

}  // namespace

TEST_CASE("SplitMix64 reference outputs")
{
    const SplitMix64 r(0);
    CHECK(r.at(0) == 0xe220a8397b1dcdafULL);
    CHECK(r.at(1) == 0x6e789e6aa1b965f4ULL);
    CHECK(r.at(2) == 0x06c45d188009454fULL);
    CHECK(r.uniform_at(5) >= 0.0);
    CHECK(r.uniform_at(5) < 1.0);
}

TEST_CASE("first Gaussian-sampler points for seed 0")
{
    const double expect[10][3] = {
        {-0.9034426981585244, 0.41458089862861636, 0.10915113208911187},
        {-0.45990052619244132, 0.87090513629735011, 0.17325053990914235},
        {0.95084431727839702, -0.29558986691922268, 0.092313134894525431},
        {-0.5791533434946412, -0.20919688526983751, -0.78792008980122896},
        {0.088758580740188275, -0.94666844673002137, 0.30974306499219012},
        {-0.46668338814832572, -0.73752748133597101, -0.48811866333978476},
        {-0.88906550266197848, -0.45766162444926323, -0.010410066419814901},
        {0.85667470496492237, -0.39695439305289248, 0.32944750675831908},
        {0.19484966937856815, 0.025706483588778563, -0.9804961922641835},
        {0.081949329532150408, 0.88439359068968337, -0.45949133194897113},
    };
    SampleStream s(SamplerKind::mc1_muller, 0, 3);
    double p[3];
    for (const auto& e : expect) {
        muller_point(s, p);
        for (int i = 0; i < 3; ++i) CHECK(p[i] == doctest::Approx(e[i]).epsilon(1e-14));
    }
    CHECK(s.emitted() == 10);
}

TEST_CASE("Halton radical inverse")
{
    CHECK(radical_inverse(1, 2) == 0.5);
    CHECK(radical_inverse(2, 2) == 0.25);
    CHECK(radical_inverse(3, 2) == 0.75);
    CHECK(radical_inverse(4, 2) == 0.125);
    CHECK(radical_inverse(1, 3) == doctest::Approx(1.0 / 3));
    CHECK(radical_inverse(5, 3) == doctest::Approx(2.0 / 3 + 1.0 / 9));
    // the first MC3 point uses index 1: polar = pi/2, azimuth = 2 pi / 3
    SampleStream s(SamplerKind::mc3_halton, 0, 3);
    double p[3];
    const double w = halton_point(s, p);
    CHECK(w == doctest::Approx(std::numbers::pi / 2));
    CHECK(p[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(-0.5));
    CHECK(p[2] == doctest::Approx(std::sqrt(3.0) / 2));
}

TEST_CASE("Gaussian sampler is uniform on the sphere")
{
    const int n = 3;
    const std::uint64_t count = 1'000'000;
    SampleStream s(SamplerKind::mc1_muller, 42, n);
    std::vector<double> p(n), mean(n, 0.0);
    std::vector<double> cov(n * n, 0.0);
    double worst_norm = 0;
    for (std::uint64_t k = 0; k < count; ++k) {
        s.next(p);
        double sq = 0;
        for (int i = 0; i < n; ++i) {
            mean[i] += p[i] / count;
            sq += p[i] * p[i];
            for (int j = 0; j < n; ++j) cov[i * n + j] += p[i] * p[j] / count;
        }
        worst_norm = std::max(worst_norm, std::abs(std::sqrt(sq) - 1));
    }
    CHECK(worst_norm < 1e-12);
    for (int i = 0; i < n; ++i) {
        CHECK(std::abs(mean[i]) < 4 / std::sqrt(double(count)));
        for (int j = 0; j < n; ++j) {
            const double expect = i == j ? 1.0 / n : 0.0;
            // var(theta_i theta_j) <= 1/5 on S^2
            CHECK(std::abs(cov[i * n + j] - expect) < 4 * std::sqrt(0.2 / count));
        }
    }
}

TEST_CASE("Gaussian sampler in several dimensions")
{
    for (int n = 2; n <= 8; ++n) {
        SampleStream s(SamplerKind::mc1_muller, 1, n);
        std::vector<double> p(static_cast<std::size_t>(n));
        for (int k = 0; k < 1000; ++k) {
            s.next(p);
            double sq = 0;
            for (double x : p) sq += x * x;
            CHECK(std::abs(sq - 1) < 1e-12);
        }
    }
}

TEST_CASE("angle samplers are restricted in dimension")
{
    CHECK_THROWS_AS(SampleStream(SamplerKind::mc2_spherical, 0, 2), UnsupportedDimensionError);
    CHECK_THROWS_AS(SampleStream(SamplerKind::mc3_halton, 0, 4), UnsupportedDimensionError);
    CHECK_THROWS_AS(estimate({MultiIndex(4, {1}), KernelG::sgn}, std::vector<double>{1, 0, 0, 0}, SamplerKind::mc3_halton, 1000),
                    UnsupportedDimensionError);
    SampleStream s(SamplerKind::mc2_spherical, 0, 3);
    double p[3];
    CHECK_THROWS_AS(halton_point(s, p), DomainError);
}

TEST_CASE("mc3 on the circle follows the van der Corput angle")
{
    SampleStream s(SamplerKind::mc3_halton, 0, 2);
    double p[2];
    CHECK(halton_point(s, p) == 1.0);
    CHECK(p[0] == doctest::Approx(-1.0));  // index 1 -> angle pi
    halton_point(s, p);
    CHECK(p[1] == doctest::Approx(1.0));  // index 2 -> angle pi/2

    const std::vector<double> xi{0.6, -0.8};
    const KernelSpec spec{MultiIndex(2, {1, 1, 2}), KernelG::sgn};
    const double want = oracle::circle_component(spec, xi) / (2.0 * std::numbers::pi);
    const auto est = estimate(spec, xi, SamplerKind::mc3_halton, 100000);
    CHECK(std::abs(est.mean - want) < 1e-4);
}

TEST_CASE("weighted samplers integrate the constant to one")
{
    for (SamplerKind kind : {SamplerKind::mc1_muller, SamplerKind::mc2_spherical, SamplerKind::mc3_halton}) {
        SampleStream s(kind, 3, 3);
        MeanAccumulator acc;
        double p[3];
        for (int k = 0; k < 100'000; ++k) acc.add(s.next(p));
        const double se = std::sqrt(acc.variance() / acc.count());
        CHECK(std::abs(acc.mean() - 1) <= std::max(3 * se, 1e-15));
    }
}

TEST_CASE("unweighted angle sampling is biased")
{
    // mean of theta_1^2 is 1/3 on the sphere; uniform polar angles give 1/2
    SampleStream weighted(SamplerKind::mc2_spherical, 0, 3);
    SampleStream literal(SamplerKind::mc2_spherical, 0, 3, Mc2Mode::literal);
    MeanAccumulator a, b;
    double p[3];
    for (int k = 0; k < 200'000; ++k) {
        const double w = weighted.next(p);
        a.add(w * p[0] * p[0]);
        const double v = literal.next(p);
        CHECK(v == 1.0);
        b.add(v * p[0] * p[0]);
    }
    CHECK(a.mean() == doctest::Approx(1.0 / 3).epsilon(0.01));
    CHECK(b.mean() == doctest::Approx(0.5).epsilon(0.01));
    const auto lit = estimate({MultiIndex(3, {1, 1}), KernelG::neglog}, std::vector<double>{0, 0, 1},
                              SamplerKind::mc2_spherical, 200'000, 0, 1, Mc2Mode::literal);
    const double exact = evaluate_component_direct({MultiIndex(3, {1, 1}), KernelG::neglog}, std::vector<double>{0, 0, 1}).value;
    CHECK(std::abs(lit.mean - exact) > 10 * lit.std_error);
}

TEST_CASE("estimates are deterministic and split exactly")
{
    const auto a = estimate(kRefSpec, kRef, SamplerKind::mc1_muller, 50'000, 17);
    const auto b = estimate(kRefSpec, kRef, SamplerKind::mc1_muller, 50'000, 17);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.n_samples == 50'000);
    for (SamplerKind kind : {SamplerKind::mc1_muller, SamplerKind::mc2_spherical, SamplerKind::mc3_halton}) {
        const auto seq = estimate(kRefSpec, kRef, kind, 30'001, 5, 1);
        const auto par = estimate(kRefSpec, kRef, kind, 30'001, 5, 3);
        CHECK(par.n_samples == seq.n_samples);
        CHECK(par.mean == doctest::Approx(seq.mean).epsilon(1e-12));
        CHECK(par.std_error == doctest::Approx(seq.std_error).epsilon(1e-10));
    }
    // substreams cover the sequence
    SampleStream full(SamplerKind::mc1_muller, 9, 3);
    SampleStream odd = full.substream(1, 2);
    double p[3], q[3];
    full.next(p);
    full.next(p);
    odd.next(q);
    for (int i = 0; i < 3; ++i) CHECK(p[i] == q[i]);
    CHECK_THROWS_AS(estimate(kRefSpec, kRef, SamplerKind::mc1_muller, 99), DomainError);
}

TEST_CASE("accumulator merge")
{
    MeanAccumulator all, left, right;
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd(3, 2);
    for (int k = 0; k < 1000; ++k) {
        const double x = nd(rng);
        all.add(x);
        (k < 370 ? left : right).add(x);
    }
    left.merge(right);
    CHECK(left.count() == all.count());
    CHECK(left.mean() == doctest::Approx(all.mean()).epsilon(1e-13));
    CHECK(left.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
}

TEST_CASE("estimates against analytic values")
{
    const std::vector<double> e1{1, 0, 0};
    const KernelSpec t1{MultiIndex(3, {1}), KernelG::sgn};
    const auto mc = estimate(t1, e1, SamplerKind::mc1_muller, 1'000'000);
    CHECK(std::abs(mc.mean - evaluate_component_direct(t1, e1).value) < 3 * mc.std_error);

    const KernelSpec zero{MultiIndex(3, {1, 1, 2}), KernelG::sgn};
    const auto z = estimate(zero, e1, SamplerKind::mc1_muller, 1'000'000, 2);
    CHECK(std::abs(z.mean) < 3 * z.std_error);
}

TEST_CASE("MC3 error magnitudes at the reference point")
{
    const double exact = evaluate_component_direct(kRefSpec, kRef).value;
    const auto mc3 = estimate(kRefSpec, kRef, SamplerKind::mc3_halton, 50'000);
    CHECK(std::abs(mc3.mean - exact) == doctest::Approx(4.52e-6).epsilon(0.01));
    const auto mc2 = estimate(kRefSpec, kRef, SamplerKind::mc2_spherical, 5'000'000);
    CHECK(std::abs(mc2.mean - exact) < 3e-4);
    double mc1 = 0;
    for (int s = 0; s < 20; ++s) mc1 += std::abs(estimate(kRefSpec, kRef, SamplerKind::mc1_muller, 50'000, s).mean - exact) / 20;
    CHECK(mc1 > 4e-4 / 3);
    CHECK(mc1 < 4e-4 * 3);
}

TEST_CASE("convergence slopes")
{
    const std::vector<std::uint64_t> ns{1000, 10000, 100000};
    const auto mc1 = convergence_study(kRefSpec, kRef, SamplerKind::mc1_muller, ns, 20);
    CHECK(mc1.rows.size() == 3);
    CHECK(mc1.slope == doctest::Approx(-0.5).epsilon(0.3));
    // standard errors shrink as N^{-1/2}
    std::vector<double> x, y;
    for (const auto& r : mc1.rows) {
        x.push_back(double(r.n_samples));
        y.push_back(r.mean_std_error);
    }
    CHECK(loglog_slope(x, y) == doctest::Approx(-0.5).epsilon(0.02));

    const auto mc3 = convergence_study(kRefSpec, kRef, SamplerKind::mc3_halton, ns, 5);
    CHECK(mc3.slope <= -0.5);
    CHECK_THROWS_AS(convergence_study(kRefSpec, kRef, SamplerKind::mc1_muller, std::vector<std::uint64_t>{1000, 100}, 2), DomainError);
}

TEST_CASE("error is roughly uniform over directions")
{
    std::vector<double> errs;
    const KernelSpec spec{MultiIndex(3, {1, 2, 3}), KernelG::sgn};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 6; ++j) {
            const double p = (i + 0.5) * std::numbers::pi / 4, a = j * std::numbers::pi / 3;
            const std::vector<double> xi{std::cos(p), std::sin(p) * std::cos(a), std::sin(p) * std::sin(a)};
            double e = 0;
            for (int s = 0; s < 10; ++s)
                e += std::abs(estimate(spec, xi, SamplerKind::mc1_muller, 20'000, 100 + s).mean -
                              evaluate_component_direct(spec, xi).value);
            errs.push_back(e / 10);
        }
    std::sort(errs.begin(), errs.end());
    const double median = 0.5 * (errs[errs.size() / 2 - 1] + errs[errs.size() / 2]);
    CHECK(errs.back() / median <= 10);
}

TEST_CASE("sampler names")
{
    CHECK(sampler_from_string("mc3") == SamplerKind::mc3_halton);
    CHECK(std::string(to_string(SamplerKind::mc1_muller)) == "mc1");
    CHECK_THROWS_AS(sampler_from_string("mc4"), DomainError);
}
