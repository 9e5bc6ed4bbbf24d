#pragma once

// Monte-Carlo estimates of T(xi) / S_{n-1} = mean over the sphere of
// f(theta) g(xi . theta), with three samplers:
//   MC1  Gaussian vector normalized to the sphere (any n)
//   MC2  pseudo-random polar/azimuth angles with sin(polar) weights (n = 3)
//   MC3  Halton (2, 3) angles with the same weights (n = 3); on the circle
//        (n = 2) a base-2 van der Corput angle with weight 1
//
// Points on S^2 use theta_1 = cos(polar), theta_2 = sin(polar) cos(az),
// theta_3 = sin(polar) sin(az).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "riesz/multiplier.hpp"

namespace riesz {

enum class SamplerKind { mc1_muller, mc2_spherical, mc3_halton };

const char* to_string(SamplerKind kind) noexcept;
SamplerKind sampler_from_string(std::string_view name);

/// MC2 estimator flavour. `literal` drops the sin(polar) weight; it does not
/// sample the sphere uniformly and is kept to exhibit that bias.
enum class Mc2Mode { weighted, literal };

/// SplitMix64 evaluated as a counter-based generator: output k is a pure
/// function of (seed, k).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : seed_(seed) {}
    std::uint64_t at(std::uint64_t k) const noexcept;
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform_at(std::uint64_t k) const noexcept { return static_cast<double>(at(k) >> 11) * 0x1.0p-53; }

private:
    std::uint64_t seed_;
};

/// Radical inverse of i in the given base.
double radical_inverse(std::uint64_t i, unsigned base) noexcept;

/// Deterministic stream of weighted sphere points. Point k depends only on
/// (kind, seed, n, k), so substreams taken by index striding reproduce the
/// sequential point set exactly. For MC3 the seed offsets the Halton index:
/// point k uses Halton index seed + k + 1.
class SampleStream {
public:
    SampleStream(SamplerKind kind, std::uint64_t seed, int n, Mc2Mode mode = Mc2Mode::weighted);

    SamplerKind kind() const noexcept { return kind_; }
    std::uint64_t seed() const noexcept { return seed_; }
    int dimension() const noexcept { return n_; }
    std::uint64_t emitted() const noexcept { return emitted_; }

    /// Points first, first + stride, first + 2 stride, ... of this stream.
    SampleStream substream(std::uint64_t first, std::uint64_t stride) const;

    /// Writes the next point into out (size n) and returns its weight.
    double next(std::span<double> out);

    /// Point with absolute index k, independent of the stream position.
    double point_at(std::uint64_t k, std::span<double> out) const;

private:
    SamplerKind kind_;
    std::uint64_t seed_;
    int n_;
    Mc2Mode mode_;
    SplitMix64 rng_;
    std::uint64_t position_ = 0;
    std::uint64_t stride_ = 1;
    std::uint64_t emitted_ = 0;
};

/// Per-kind point generators; the stream must have the matching kind.
void muller_point(SampleStream& stream, std::span<double> out);
double spherical_point(SampleStream& stream, std::span<double> out);
double halton_point(SampleStream& stream, std::span<double> out);

/// Running weighted-sample statistics; merge() combines partial results.
class MeanAccumulator {
public:
    void add(double x) noexcept;
    void merge(const MeanAccumulator& other) noexcept;
    std::uint64_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    /// Sample variance (N - 1 denominator).
    double variance() const noexcept;

private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
};

/// Integrand f(theta) g(xi . theta) for a polyadic f.
double integrand(const KernelSpec& spec, std::span<const double> xi, std::span<const double> theta) noexcept;

/// Estimate of T / S_{n-1}. N >= 100. workers > 1 splits the points by
/// index striding across threads.
McEstimate estimate(const KernelSpec& spec, std::span<const double> xi, SamplerKind kind, std::uint64_t n_samples,
                    std::uint64_t seed = 0, unsigned workers = 1, Mc2Mode mode = Mc2Mode::weighted);

/// Estimates of several components (same n) from one shared point set.
std::vector<McEstimate> estimate_many(std::span<const KernelSpec> specs, std::span<const double> xi, SamplerKind kind,
                                      std::uint64_t n_samples, std::uint64_t seed = 0);

struct ConvergenceRow {
    std::uint64_t n_samples = 0;
    double mean_abs_error = 0.0;
    double mean_std_error = 0.0;
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    double slope = 0.0;  // least-squares slope of log(error) against log(N)
};

/// Mean absolute error against the analytic value for each N, over `repeats`
/// runs with seeds seed, seed + 1, ... (MC3: start-index offsets of the
/// largest N, so repeats do not overlap).
ConvergenceStudy convergence_study(const KernelSpec& spec, std::span<const double> xi, SamplerKind kind,
                                   std::span<const std::uint64_t> n_list, int repeats, std::uint64_t seed = 0);

/// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace riesz
