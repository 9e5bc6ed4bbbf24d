#include "riesz/mc_oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "riesz/direction.hpp"
#include "riesz/errors.hpp"

namespace riesz {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void require_three(SamplerKind kind, int n)
{
    if (n != 3)
        throw UnsupportedDimensionError(std::string("sampler ") + to_string(kind) +
                                        " is defined on S^2 only (n = 3), got n = " + std::to_string(n));
}

void angles_to_point(double polar, double az, std::span<double> out) noexcept
{
    const double s = std::sin(polar);
    out[0] = std::cos(polar);
    out[1] = s * std::cos(az);
    out[2] = s * std::sin(az);
}

double kernel_value(KernelG g, double d) noexcept
{
    if (g == KernelG::sgn) return d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    return d == 0.0 ? 0.0 : -std::log(std::abs(d));
}

double dot(std::span<const double> a, std::span<const double> b) noexcept
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

const char* to_string(SamplerKind kind) noexcept
{
    switch (kind) {
    case SamplerKind::mc1_muller: return "mc1";
    case SamplerKind::mc2_spherical: return "mc2";
    case SamplerKind::mc3_halton: return "mc3";
    }
    return "?";
}

SamplerKind sampler_from_string(std::string_view name)
{
    if (name == "mc1") return SamplerKind::mc1_muller;
    if (name == "mc2") return SamplerKind::mc2_spherical;
    if (name == "mc3") return SamplerKind::mc3_halton;
    throw DomainError("unknown sampler '" + std::string(name) + "' (expected mc1, mc2 or mc3)");
}

std::uint64_t SplitMix64::at(std::uint64_t k) const noexcept
{
    return mix64(seed_ + (k + 1) * kGoldenGamma);
}

double radical_inverse(std::uint64_t i, unsigned base) noexcept
{
    const double inv = 1.0 / base;
    double f = inv, r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

SampleStream::SampleStream(SamplerKind kind, std::uint64_t seed, int n, Mc2Mode mode)
    : kind_(kind), seed_(seed), n_(n), mode_(mode), rng_(seed)
{
    if (n < 2) throw DomainError("SampleStream: dimension must be at least 2");
    if (kind == SamplerKind::mc2_spherical) require_three(kind, n);
    if (kind == SamplerKind::mc3_halton && n > 3)
        throw UnsupportedDimensionError("sampler mc3 is defined for n = 2 and n = 3 only, got n = " + std::to_string(n));
}

SampleStream SampleStream::substream(std::uint64_t first, std::uint64_t stride) const
{
    if (stride == 0) throw DomainError("substream stride must be positive");
    SampleStream s = *this;
    s.position_ = position_ + first * stride_;
    s.stride_ = stride_ * stride;
    s.emitted_ = 0;
    return s;
}

double SampleStream::next(std::span<double> out)
{
    const double w = point_at(position_, out);
    position_ += stride_;
    ++emitted_;
    return w;
}

double SampleStream::point_at(std::uint64_t k, std::span<double> out) const
{
    switch (kind_) {
    case SamplerKind::mc1_muller: {
        const auto pairs = static_cast<std::uint64_t>((n_ + 1) / 2);
        for (std::uint64_t attempt = 0;; ++attempt) {
            // a redraw (all-zero vector) reads from a derived seed
            const SplitMix64 rng = attempt == 0 ? rng_ : SplitMix64(mix64(seed_ ^ (attempt * kGoldenGamma)));
            const std::uint64_t base = k * 2 * pairs;
            double sq = 0.0;
            for (std::uint64_t p = 0; p < pairs; ++p) {
                const double u1 = 1.0 - rng.uniform_at(base + 2 * p);
                const double u2 = rng.uniform_at(base + 2 * p + 1);
                const double r = std::sqrt(-2.0 * std::log(u1));
                const double z0 = r * std::cos(2.0 * std::numbers::pi * u2);
                const double z1 = r * std::sin(2.0 * std::numbers::pi * u2);
                const auto i = static_cast<std::size_t>(2 * p);
                out[i] = z0;
                sq += z0 * z0;
                if (i + 1 < out.size()) {
                    out[i + 1] = z1;
                    sq += z1 * z1;
                }
            }
            if (sq == 0.0) continue;
            const double inv = 1.0 / std::sqrt(sq);
            for (double& x : out) x *= inv;
            return 1.0;
        }
    }
    case SamplerKind::mc2_spherical: {
        const double polar = std::numbers::pi * rng_.uniform_at(2 * k);
        const double az = 2.0 * std::numbers::pi * rng_.uniform_at(2 * k + 1);
        angles_to_point(polar, az, out);
        return mode_ == Mc2Mode::literal ? 1.0 : 0.5 * std::numbers::pi * std::sin(polar);
    }
    case SamplerKind::mc3_halton: {
        const std::uint64_t h = seed_ + k + 1;
        if (n_ == 2) {
            // van der Corput angle on the circle
            const double phi = 2.0 * std::numbers::pi * radical_inverse(h, 2);
            out[0] = std::cos(phi);
            out[1] = std::sin(phi);
            return 1.0;
        }
        const double polar = std::numbers::pi * radical_inverse(h, 2);
        const double az = 2.0 * std::numbers::pi * radical_inverse(h, 3);
        angles_to_point(polar, az, out);
        return 0.5 * std::numbers::pi * std::sin(polar);
    }
    }
    return 0.0;
}

void muller_point(SampleStream& stream, std::span<double> out)
{
    if (stream.kind() != SamplerKind::mc1_muller) throw DomainError("muller_point needs an MC1 stream");
    stream.next(out);
}

double spherical_point(SampleStream& stream, std::span<double> out)
{
    if (stream.kind() != SamplerKind::mc2_spherical) throw DomainError("spherical_point needs an MC2 stream");
    return stream.next(out);
}

double halton_point(SampleStream& stream, std::span<double> out)
{
    if (stream.kind() != SamplerKind::mc3_halton) throw DomainError("halton_point needs an MC3 stream");
    return stream.next(out);
}

void MeanAccumulator::add(double x) noexcept
{
    ++count_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(count_);
    m2_ += d * (x - mean_);
}

void MeanAccumulator::merge(const MeanAccumulator& other) noexcept
{
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_), nb = static_cast<double>(other.count_);
    const double d = other.mean_ - mean_;
    const double n = na + nb;
    mean_ += d * nb / n;
    m2_ += other.m2_ + d * d * na * nb / n;
    count_ += other.count_;
}

double MeanAccumulator::variance() const noexcept
{
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
}

double integrand(const KernelSpec& spec, std::span<const double> xi, std::span<const double> theta) noexcept
{
    double f = 1.0;
    for (int i : spec.component.indices()) f *= theta[static_cast<std::size_t>(i - 1)];
    return f * kernel_value(spec.kernel, dot(xi, theta));
}

namespace {

McEstimate to_estimate(const MeanAccumulator& acc)
{
    const double n = static_cast<double>(acc.count());
    return {acc.mean(), std::sqrt(acc.variance() / n), acc.count()};
}

MeanAccumulator run_stream(const KernelSpec& spec, std::span<const double> xi, SampleStream stream,
                           std::uint64_t count)
{
    MeanAccumulator acc;
    std::vector<double> theta(static_cast<std::size_t>(stream.dimension()));
    for (std::uint64_t k = 0; k < count; ++k) {
        const double w = stream.next(theta);
        acc.add(w * integrand(spec, xi, theta));
    }
    return acc;
}

}  // namespace

McEstimate estimate(const KernelSpec& spec, std::span<const double> xi, SamplerKind kind, std::uint64_t n_samples,
                    std::uint64_t seed, unsigned workers, Mc2Mode mode)
{
    if (n_samples < 100) throw DomainError("estimate: need at least 100 samples");
    if (static_cast<int>(xi.size()) != spec.n())
        throw DomainError("xi has " + std::to_string(xi.size()) + " coordinates, expected " + std::to_string(spec.n()));
    const Direction dir = Direction::normalize(xi);
    const SampleStream stream(kind, seed, spec.n(), mode);
    if (workers <= 1) return to_estimate(run_stream(spec, dir.coords(), stream, n_samples));

    std::vector<MeanAccumulator> parts(workers);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t count = n_samples / workers + (w < n_samples % workers ? 1 : 0);
        threads.emplace_back([&, w, count] { parts[w] = run_stream(spec, dir.coords(), stream.substream(w, workers), count); });
    }
    for (auto& th : threads) th.join();
    MeanAccumulator total;
    for (const auto& p : parts) total.merge(p);
    return to_estimate(total);
}

std::vector<McEstimate> estimate_many(std::span<const KernelSpec> specs, std::span<const double> xi, SamplerKind kind,
                                      std::uint64_t n_samples, std::uint64_t seed)
{
    if (specs.empty()) return {};
    const int n = specs.front().n();
    for (const auto& s : specs)
        if (s.n() != n) throw DomainError("estimate_many: all components must share the dimension");
    if (n_samples < 100) throw DomainError("estimate_many: need at least 100 samples");
    const Direction dir = Direction::normalize(xi);
    SampleStream stream(kind, seed, n);
    std::vector<MeanAccumulator> acc(specs.size());
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (std::uint64_t k = 0; k < n_samples; ++k) {
        const double w = stream.next(theta);
        const double d = dot(dir.coords(), theta);
        const double g_sgn = w * kernel_value(KernelG::sgn, d);
        const double g_log = w * kernel_value(KernelG::neglog, d);
        for (std::size_t s = 0; s < specs.size(); ++s) {
            double f = 1.0;
            for (int i : specs[s].component.indices()) f *= theta[static_cast<std::size_t>(i - 1)];
            acc[s].add(f * (specs[s].kernel == KernelG::sgn ? g_sgn : g_log));
        }
    }
    std::vector<McEstimate> out;
    out.reserve(acc.size());
    for (const auto& a : acc) out.push_back(to_estimate(a));
    return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_slope: need two or more matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

ConvergenceStudy convergence_study(const KernelSpec& spec, std::span<const double> xi, SamplerKind kind,
                                   std::span<const std::uint64_t> n_list, int repeats, std::uint64_t seed)
{
    if (n_list.empty() || repeats < 1) throw DomainError("convergence_study: empty sample-size list or no repeats");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1]) throw DomainError("convergence_study: sample sizes must be ascending");
    const double exact = evaluate_component_direct(spec, xi).value;
    const std::uint64_t offset = kind == SamplerKind::mc3_halton ? n_list.back() : 1;

    ConvergenceStudy study;
    std::vector<double> xs, ys;
    for (std::uint64_t n_samples : n_list) {
        ConvergenceRow row;
        row.n_samples = n_samples;
        for (int r = 0; r < repeats; ++r) {
            const McEstimate e = estimate(spec, xi, kind, n_samples, seed + static_cast<std::uint64_t>(r) * offset);
            row.mean_abs_error += std::abs(e.mean - exact) / repeats;
            row.mean_std_error += e.std_error / repeats;
        }
        study.rows.push_back(row);
        xs.push_back(static_cast<double>(n_samples));
        ys.push_back(row.mean_abs_error);
    }
    study.slope = loglog_slope(xs, ys);
    return study;
}

}  // namespace riesz
