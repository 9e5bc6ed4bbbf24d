#include "riesz/image2d.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

#include "riesz/errors.hpp"

namespace riesz {

namespace {

// FFTW planning is not thread-safe
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

double int_pow(double x, int k) noexcept
{
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

void Kernel2dSpec::validate() const
{
    if (t1 < 0 || t2 < 0) throw DomainError("kernel powers t1, t2 must be non-negative");
    if (t1 % 2 == 0 && t2 % 2 == 0)
        throw InadmissibleKernelError("kernel inadmissible: t1 = " + std::to_string(t1) + " and t2 = " +
                                      std::to_string(t2) +
                                      " are both even, so f has nonzero mean over the circle; make one of them odd");
    if (!std::isfinite(theta0)) throw DomainError("theta0 must be finite");
}

ImageBuffer::ImageBuffer(int width, int height) : ImageBuffer(width, height, {}) {}

ImageBuffer::ImageBuffer(int width, int height, std::vector<double> samples)
    : width_(width), height_(height), data_(std::move(samples))
{
    if (width < 1 || height < 1) throw DomainError("image dimensions must be positive");
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (data_.empty()) data_.assign(n, 0.0);
    if (data_.size() != n) throw DomainError("image sample count does not match width * height");
}

MultiplierGrid::MultiplierGrid(int width, int height)
    : width_(width), height_(height), data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
{
}

int signed_frequency(int i, int length) noexcept
{
    return i <= length / 2 ? i : i - length;
}

double bpq(int p, int q, int t1, int t2)
{
    if (t1 < 0 || t2 < 0 || p < 0 || p > t1 || q < 0 || q > t2)
        throw DomainError("bpq: need 0 <= p <= t1 and 0 <= q <= t2");
    const int t = t1 + t2;
    const int a = p + q;
    // sin^{t-a} with t-a odd integrates to zero over the full period
    if ((t - a) % 2 != 0) return 0.0;
    const double sign = (t1 - p) % 2 == 0 ? 1.0 : -1.0;
    return sign * 2.0 * g_a(natural_kernel(t), a, t, 2);
}

double multiplier_2d(const Kernel2dSpec& spec, double nu)
{
    spec.validate();
    const double c = std::cos(nu - spec.theta0);
    const double s = std::sin(nu - spec.theta0);
    double sum = 0.0;
    for (int p = 0; p <= spec.t1; ++p)
        for (int q = 0; q <= spec.t2; ++q) {
            const double b = bpq(p, q, spec.t1, spec.t2);
            if (b == 0.0) continue;
            sum += int_pow(c, p + spec.t2 - q) * int_pow(s, q + spec.t1 - p) *
                   static_cast<double>(binomial(spec.t1, p)) * static_cast<double>(binomial(spec.t2, q)) * b;
        }
    return sum;
}

std::complex<double> frequency_response(const Kernel2dSpec& spec, double nu)
{
    const double m = multiplier_2d(spec, nu);
    if (spec.kernel() == KernelG::neglog) return {m, 0.0};
    return {0.0, -0.5 * std::numbers::pi * m};
}

MultiplierGrid build_multiplier_grid(const Kernel2dSpec& spec, int width, int height)
{
    spec.validate();
    if (width < 8 || height < 8) throw DomainError("multiplier grid needs width, height >= 8");
    MultiplierGrid grid(width, height);
    for (int ky = 0; ky < height; ++ky)
        for (int kx = 0; kx < width; ++kx) {
            const int f1 = signed_frequency(kx, width);
            const int f2 = signed_frequency(ky, height);
            if (f1 == 0 && f2 == 0) continue;
            grid.at(kx, ky) = frequency_response(spec, std::atan2(static_cast<double>(f2), static_cast<double>(f1)));
        }
    return grid;
}

ImageBuffer apply_multiplier(const ImageBuffer& u, const MultiplierGrid& grid)
{
    const int w = u.width(), h = u.height();
    if (grid.width() != w || grid.height() != h) throw DomainError("multiplier grid and image sizes differ");
    for (double v : u.samples())
        if (!std::isfinite(v)) throw DomainError("image contains non-finite samples");

    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!buf) throw std::bad_alloc();
    fftw_plan fwd, bwd;
    {
        std::lock_guard lock(planner_mutex());
        fwd = fftw_plan_dft_2d(h, w, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_2d(h, w, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    const auto src = u.samples();
    for (std::size_t i = 0; i < n; ++i) {
        buf[i][0] = src[i];
        buf[i][1] = 0.0;
    }
    fftw_execute(fwd);
    const auto m = grid.values();
    for (std::size_t i = 0; i < n; ++i) {
        const std::complex<double> z = std::complex<double>(buf[i][0], buf[i][1]) * m[i];
        buf[i][0] = z.real();
        buf[i][1] = z.imag();
    }
    fftw_execute(bwd);
    ImageBuffer out(w, h);
    auto dst = out.samples();
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) dst[i] = buf[i][0] * inv;
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    fftw_free(buf);
    return out;
}

ImageBuffer filter_image(const ImageBuffer& u, const Kernel2dSpec& spec)
{
    return apply_multiplier(u, build_multiplier_grid(spec, u.width(), u.height()));
}

std::vector<Point2> Rectangle::corners() const
{
    const double c = std::cos(inclination), s = std::sin(inclination);
    std::vector<Point2> out;
    for (auto [su, sv] : {std::pair{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}) {
        const double u = su * w / 2, v = sv * h / 2;
        out.push_back({cx + u * c - v * s, cy + u * s + v * c});
    }
    return out;
}

std::vector<Segment> Rectangle::edges() const
{
    const auto p = corners();
    std::vector<Segment> out;
    for (std::size_t i = 0; i < 4; ++i) out.push_back({p[i], p[(i + 1) % 4]});
    return out;
}

ImageBuffer synthesize_rectangles(int width, int height, std::span<const Rectangle> rects, int supersample)
{
    if (supersample < 1) throw DomainError("supersample factor must be positive");
    for (const auto& r : rects) {
        if (!(r.w > 0 && r.h > 0)) throw DomainError("rectangle sides must be positive");
        for (const auto& p : r.corners())
            if (p.x < 0 || p.y < 0 || p.x > width - 1 || p.y > height - 1)
                throw DomainError("rectangle corner outside the image");
    }
    ImageBuffer img(width, height);
    const double step = 1.0 / supersample;
    const double weight = step * step;
    for (const auto& r : rects) {
        const double c = std::cos(r.inclination), s = std::sin(r.inclination);
        // bounding box of the rectangle in pixels
        double x0 = width, x1 = 0, y0 = height, y1 = 0;
        for (const auto& p : r.corners()) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
        const int px0 = std::max(0, static_cast<int>(std::floor(x0))), px1 = std::min(width - 1, static_cast<int>(std::ceil(x1)));
        const int py0 = std::max(0, static_cast<int>(std::floor(y0))), py1 = std::min(height - 1, static_cast<int>(std::ceil(y1)));
        for (int y = py0; y <= py1; ++y)
            for (int x = px0; x <= px1; ++x) {
                int inside = 0;
                for (int j = 0; j < supersample; ++j)
                    for (int i = 0; i < supersample; ++i) {
                        const double dx = x - 0.5 + (i + 0.5) * step - r.cx;
                        const double dy = y - 0.5 + (j + 0.5) * step - r.cy;
                        const double u = dx * c + dy * s, v = -dx * s + dy * c;
                        if (std::abs(u) <= r.w / 2 && std::abs(v) <= r.h / 2) ++inside;
                    }
                img.at(x, y) += r.intensity * inside * weight;
            }
    }
    return img;
}

std::vector<Rectangle> demo_scene(int side)
{
    const double k = side / 256.0;
    const double deg = std::numbers::pi / 180.0;
    return {{110 * k, 115 * k, 100 * k, 70 * k, 30 * deg, 1.0}, {150 * k, 145 * k, 90 * k, 80 * k, 60 * deg, 1.0}};
}

std::vector<Point2> local_extrema(const ImageBuffer& filtered, double threshold_fraction)
{
    const int w = filtered.width(), h = filtered.height();
    double peak = 0.0;
    for (double v : filtered.samples()) peak = std::max(peak, std::abs(v));
    const double threshold = threshold_fraction * peak;
    std::vector<Point2> out;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double v = std::abs(filtered.at(x, y));
            if (!(v > threshold)) continue;
            bool is_max = true;
            for (int dy = -1; dy <= 1 && is_max; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    if (std::abs(filtered.at((x + dx + w) % w, (y + dy + h) % h)) > v) {
                        is_max = false;
                        break;
                    }
                }
            if (is_max) out.push_back({static_cast<double>(x), static_cast<double>(y)});
        }
    return out;
}

CornerReport corner_response_report(const ImageBuffer& filtered, std::span<const Point2> corners,
                                    std::span<const Segment> edges, double threshold_fraction)
{
    const int w = filtered.width(), h = filtered.height();
    CornerReport rep;
    rep.extrema = local_extrema(filtered, threshold_fraction);

    std::vector<double> edge_resp;
    for (const auto& e : edges) {
        const double len = std::hypot(e.b.x - e.a.x, e.b.y - e.a.y);
        const int m = std::max(2, static_cast<int>(len / 2));
        for (int k = 0; k < m; ++k) {
            const double fr = 0.25 + 0.5 * k / (m - 1);
            const int xi = static_cast<int>(std::lround(e.a.x + fr * (e.b.x - e.a.x)));
            const int yi = static_cast<int>(std::lround(e.a.y + fr * (e.b.y - e.a.y)));
            double best = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    best = std::max(best, std::abs(filtered.at(((xi + dx) % w + w) % w, ((yi + dy) % h + h) % h)));
            edge_resp.push_back(best);
        }
    }
    if (!edge_resp.empty()) {
        std::sort(edge_resp.begin(), edge_resp.end());
        const std::size_t mid = edge_resp.size() / 2;
        rep.median_edge_response =
            edge_resp.size() % 2 ? edge_resp[mid] : 0.5 * (edge_resp[mid - 1] + edge_resp[mid]);
    }

    rep.min_ratio = std::numeric_limits<double>::infinity();
    for (const auto& c : corners) {
        CornerMatch m;
        m.corner = c;
        m.distance = std::numeric_limits<double>::infinity();
        for (const auto& p : rep.extrema) {
            const double d = std::hypot(p.x - c.x, p.y - c.y);
            if (d < m.distance) {
                m.distance = d;
                m.extremum = p;
            }
        }
        if (std::isfinite(m.distance)) {
            m.response = std::abs(filtered.at(static_cast<int>(m.extremum.x), static_cast<int>(m.extremum.y)));
            m.ratio = rep.median_edge_response > 0 ? m.response / rep.median_edge_response
                                                   : std::numeric_limits<double>::infinity();
        }
        rep.max_distance = std::max(rep.max_distance, m.distance);
        rep.min_ratio = std::min(rep.min_ratio, m.ratio);
        rep.corners.push_back(m);
    }
    if (corners.empty()) rep.min_ratio = 0.0;
    return rep;
}

}  // namespace riesz
