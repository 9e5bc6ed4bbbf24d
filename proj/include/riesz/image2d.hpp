#pragma once

// Plane (n = 2) multiplier of the kernel f(theta) = theta_1^t1 theta_2^t2 and
// its rotated family, applied to images on a periodic grid.
//
// With xi = (cos nu, sin nu) the multiplier component is
//   T(nu) = sum_{p<=t1} sum_{q<=t2} cos(nu-theta0)^{p+t2-q} sin(nu-theta0)^{q+t1-p}
//           C(t1,p) C(t2,q) B_pq
// with B_pq = (-1)^{t1-p} int_0^{2pi} cos^{p+q} a sin^{t-p-q} a g(cos a) da,
// g = -ln|.| for even t = t1+t2 and sgn for odd t. The frequency response is
// T(nu) for even t and -i (pi/2) T(nu) for odd t.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "riesz/special_functions.hpp"

namespace riesz {

struct Kernel2dSpec {
    int t1 = 0;
    int t2 = 0;
    double theta0 = 0.0;

    int t() const noexcept { return t1 + t2; }
    KernelG kernel() const noexcept { return natural_kernel(t()); }
    /// Throws DomainError for negative powers and InadmissibleKernelError when
    /// both powers are even (the kernel then has nonzero mean).
    void validate() const;
};

/// Row-major real image; sample (x, y) sits at column x, row y.
class ImageBuffer {
public:
    ImageBuffer(int width, int height);
    ImageBuffer(int width, int height, std::vector<double> samples);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    double& at(int x, int y) noexcept { return data_[index(x, y)]; }
    double at(int x, int y) const noexcept { return data_[index(x, y)]; }
    std::span<double> samples() noexcept { return data_; }
    std::span<const double> samples() const noexcept { return data_; }

private:
    std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }
    int width_;
    int height_;
    std::vector<double> data_;
};

/// Multiplier sampled on the unshifted discrete frequency lattice (the
/// layout of a forward DFT). Bin i along an axis of length L has signed
/// frequency i for i <= L/2 and i - L otherwise, so the Nyquist bin of an
/// even length is positive.
class MultiplierGrid {
public:
    MultiplierGrid(int width, int height);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::complex<double>& at(int kx, int ky) noexcept { return data_[index(kx, ky)]; }
    std::complex<double> at(int kx, int ky) const noexcept { return data_[index(kx, ky)]; }
    std::span<const std::complex<double>> values() const noexcept { return data_; }

private:
    std::size_t index(int kx, int ky) const noexcept
    {
        return static_cast<std::size_t>(ky) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(kx);
    }
    int width_;
    int height_;
    std::vector<std::complex<double>> data_;
};

/// Signed frequency of bin i on an axis of the given length.
int signed_frequency(int i, int length) noexcept;

double bpq(int p, int q, int t1, int t2);

/// T(nu) for the rotated kernel, real for both parities.
double multiplier_2d(const Kernel2dSpec& spec, double nu);

/// Frequency response at angle nu: T(nu) (even t) or -i (pi/2) T(nu) (odd t).
std::complex<double> frequency_response(const Kernel2dSpec& spec, double nu);

/// Response at every nonzero bin, 0 at the zero bin. width, height >= 8.
MultiplierGrid build_multiplier_grid(const Kernel2dSpec& spec, int width, int height);

/// Real part of the inverse DFT of grid * DFT(u), periodic boundaries.
ImageBuffer apply_multiplier(const ImageBuffer& u, const MultiplierGrid& grid);
ImageBuffer filter_image(const ImageBuffer& u, const Kernel2dSpec& spec);

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct Segment {
    Point2 a;
    Point2 b;
};

/// Rectangle of size w x h centred at (cx, cy), rotated by `inclination`
/// radians (counter-clockwise in x-right, y-down pixel coordinates).
struct Rectangle {
    double cx = 0.0;
    double cy = 0.0;
    double w = 0.0;
    double h = 0.0;
    double inclination = 0.0;
    double intensity = 1.0;

    std::vector<Point2> corners() const;
    std::vector<Segment> edges() const;
};

/// Sum of rectangle indicators, area-averaged over supersample^2 points per
/// pixel. Every corner must lie inside the image.
ImageBuffer synthesize_rectangles(int width, int height, std::span<const Rectangle> rects, int supersample = 8);

/// Two overlapping rectangles inclined by 30 and 60 degrees, scaled to a
/// square image of the given side.
std::vector<Rectangle> demo_scene(int side = 256);

/// 8-neighbourhood maxima of |f| (periodic) strictly above
/// threshold_fraction * max |f|.
std::vector<Point2> local_extrema(const ImageBuffer& filtered, double threshold_fraction = 0.1);

struct CornerMatch {
    Point2 corner;
    Point2 extremum;
    double distance = 0.0;  // to the nearest extremum; infinity if there is none
    double response = 0.0;  // |f| at that extremum
    double ratio = 0.0;     // response / median edge response
};

struct CornerReport {
    std::vector<Point2> extrema;
    std::vector<CornerMatch> corners;
    double median_edge_response = 0.0;
    double max_distance = 0.0;
    double min_ratio = 0.0;
};

/// Matches every corner to its nearest extremum of |f|. The edge response
/// is max |f| over the 3x3 block around points spread along the middle half
/// of each edge.
CornerReport corner_response_report(const ImageBuffer& filtered, std::span<const Point2> corners,
                                    std::span<const Segment> edges, double threshold_fraction = 0.1);

}  // namespace riesz
