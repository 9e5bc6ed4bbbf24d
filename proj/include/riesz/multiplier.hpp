#pragma once

// Analytic evaluation of the components of
//   T(xi) = int_{S^{n-1}} theta_{i_1} ... theta_{i_t} g(xi . theta) dtheta
// and of the Fourier multiplier  W(xi) = T_{-ln}(xi) - i (pi/2) T_sgn(xi).
//
// Writing theta_l = xi_l theta'_1 + (perpendicular part) and integrating the
// perpendicular part over S^{n-2} gives, for each subset E of positions that
// keeps the factor xi (|E| = a) and each perfect matching of the remaining
// positions into pairs (p, q),
//
//   T / S_{n-1} = sum_E sum_matchings  Z_a  prod_{alpha in E} xi_{c(alpha)}
//                                       prod_{(p,q)} (delta_{c(p)c(q)} - xi_{c(p)} xi_{c(q)})
//
// with Z_a = level_coefficient(g, t, n, a). Two independent traversals of
// this sum are provided: a subset-then-matching enumerator and a recursion
// that grows partial matchings pair by pair.

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "riesz/special_functions.hpp"
#include "riesz/tensor_index.hpp"

namespace riesz {

/// One component of T: dimension, multi-index and scalar kernel.
struct KernelSpec {
    MultiIndex component;
    KernelG kernel;

    int n() const noexcept { return component.dimension(); }
    int t() const noexcept { return component.order(); }
    /// sgn pairs with odd t and -ln with even t; other pairings vanish.
    bool parity_compatible() const noexcept { return kernel == natural_kernel(t()); }
};

enum class Normalization { per_sphere_surface, raw };

struct ComponentValue {
    double value = 0.0;
    bool normalized = true;        // value is T / S_{n-1}
    bool parity_mismatch = false;  // kernel and order parity disagree; value is exactly 0
};

struct MultiplierValue {
    double re = 0.0;  // -ln part
    double im = 0.0;  // -(pi/2) x sgn part
    std::complex<double> as_complex() const noexcept { return {re, im}; }
};

/// A pure-xi position subset together with a perfect matching of its complement.
struct SubsetTerm {
    int w = 0;
    std::vector<int> subset;
    std::vector<std::pair<int, int>> matching;
};

using Matching = std::vector<std::pair<int, int>>;

/// Default ceiling on the tensor order handled by the enumerators.
inline constexpr int kDefaultMaxOrder = 12;

struct EvalOptions {
    Normalization normalization = Normalization::per_sphere_surface;
    int max_order = kDefaultMaxOrder;
};

/// True iff the polyadic kernel integrates to zero over the sphere, which
/// happens exactly when some coordinate has odd multiplicity.
bool check_zero_mean(const MultiIndex& component);

/// Position subsets (0-based, ascending) of size 2w (even) or 2w+1 (odd) out
/// of {0..t-1}, in lexicographic order.
std::vector<std::vector<int>> enumerate_subsets(int t, int w, Parity parity);

/// All perfect matchings of an even-size position set; (|positions|-1)!! of them.
std::vector<Matching> enumerate_matchings(std::span<const int> positions);

ComponentValue evaluate_component_direct(const KernelSpec& spec, std::span<const double> xi, const EvalOptions& opts = {});
ComponentValue evaluate_component_recursive(const KernelSpec& spec, std::span<const double> xi,
                                            const EvalOptions& opts = {});

/// Per-subset-size partial sums of the direct enumeration (index a = |E|),
/// normalized by S_{n-1}. They add up to evaluate_component_direct.
std::vector<double> level_contributions(const KernelSpec& spec, std::span<const double> xi,
                                        const EvalOptions& opts = {});

/// Rotated-frame component T' = int theta'^s g(theta'_1) dtheta' (not
/// normalized), with s(1) the multiplicity of the xi axis. Zero when any
/// other multiplicity is odd.
double tprime_component(const MultiplicityMap& mults, KernelG g);

/// Riesz constant Gamma((n+1)/2) / pi^{(n+1)/2}.
double riesz_normalization(int n);

/// Fourier multiplier of the kernel f(x/|x|)/|x|^n for polyadic f. xi of any
/// nonzero norm is accepted. Throws InadmissibleKernelError when f has
/// nonzero mean.
MultiplierValue assemble_multiplier(const MultiIndex& component, std::span<const double> xi,
                                    const EvalOptions& opts = {});

/// Values of every component of T at one xi, stored once per permutation class.
class ComponentTable {
public:
    ComponentTable(int n, int t, KernelG g, std::map<MultiIndex, double> classes)
        : n_(n), t_(t), g_(g), classes_(std::move(classes))
    {
    }

    int n() const noexcept { return n_; }
    int t() const noexcept { return t_; }
    KernelG kernel() const noexcept { return g_; }
    std::size_t class_count() const noexcept { return classes_.size(); }
    const std::map<MultiIndex, double>& classes() const noexcept { return classes_; }

    /// Value of any component; permutations share one class.
    double at(const MultiIndex& component) const;

    /// Full n^t expansion. Throws SizeCapError above max_entries.
    std::map<MultiIndex, double> expand(std::size_t max_entries = 1'000'000) const;

private:
    int n_;
    int t_;
    KernelG g_;
    std::map<MultiIndex, double> classes_;
};

/// Evaluates one representative per multiplicity class. Throws SizeCapError
/// when the number of classes exceeds max_classes.
ComponentTable evaluate_all_components(int n, int t, KernelG g, std::span<const double> xi,
                                       const EvalOptions& opts = {}, std::size_t max_classes = 100'000);

}  // namespace riesz
