#include "riesz/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "riesz/detail/neumaier_sum.hpp"
#include "riesz/direction.hpp"
#include "riesz/errors.hpp"

namespace riesz {

bool check_zero_mean(const MultiIndex& component)
{
    return MultiplicityMap::of(component).has_odd();
}

std::vector<std::vector<int>> enumerate_subsets(int t, int w, Parity parity)
{
    const int k = parity == Parity::odd ? 2 * w + 1 : 2 * w;
    if (t < 1 || w < 0 || k > t) throw DomainError("enumerate_subsets: level out of range");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == t - k + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

namespace {

void collect_matchings(std::vector<int>& rest, Matching& cur, std::vector<Matching>& out)
{
    if (rest.empty()) {
        out.push_back(cur);
        return;
    }
    const int first = rest.front();
    for (std::size_t j = 1; j < rest.size(); ++j) {
        const int partner = rest[j];
        std::vector<int> next;
        next.reserve(rest.size() - 2);
        for (std::size_t k = 1; k < rest.size(); ++k)
            if (k != j) next.push_back(rest[k]);
        cur.emplace_back(first, partner);
        collect_matchings(next, cur, out);
        cur.pop_back();
    }
}

// Shared state of one evaluation: positions mapped to 0-based coordinates,
// xi per position and the pair factor delta - xi xi per position pair.
struct Expansion {
    int t = 0;
    std::vector<double> xi_at;   // xi_{c(pos)}
    std::vector<double> pair;    // t x t, delta_{c(p)c(q)} - xi_{c(p)} xi_{c(q)}
    CoefficientTable coeffs;

    Expansion(const KernelSpec& spec, const Direction& dir)
        : t(spec.t()), coeffs(spec.n(), spec.t(), spec.kernel)
    {
        const auto idx = spec.component.indices();
        xi_at.resize(static_cast<std::size_t>(t));
        for (int p = 0; p < t; ++p) xi_at[static_cast<std::size_t>(p)] = dir[static_cast<std::size_t>(idx[static_cast<std::size_t>(p)] - 1)];
        pair.resize(static_cast<std::size_t>(t * t));
        for (int p = 0; p < t; ++p)
            for (int q = 0; q < t; ++q) {
                const double delta = idx[static_cast<std::size_t>(p)] == idx[static_cast<std::size_t>(q)] ? 1.0 : 0.0;
                pair[static_cast<std::size_t>(p * t + q)] = delta - xi_at[static_cast<std::size_t>(p)] * xi_at[static_cast<std::size_t>(q)];
            }
    }

    double pair_factor(int p, int q) const noexcept { return pair[static_cast<std::size_t>(p * t + q)]; }
};

struct Prepared {
    Direction dir;
    bool mismatch;
};

Prepared prepare(const KernelSpec& spec, std::span<const double> xi, const EvalOptions& opts)
{
    if (spec.t() > opts.max_order)
        throw SizeCapError("tensor order " + std::to_string(spec.t()) + " exceeds the enumeration cap " +
                           std::to_string(opts.max_order));
    if (static_cast<int>(xi.size()) != spec.n())
        throw DomainError("xi has " + std::to_string(xi.size()) + " coordinates, expected " + std::to_string(spec.n()));
    return {Direction::normalize(xi), !spec.parity_compatible()};
}

ComponentValue finish(double normalized_value, const KernelSpec& spec, const EvalOptions& opts)
{
    ComponentValue out;
    out.normalized = opts.normalization == Normalization::per_sphere_surface;
    out.value = out.normalized ? normalized_value : normalized_value * sphere_surface(spec.n());
    return out;
}

ComponentValue mismatch_value(const EvalOptions& opts)
{
    ComponentValue out;
    out.normalized = opts.normalization == Normalization::per_sphere_surface;
    out.parity_mismatch = true;
    return out;
}

std::vector<double> direct_levels(const KernelSpec& spec, const Direction& dir)
{
    const Expansion ex(spec, dir);
    const int t = ex.t;
    std::vector<double> levels(static_cast<std::size_t>(t + 1), 0.0);
    const Parity parity = parity_of(t);
    for (int w = 0; (parity == Parity::odd ? 2 * w + 1 : 2 * w) <= t; ++w) {
        const int a = parity == Parity::odd ? 2 * w + 1 : 2 * w;
        const double z = ex.coeffs.at_subset_size(a);
        if (z == 0.0) continue;
        detail::NeumaierSum level_sum;
        std::vector<bool> in_subset(static_cast<std::size_t>(t));
        for (const auto& subset : enumerate_subsets(t, w, parity)) {
            std::fill(in_subset.begin(), in_subset.end(), false);
            double xi_prod = 1.0;
            for (int p : subset) {
                in_subset[static_cast<std::size_t>(p)] = true;
                xi_prod *= ex.xi_at[static_cast<std::size_t>(p)];
            }
            std::vector<int> complement;
            for (int p = 0; p < t; ++p)
                if (!in_subset[static_cast<std::size_t>(p)]) complement.push_back(p);
            for (const auto& m : enumerate_matchings(complement)) {
                double term = z * xi_prod;
                for (const auto& [p, q] : m) term *= ex.pair_factor(p, q);
                level_sum.add(term);
            }
        }
        levels[static_cast<std::size_t>(a)] = level_sum.value();
    }
    return levels;
}

// Depth-first walk over partial matchings. Pairs are appended in increasing
// order of their smaller position, so every partial matching is reached by
// exactly one path. Each node contributes Z at its level times the xi factors
// of the still-unpaired positions times its pair factors.
class RecursiveWalker {
public:
    explicit RecursiveWalker(const Expansion& ex) : ex_(ex) {}

    double run()
    {
        visit(0u, -1, 1.0, 0);
        return sum_.value();
    }

private:
    void visit(unsigned paired, int last_first, double pair_prod, int n_pairs)
    {
        const int a = ex_.t - 2 * n_pairs;
        const double z = ex_.coeffs.at_subset_size(a);
        if (z != 0.0) {
            double xi_prod = 1.0;
            for (int p = 0; p < ex_.t; ++p)
                if (!(paired & (1u << p))) xi_prod *= ex_.xi_at[static_cast<std::size_t>(p)];
            sum_.add(z * xi_prod * pair_prod);
        }
        for (int p = last_first + 1; p < ex_.t; ++p) {
            if (paired & (1u << p)) continue;
            for (int q = p + 1; q < ex_.t; ++q) {
                if (paired & (1u << q)) continue;
                visit(paired | (1u << p) | (1u << q), p, pair_prod * ex_.pair_factor(p, q), n_pairs + 1);
            }
        }
    }

    const Expansion& ex_;
    detail::NeumaierSum sum_;
};

}  // namespace

std::vector<Matching> enumerate_matchings(std::span<const int> positions)
{
    if (positions.size() % 2 != 0) throw DomainError("enumerate_matchings: position set has odd size");
    std::vector<int> rest(positions.begin(), positions.end());
    std::vector<Matching> out;
    Matching cur;
    collect_matchings(rest, cur, out);
    return out;
}

ComponentValue evaluate_component_direct(const KernelSpec& spec, std::span<const double> xi, const EvalOptions& opts)
{
    const Prepared prep = prepare(spec, xi, opts);
    if (prep.mismatch) return mismatch_value(opts);
    detail::NeumaierSum total;
    for (double v : direct_levels(spec, prep.dir)) total.add(v);
    return finish(total.value(), spec, opts);
}

std::vector<double> level_contributions(const KernelSpec& spec, std::span<const double> xi, const EvalOptions& opts)
{
    const Prepared prep = prepare(spec, xi, opts);
    if (prep.mismatch) return std::vector<double>(static_cast<std::size_t>(spec.t() + 1), 0.0);
    return direct_levels(spec, prep.dir);
}

ComponentValue evaluate_component_recursive(const KernelSpec& spec, std::span<const double> xi,
                                            const EvalOptions& opts)
{
    const Prepared prep = prepare(spec, xi, opts);
    if (prep.mismatch) return mismatch_value(opts);
    if (spec.t() > 31) throw SizeCapError("recursive evaluator supports t <= 31");
    const Expansion ex(spec, prep.dir);
    return finish(RecursiveWalker(ex).run(), spec, opts);
}

double tprime_component(const MultiplicityMap& mults, KernelG g)
{
    const int n = mults.dimension();
    const int t = mults.total();
    if (t < 1) throw DomainError("tprime_component: empty multiplicity map");
    const int a = mults.at(1);
    double perp_moments = 1.0;
    for (int j = 2; j <= n; ++j) {
        const int s = mults.at(j);
        if (s % 2 != 0) return 0.0;
        perp_moments *= double_factorial(s - 1);
    }
    const double ga = g_a(g, a, t, n);
    if (ga == 0.0) return 0.0;
    // S_{n-1} / int_0^pi sin^{n-2} is the surface of S^{n-2}
    const double sub_sphere = sphere_surface(n) / wallis(n - 2, WallisRange::full);
    return ga * sub_sphere * double_factorial_ratio(n - 3, n - 3 + t - a) * perp_moments;
}

double riesz_normalization(int n)
{
    return gamma(0.5 * (n + 1)) / std::pow(std::numbers::pi, 0.5 * (n + 1));
}

MultiplierValue assemble_multiplier(const MultiIndex& component, std::span<const double> xi, const EvalOptions& opts)
{
    if (!check_zero_mean(component))
        throw InadmissibleKernelError("kernel inadmissible: component (" + component.to_string() +
                                      ") has only even multiplicities, so f has nonzero mean over the "
                                      "sphere and no Fourier multiplier exists");
    EvalOptions raw = opts;
    raw.normalization = Normalization::raw;
    const double t_log = evaluate_component_direct({component, KernelG::neglog}, xi, raw).value;
    const double t_sgn = evaluate_component_direct({component, KernelG::sgn}, xi, raw).value;
    return {t_log, -0.5 * std::numbers::pi * t_sgn};
}

double ComponentTable::at(const MultiIndex& component) const
{
    if (component.dimension() != n_ || component.order() != t_)
        throw DomainError("ComponentTable: component shape does not match the table");
    return classes_.at(component.canonical());
}

std::map<MultiIndex, double> ComponentTable::expand(std::size_t max_entries) const
{
    const double entries = std::pow(static_cast<double>(n_), t_);
    if (entries > static_cast<double>(max_entries))
        throw SizeCapError("full component expansion has " + std::to_string(static_cast<long long>(entries)) +
                           " entries, above the cap");
    std::map<MultiIndex, double> out;
    std::vector<int> idx(static_cast<std::size_t>(t_), 1);
    while (true) {
        MultiIndex mi(n_, idx);
        out.emplace(mi, classes_.at(mi.canonical()));
        int pos = t_ - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n_) idx[static_cast<std::size_t>(pos--)] = 1;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
    }
    return out;
}

ComponentTable evaluate_all_components(int n, int t, KernelG g, std::span<const double> xi, const EvalOptions& opts,
                                       std::size_t max_classes)
{
    if (n < 2 || t < 1) throw DomainError("evaluate_all_components: need n >= 2 and t >= 1");
    if (binomial(n + t - 1, t) > max_classes)
        throw SizeCapError("number of component classes exceeds the cap");
    std::map<MultiIndex, double> classes;
    for (const auto& mi : enumerate_classes(n, t))
        classes.emplace(mi, evaluate_component_direct({mi, g}, xi, opts).value);
    return ComponentTable(n, t, g, std::move(classes));
}

}  // namespace riesz
