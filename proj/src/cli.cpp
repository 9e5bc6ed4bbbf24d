#include "riesz/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "riesz/direction.hpp"
#include "riesz/errors.hpp"
#include "riesz/frame.hpp"
#include "riesz/image2d.hpp"
#include "riesz/mc_oracle.hpp"
#include "riesz/multiplier.hpp"
#include "riesz/pgm.hpp"
#include "riesz/special_functions.hpp"

namespace riesz::cli {

namespace {

using json = nlohmann::ordered_json;

std::string g17(double v)
{
    return fmt::format("{:.17g}", v);
}

struct ComponentArgs {
    int n = 0;
    int t = 0;
    std::vector<int> idx;
    std::string kernel;
    std::vector<double> xi;
};

void add_component_flags(CLI::App& sub, ComponentArgs& a)
{
    sub.add_option("--n", a.n, "Dimension n of the space (>= 2)")->required()->check(CLI::Range(2, 64));
    sub.add_option("--t", a.t, "Tensor order t (>= 1)")->required()->check(CLI::Range(1, 64));
    sub.add_option("--idx", a.idx, "Component multi-index, t comma-separated 1-based coordinates")
        ->required()
        ->delimiter(',');
    sub.add_option("--kernel", a.kernel, "Scalar kernel g: sgn or neglog (default: sgn for odd t, neglog for even t)")
        ->check(CLI::IsMember({"sgn", "neglog"}));
    sub.add_option("--xi", a.xi, "Evaluation direction, n comma-separated reals (any nonzero norm; normalized)")
        ->required()
        ->delimiter(',')
        ->allow_extra_args(false);
}

KernelSpec make_spec(const ComponentArgs& a)
{
    if (static_cast<int>(a.idx.size()) != a.t)
        throw DomainError(fmt::format("--idx has {} entries but --t is {}", a.idx.size(), a.t));
    if (static_cast<int>(a.xi.size()) != a.n)
        throw DomainError(fmt::format("--xi has {} coordinates but --n is {}", a.xi.size(), a.n));
    const KernelG g = a.kernel.empty() ? natural_kernel(a.t) : kernel_from_string(a.kernel);
    return {MultiIndex(a.n, a.idx), g};
}

void require_parity(const KernelSpec& spec)
{
    if (!spec.parity_compatible())
        throw DomainError(fmt::format("parity mismatch: kernel {} with t = {} gives an identically zero component; "
                                      "use --kernel {}",
                                      to_string(spec.kernel), spec.t(), to_string(natural_kernel(spec.t()))));
}

void require_admissible(const KernelSpec& spec)
{
    if (!check_zero_mean(spec.component))
        throw InadmissibleKernelError(
            fmt::format("kernel inadmissible: every coordinate of ({}) has even multiplicity, so f does not have "
                        "zero mean on the sphere and has no Fourier multiplier; make one multiplicity odd",
                        spec.component.to_string()));
}

int cmd_component(const ComponentArgs& a, const std::string& method, bool raw, bool levels, std::ostream& out)
{
    const KernelSpec spec = make_spec(a);
    require_admissible(spec);
    require_parity(spec);
    EvalOptions opts;
    opts.normalization = raw ? Normalization::raw : Normalization::per_sphere_surface;
    const ComponentValue v = method == "recursive" ? evaluate_component_recursive(spec, a.xi, opts)
                                                   : evaluate_component_direct(spec, a.xi, opts);
    json j;
    j["n"] = a.n;
    j["t"] = a.t;
    j["component"] = a.idx;
    j["kernel"] = to_string(spec.kernel);
    j["xi"] = a.xi;
    j["value"] = v.value;
    j["normalized"] = v.normalized;
    j["method"] = method;
    if (levels) j["levels"] = level_contributions(spec, a.xi);
    out << j.dump(2) << '\n';
    return ok;
}

int cmd_validate(const ComponentArgs& a, const std::string& method, const std::vector<std::uint64_t>& ns,
                 std::uint64_t seed, unsigned workers, std::ostream& out)
{
    const KernelSpec spec = make_spec(a);
    require_parity(spec);
    const SamplerKind kind = sampler_from_string(method);
    const double exact = evaluate_component_direct(spec, a.xi).value;
    std::vector<std::uint64_t> sorted = ns;
    std::sort(sorted.begin(), sorted.end());
    out << "N,kind,mean,std_error,abs_error\n";
    for (std::uint64_t n_samples : sorted) {
        const McEstimate e = estimate(spec, a.xi, kind, n_samples, seed, workers);
        out << n_samples << ',' << to_string(kind) << ',' << g17(e.mean) << ',' << g17(e.std_error) << ','
            << g17(std::abs(e.mean - exact)) << '\n';
    }
    return ok;
}

int cmd_converge(const ComponentArgs& a, const std::string& method, const std::vector<std::uint64_t>& ns, int repeats,
                 std::uint64_t seed, std::ostream& out, std::ostream& err)
{
    const KernelSpec spec = make_spec(a);
    require_parity(spec);
    const SamplerKind kind = sampler_from_string(method);
    std::vector<std::uint64_t> sorted = ns;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const ConvergenceStudy st = convergence_study(spec, a.xi, kind, sorted, repeats, seed);
    out << "N,kind,mean_abs_error,mean_std_error\n";
    for (const auto& r : st.rows)
        out << r.n_samples << ',' << to_string(kind) << ',' << g17(r.mean_abs_error) << ',' << g17(r.mean_std_error)
            << '\n';
    err << "log-log slope: " << g17(st.slope) << '\n';
    return ok;
}

int cmd_ga(int t, int n, const std::string& kernel, std::ostream& out)
{
    std::vector<KernelG> kernels;
    if (kernel.empty())
        kernels = {KernelG::sgn, KernelG::neglog};
    else
        kernels = {kernel_from_string(kernel)};
    out << "a,t,n,kernel,value\n";
    for (KernelG g : kernels)
        for (int a = 0; a <= t; ++a) out << a << ',' << t << ',' << n << ',' << to_string(g) << ',' << g17(g_a(g, a, t, n)) << '\n';
    return ok;
}

int cmd_basis(const std::vector<double>& xi, bool strict, std::ostream& out)
{
    const Direction dir = strict ? Direction::from_unit(xi) : Direction::normalize(xi);
    const BasisMatrix r = build_basis(dir);
    for (int row = 0; row < r.dimension(); ++row) {
        for (int col = 0; col < r.dimension(); ++col) out << (col ? "," : "") << g17(r(row, col));
        out << '\n';
    }
    return ok;
}

struct FilterArgs {
    int t1 = 3;
    int t2 = 1;
    double theta0 = std::numbers::pi / 3;
    std::string in;
    std::string out;
    std::string report;
    std::string scene_out;
    int size = 256;
    int bits = 16;
};

json point_json(const Point2& p)
{
    return json::array({p.x, p.y});
}

int cmd_filter(const FilterArgs& a, std::ostream& out)
{
    const Kernel2dSpec spec{a.t1, a.t2, a.theta0};
    spec.validate();
    std::vector<Rectangle> rects;
    ImageBuffer img = a.in.empty() ? ImageBuffer(1, 1) : read_pgm(a.in);
    if (a.in.empty()) {
        rects = demo_scene(a.size);
        img = synthesize_rectangles(a.size, a.size, rects);
    }
    if (!a.scene_out.empty()) write_pgm(a.scene_out, img, a.bits);

    const ImageBuffer f = filter_image(img, spec);
    json j;
    j["t1"] = a.t1;
    j["t2"] = a.t2;
    j["theta0"] = a.theta0;
    j["width"] = f.width();
    j["height"] = f.height();
    j["input"] = a.in.empty() ? "demo scene" : a.in;
    if (!a.out.empty()) {
        const PgmRescale r = write_pgm(a.out, f, a.bits);
        write_rescale_sidecar(a.out + ".json", r);
        j["output"] = a.out;
    }

    std::vector<Point2> corners;
    std::vector<Segment> edges;
    for (const auto& r : rects) {
        for (const auto& p : r.corners()) corners.push_back(p);
        for (const auto& e : r.edges()) edges.push_back(e);
    }
    const CornerReport rep = corner_response_report(f, corners, edges);
    j["extrema_count"] = rep.extrema.size();
    if (!corners.empty()) {
        j["median_edge_response"] = rep.median_edge_response;
        j["max_corner_distance"] = rep.max_distance;
        j["min_corner_ratio"] = rep.min_ratio;
        json cs = json::array();
        for (const auto& m : rep.corners)
            cs.push_back({{"corner", point_json(m.corner)},
                          {"extremum", point_json(m.extremum)},
                          {"distance", m.distance},
                          {"response", m.response},
                          {"ratio", m.ratio}});
        j["corners"] = cs;
    }
    if (a.report.empty()) {
        out << j.dump(2) << '\n';
    } else {
        std::ofstream rf(a.report);
        if (!rf) throw DomainError("cannot write " + a.report);
        rf << j.dump(2) << '\n';
    }
    return ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Analytic Fourier multipliers of higher-order Riesz transforms, with Monte-Carlo checks"};
    app.name("riesz");
    app.require_subcommand(1, 1);
    app.option_defaults()->always_capture_default();

    ComponentArgs comp;
    std::string comp_method = "direct";
    bool comp_raw = false, comp_levels = false;
    auto* c = app.add_subcommand("component", "Evaluate one component T/S_{n-1} analytically (JSON)");
    add_component_flags(*c, comp);
    c->add_option("--method", comp_method, "Evaluator")->check(CLI::IsMember({"direct", "recursive"}));
    c->add_flag("--raw", comp_raw, "Report T itself instead of T/S_{n-1}");
    c->add_flag("--levels", comp_levels, "Include per-level partial sums, indexed by pure-xi subset size");

    ComponentArgs val;
    std::string val_method = "mc3";
    std::vector<std::uint64_t> val_n{1'000'000};
    std::uint64_t val_seed = 0;
    unsigned val_workers = 1;
    auto* v = app.add_subcommand("validate", "Monte-Carlo estimate against the analytic value (CSV)");
    add_component_flags(*v, val);
    v->add_option("--method", val_method, "Sampler: mc1 (Gaussian), mc2 (random angles), mc3 (Halton)")
        ->check(CLI::IsMember({"mc1", "mc2", "mc3"}));
    v->add_option("--N", val_n, "Sample counts, comma-separated (each >= 100)")->delimiter(',')->check(CLI::Range(std::uint64_t{100}, std::uint64_t{1} << 40));
    v->add_option("--seed", val_seed, "Seed (mc3: Halton start offset)");
    v->add_option("--workers", val_workers, "Threads")->check(CLI::Range(1u, 256u));

    ComponentArgs conv;
    std::string conv_method = "mc1";
    std::vector<std::uint64_t> conv_n{1000, 10000, 100000};
    int conv_repeats = 10;
    std::uint64_t conv_seed = 0;
    auto* cv = app.add_subcommand("converge", "Mean absolute error against N (CSV); slope on stderr");
    add_component_flags(*cv, conv);
    cv->add_option("--method", conv_method, "Sampler: mc1, mc2 or mc3")->check(CLI::IsMember({"mc1", "mc2", "mc3"}));
    cv->add_option("--N", conv_n, "Sample counts, comma-separated (each >= 100)")->delimiter(',')->check(CLI::Range(std::uint64_t{100}, std::uint64_t{1} << 40));
    cv->add_option("--repeats", conv_repeats, "Runs per N, seeds seed, seed+1, ...")->check(CLI::Range(1, 100000));
    cv->add_option("--seed", conv_seed, "First seed");

    int ga_t = 0, ga_n = 0;
    std::string ga_kernel;
    auto* g = app.add_subcommand("ga", "Angular moments G_a(t, n) for a = 0..t (CSV)");
    g->add_option("--t", ga_t, "Tensor order t")->required()->check(CLI::Range(1, 200));
    g->add_option("--n", ga_n, "Dimension n")->required()->check(CLI::Range(2, 200));
    g->add_option("--kernel", ga_kernel, "sgn or neglog (default: both)")->check(CLI::IsMember({"sgn", "neglog"}));

    std::vector<double> basis_xi;
    bool basis_strict = false;
    auto* b = app.add_subcommand("basis", "xi-adapted orthonormal basis R, row-major (CSV)");
    b->add_option("--xi", basis_xi, "Direction, comma-separated reals (normalized unless --strict)")
        ->required()
        ->delimiter(',');
    b->add_flag("--strict", basis_strict, "Reject xi unless it is unit within 1e-12");

    FilterArgs fa;
    auto* f = app.add_subcommand("filter", "Filter an image with the rotated plane kernel theta_1^t1 theta_2^t2");
    f->add_option("--t1", fa.t1, "Power of theta_1")->check(CLI::Range(0, 40));
    f->add_option("--t2", fa.t2, "Power of theta_2")->check(CLI::Range(0, 40));
    f->add_option("--theta0", fa.theta0, "Kernel rotation (radians)");
    f->add_option("--in", fa.in, "Input P5 PGM (default: built-in two-rectangle scene)");
    f->add_option("--out", fa.out, "Output P5 PGM; the rescale goes to <out>.json");
    f->add_option("--report", fa.report, "Write the JSON corner report here instead of stdout");
    f->add_option("--scene-out", fa.scene_out, "Also write the input image as PGM");
    f->add_option("--size", fa.size, "Side of the built-in scene (pixels)")->check(CLI::Range(64, 8192));
    f->add_option("--bits", fa.bits, "PGM sample depth")->check(CLI::IsMember({8, 16}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*c) return cmd_component(comp, comp_method, comp_raw, comp_levels, out);
        if (*v) return cmd_validate(val, val_method, val_n, val_seed, val_workers, out);
        if (*cv) return cmd_converge(conv, conv_method, conv_n, conv_repeats, conv_seed, out, err);
        if (*g) return cmd_ga(ga_t, ga_n, ga_kernel, out);
        if (*b) return cmd_basis(basis_xi, basis_strict, out);
        if (*f) return cmd_filter(fa, out);
    } catch (const SizeCapError& e) {
        err << "error: " << e.what() << '\n';
        return size_cap;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return domain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return domain;
    }
    return usage;
}

}  // namespace riesz::cli
