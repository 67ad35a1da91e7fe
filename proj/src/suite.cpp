#include "hyplane/suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hyplane/errors.hpp"
#include "hyplane/measures.hpp"
#include "hyplane/ngon.hpp"

namespace hyplane {

const char* to_string(InvarianceMode mode)
{
    switch (mode) {
    case InvarianceMode::mobius:
        return "mobius";
    case InvarianceMode::reversibility:
        return "reversibility";
    case InvarianceMode::target:
        return "target";
    default:
        return "markov";
    }
}

InvarianceMode invariance_mode_from_string(std::string_view name)
{
    for (auto m : {InvarianceMode::mobius, InvarianceMode::reversibility, InvarianceMode::target,
                   InvarianceMode::markov}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw PreconditionError("unknown invariance mode '" + std::string(name) + "'");
}

namespace {

// Stream tags for the sample families of one run.
enum Tag : std::uint64_t { first = 0, second = 1, self = 2, permute = 9 };

using Columns = std::vector<std::vector<double>>;

void require_samples(std::size_t n)
{
    if (n < kMinSuiteSamples) {
        throw PreconditionError("suite needs at least " + std::to_string(kMinSuiteSamples) + " samples");
    }
}

TestReport ks_family(std::string name, const Columns& a, const Columns& b, const SuiteOptions& o)
{
    std::vector<double> p;
    TestReport r;
    r.name = std::move(name);
    r.sample_sizes = {a.front().size(), b.front().size()};
    for (std::size_t k = 0; k < a.size(); ++k) {
        const KsResult ks = ks_two_sample(a[k], b[k]);
        r.statistic = std::max(r.statistic, ks.statistic);
        r.details["ks_" + std::to_string(k)] = ks.statistic;
        p.push_back(ks.p_value);
    }
    const auto adjusted = holm_adjust(p);
    r.p_value = *std::min_element(adjusted.begin(), adjusted.end());
    r.alpha = o.alpha;
    r.passed = *r.p_value > o.alpha;
    r.seed = o.seed;
    return r;
}

// Min and max of the sorted side harmonic measures.
void push_scalar(Columns& cols, const IdealPolygon& poly, Complex z)
{
    const auto m = side_measures(poly, z);
    cols[0].push_back(m.front());
    cols[1].push_back(m.back());
}

Columns root_scalars(std::size_t n, const RandomStream& base)
{
    Columns cols(2);
    for (std::size_t i = 0; i < n; ++i) {
        RandomStream s = base.split(i).split(0);
        push_scalar(cols, sample_p0(s), Complex(0));
    }
    return cols;
}

Columns located_scalars(MobiusSampler sampler, const SuiteOptions& o, const RandomStream& base,
                        std::size_t& misses)
{
    const Complex z0(o.mobius_radius, 0.0);
    EngineOptions engine;
    engine.resolution = o.resolution;
    if (sampler == MobiusSampler::corrupted) {
        engine.law = JumpLaw::pareto;
    }
    Columns cols(2);
    for (std::uint64_t i = 0; cols[0].size() < o.n; ++i) {
        const RandomStream s = base.split(i);
        RandomStream root_stream = s.split(0);
        const IdealPolygon root = sample_p0(root_stream);
        if (sampler == MobiusSampler::farey) {
            push_scalar(cols, farey_locate(root, z0), z0);
            continue;
        }
        if (const auto t = locate(Shape::triangle, root, s.split(1), z0, engine)) {
            push_scalar(cols, *t, z0);
        } else {
            ++misses;
        }
    }
    return cols;
}

double halfplane_width(const IdealPolygon& poly)
{
    const IdealPolygon h = poly.to(Model::halfplane);
    double lo = INFINITY;
    double hi = -INFINITY;
    for (const auto& p : h.apexes()) {
        if (p.is_infinite()) {
            return INFINITY;
        }
        lo = std::min(lo, p.real());
        hi = std::max(hi, p.real());
    }
    return hi - lo;
}

// (log width of T(i), log width of T(iy)); forward roots the tiling at i,
// backward at iy and maps the pair back with z -> -y/z.
std::vector<Point2> reversibility_pairs(bool backward, const SuiteOptions& o, const RandomStream& base)
{
    const double y = o.height;
    EngineOptions engine;
    engine.resolution = o.resolution;
    const MobiusMap scale(y, 0, 0, 1, Model::halfplane, Model::halfplane);
    const MobiusMap flip(0, -y, 1, 0, Model::halfplane, Model::halfplane);
    std::vector<Point2> out;
    for (std::uint64_t i = 0; out.size() < o.n; ++i) {
        const RandomStream s = base.split(i);
        RandomStream root_stream = s.split(0);
        const IdealPolygon disk_root = sample_p0(root_stream);
        IdealPolygon t_low = disk_root;
        std::optional<IdealPolygon> t_high;
        if (!backward) {
            t_high = locate(Shape::triangle, disk_root, s.split(1), Complex((y - 1) / (y + 1), 0.0), engine);
        } else {
            const IdealPolygon root = disk_root.to(Model::halfplane).mapped(scale);
            const auto low = locate(Shape::triangle, root, s.split(1), Complex(0, 1), engine);
            if (low) {
                t_low = root.mapped(flip);
                t_high = low->to(Model::halfplane).mapped(flip);
            }
        }
        if (!t_high) {
            continue;
        }
        const double a = halfplane_width(t_low);
        const double b = halfplane_width(*t_high);
        if (std::isfinite(a) && std::isfinite(b)) {
            out.push_back({std::log(a), std::log(b)});
        }
    }
    return out;
}

// Sorted apexes of the triangle disconnecting `a` from infinity.
std::array<double, 3> disconnecting(double a, RandomStream stream, double cutoff)
{
    PoissonJumps jumps(stream, cutoff);
    const AccordionRun run = grow_until_disconnect({-1, 1}, a, jumps);
    auto t = run.triangles.back();
    std::sort(t.begin(), t.end());
    return t;
}

// Direct route toward a, or the route toward -a mapped by the map fixing
// -1 and 1 that sends -a to infinity.
Columns target_scalars(bool image, const SuiteOptions& o, const RandomStream& base)
{
    const double a = o.target;
    const double lambda = (a + 1.0) / (a - 1.0);
    auto h = [lambda](double x) { return ((lambda + 1.0) * x + (lambda - 1.0)) / ((lambda - 1.0) * x + (lambda + 1.0)); };
    Columns cols(3);
    for (std::size_t i = 0; i < o.n; ++i) {
        std::array<double, 3> t;
        if (!image) {
            t = disconnecting(a, base.split(i), o.target_cutoff);
        } else {
            const auto pre = disconnecting(-a, base.split(i), o.target_cutoff);
            t = {h(pre[0]), h(pre[1]), h(pre[2])};
            std::sort(t.begin(), t.end());
        }
        const double w = t[2] - t[0];
        cols[0].push_back(std::log(w));
        cols[1].push_back((a - t[0]) / w);
        cols[2].push_back((t[1] - t[0]) / w);
    }
    return cols;
}

// Log width, in the normalized chart of gap k, of the first arch covering [-2, 2].
double gap_statistic(const RandomStream& gaps, std::uint64_t k, double cutoff)
{
    PoissonJumps jumps(gaps.split(k).split(0), cutoff);
    const auto run = build_accordion({-1, 1}, jumps, [](const Arch& a) { return a.L < -2.0 && a.R > 2.0; });
    return std::log(run.final.width());
}

TestReport markov_pair(const SuiteOptions& o, const RandomStream& base, bool self)
{
    const double cutoff = o.resolution / 10.0;
    std::vector<double> o1;
    std::vector<double> o2;
    for (std::size_t i = 0; i < o.n; ++i) {
        const RandomStream gaps = base.split(i).split(1);
        o1.push_back(gap_statistic(gaps, 0, cutoff));
        // The self-test pairs O1 with O2 of an unrelated root.
        const RandomStream other = self ? base.split(o.n + i).split(1) : gaps;
        o2.push_back(gap_statistic(other, 1, cutoff));
    }
    const auto c = pearson(o1, o2);
    TestReport r;
    r.name = "markov";
    r.sample_sizes = {o.n};
    r.statistic = c.r;
    r.p_value = c.p_value;
    r.alpha = o.alpha;
    r.passed = std::abs(c.r) < 0.03;
    r.seed = o.seed;
    return r;
}

TestReport run_mode(InvarianceMode mode, const SuiteOptions& o, bool self)
{
    const RandomStream base(o.seed);
    const RandomStream a = base.split(Tag::first);
    const RandomStream b = base.split(self ? Tag::self : Tag::second);
    switch (mode) {
    case InvarianceMode::mobius: {
        if (!self) {
            return mobius_test(MobiusSampler::markov, o);
        }
        std::size_t misses = 0;
        return ks_family("mobius", located_scalars(MobiusSampler::markov, o, a, misses),
                         located_scalars(MobiusSampler::markov, o, b, misses), o);
    }
    case InvarianceMode::reversibility: {
        const auto fwd = reversibility_pairs(false, o, a);
        const auto bwd = reversibility_pairs(self ? false : true, o, b);
        const auto e = energy_test(fwd, bwd, o.permutations, base.split(Tag::permute));
        TestReport r;
        r.name = "reversibility";
        r.sample_sizes = {fwd.size(), bwd.size()};
        r.statistic = e.statistic;
        r.p_value = e.p_value;
        r.alpha = o.alpha;
        r.passed = e.p_value > o.alpha;
        r.seed = o.seed;
        r.details["height"] = o.height;
        r.details["permutations"] = e.permutations;
        return r;
    }
    case InvarianceMode::target: {
        auto r = ks_family("target", target_scalars(false, o, a), target_scalars(!self, o, b), o);
        r.details["target"] = o.target;
        return r;
    }
    default:
        return markov_pair(o, a, self);
    }
}

} // namespace

TestReport invariance_suite(InvarianceMode mode, const SuiteOptions& options)
{
    require_samples(options.n);
    return run_mode(mode, options, false);
}

TestReport mobius_test(MobiusSampler sampler, const SuiteOptions& options)
{
    require_samples(options.n);
    const RandomStream base(options.seed);
    std::size_t misses = 0;
    const Columns located = located_scalars(sampler, options, base.split(Tag::first), misses);
    const Columns reference = root_scalars(options.n, base.split(Tag::second));
    const char* names[] = {"mobius", "mobius-farey", "mobius-corrupted"};
    TestReport r = ks_family(names[static_cast<int>(sampler)], located, reference, options);
    r.details["located_misses"] = static_cast<double>(misses);
    r.details["resolution"] = options.resolution;
    return r;
}

TestReport null_calibration(InvarianceMode mode, const SuiteOptions& options, int repetitions)
{
    require_samples(options.n);
    int rejected = 0;
    for (int k = 0; k < repetitions; ++k) {
        SuiteOptions o = options;
        o.seed = RandomStream(options.seed).split(static_cast<std::uint64_t>(k)).next_u64();
        const TestReport rep = run_mode(mode, o, true);
        rejected += rep.p_value.value_or(1.0) < options.alpha ? 1 : 0;
    }
    TestReport r;
    r.name = std::string("null-") + to_string(mode);
    r.sample_sizes = {options.n, static_cast<std::size_t>(repetitions)};
    r.statistic = static_cast<double>(rejected) / repetitions;
    r.alpha = options.alpha;
    r.passed = r.statistic <= 2.0 * options.alpha;
    r.seed = options.seed;
    r.details["rejections"] = rejected;
    return r;
}

//---------------------------------------------------------------------------//

CoverageProfile coverage_profile(const Chord& chord, const std::vector<double>& scales, int samples,
                                 std::uint64_t seed, int first_bin, int last_bin)
{
    if (scales.empty() || !std::is_sorted(scales.begin(), scales.end(), std::greater<>())) {
        throw PreconditionError("coverage scales must be decreasing");
    }
    if (!(chord.from >= 0.0 && chord.to < 1.0 && chord.from < chord.to)) {
        throw PreconditionError("chord must lie inside the disk");
    }
    CoverageProfile prof;
    prof.scales = scales;
    prof.first_bin = first_bin;
    prof.last_bin = last_bin;
    prof.uncovered.assign(scales.size(), 0.0);
    prof.dyadic.assign(scales.size(), std::vector<double>(last_bin - first_bin + 1, 0.0));

    EngineOptions engine;
    engine.jump_cutoff = scales.back() / 10.0;
    const GapFilter on_chord = [chord](const Gap& g) { return gap_meets_chord(g, chord); };
    const RandomStream base(seed);
    for (int s = 0; s < samples; ++s) {
        const RandomStream stream = base.split(static_cast<std::uint64_t>(s));
        RandomStream root_stream = stream.split(0);
        const IdealPolygon root = sample_p0(root_stream);
        double previous = INFINITY;
        for (std::size_t k = 0; k < scales.size(); ++k) {
            engine.resolution = scales[k];
            const Tiling t = grow_tiling(Shape::triangle, root, stream.split(1), engine, on_chord);
            double covered = 0.0;
            for (const auto& p : t.polygons) {
                const auto tr = chord_trace(p, chord);
                if (!tr) {
                    continue;
                }
                const double len = (*tr)[1] - (*tr)[0];
                covered += len;
                const int n = static_cast<int>(std::floor(-std::log2(len)));
                if (n >= first_bin && n <= last_bin) {
                    prof.dyadic[k][n - first_bin] += 1.0 / samples;
                }
            }
            prof.max_trace_sum = std::max(prof.max_trace_sum, covered);
            double uncovered = chord.length() - covered;
            // Summation rounding, not geometry.
            if (uncovered < 1e-12 * chord.length()) {
                uncovered = 0.0;
            }
            prof.monotone = prof.monotone && uncovered <= previous;
            previous = uncovered;
            prof.uncovered[k] += uncovered / samples;
        }
    }
    return prof;
}

TestReport coverage_report(int samples, std::uint64_t seed)
{
    const Chord chord;
    const std::vector<double> scales{1e-2, 1e-3, 1e-4};
    const CoverageProfile prof = coverage_profile(chord, scales, samples, seed);
    TestReport r;
    r.name = "coverage";
    r.sample_sizes = {static_cast<std::size_t>(samples)};
    r.statistic = prof.uncovered.back();
    bool decreasing = true;
    for (std::size_t k = 0; k < scales.size(); ++k) {
        r.details["uncovered_" + std::to_string(k)] = prof.uncovered[k];
        if (k > 0) {
            decreasing = decreasing && prof.uncovered[k] < prof.uncovered[k - 1];
        }
    }
    r.details["max_trace_sum"] = prof.max_trace_sum;
    r.passed = decreasing && prof.monotone && prof.uncovered.back() < 0.05 &&
               prof.max_trace_sum <= chord.length() * (1 + 1e-12);
    r.seed = seed;
    return r;
}

TestReport dyadic_report(int samples, std::uint64_t seed)
{
    const CoverageProfile prof = coverage_profile(Chord{}, {std::ldexp(1.0, -14)}, samples, seed);
    const auto& counts = prof.dyadic.front();
    const double hi = *std::max_element(counts.begin(), counts.end());
    const double lo = *std::min_element(counts.begin(), counts.end());
    TestReport r;
    r.name = "dyadic";
    r.sample_sizes = {static_cast<std::size_t>(samples)};
    r.statistic = lo > 0.0 ? hi / lo : INFINITY;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        r.details["bin_" + std::to_string(prof.first_bin + static_cast<int>(k))] = counts[k];
    }
    r.passed = r.statistic <= 3.0;
    r.seed = seed;
    return r;
}

//---------------------------------------------------------------------------//

std::vector<double> dyadic_scales(int first_exp, int last_exp)
{
    std::vector<double> s;
    for (int e = first_exp; e <= last_exp; ++e) {
        s.push_back(std::ldexp(1.0, -e));
    }
    return s;
}

std::vector<double> accordion_range(RandomStream stream, double cutoff)
{
    PoissonJumps jumps(stream, cutoff);
    const auto run = build_accordion({-1, 1}, jumps, [](const Arch& a) { return a.R > 10.0; });
    std::vector<double> out{1.0};
    for (const auto& a : run.arches) {
        if (a.R <= 10.0) {
            out.push_back(a.R);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

TestReport slope_report(std::string name, const std::vector<double>& scales, const std::vector<double>& mean_counts,
                        int samples, std::uint64_t seed)
{
    const SlopeResult fit = fit_loglog(scales, mean_counts);
    TestReport r;
    r.name = std::move(name);
    r.sample_sizes = {static_cast<std::size_t>(samples)};
    r.statistic = fit.slope;
    r.slope = fit.slope;
    r.slope_stderr = fit.stderr_;
    r.seed = seed;
    return r;
}

} // namespace

TestReport range_dimension_report(int samples, std::uint64_t seed)
{
    const auto scales = dyadic_scales(4, 12);
    std::vector<double> mean(scales.size(), 0.0);
    std::size_t points = 0;
    for (int s = 0; s < samples; ++s) {
        const auto range = accordion_range(RandomStream(seed).split(static_cast<std::uint64_t>(s)), 1e-12);
        points += range.size();
        const auto fit = boxdim_estimate(range, scales);
        for (std::size_t k = 0; k < scales.size(); ++k) {
            mean[k] += fit.counts[k] / samples;
        }
    }
    TestReport r = slope_report("dimension-range", scales, mean, samples, seed);
    r.details["points"] = static_cast<double>(points);
    r.passed = r.statistic <= 0.25;
    return r;
}

TestReport boundary_dimension_report(int samples, std::uint64_t seed)
{
    const auto scales = dyadic_scales(4, 12);
    EngineOptions engine;
    engine.resolution = scales.back() / 2.0;
    std::vector<double> mean(scales.size(), 0.0);
    for (int s = 0; s < samples; ++s) {
        const Tiling t = sample_disk_triangulation(RandomStream(seed).split(static_cast<std::uint64_t>(s)).next_u64(),
                                                   engine);
        const auto pts = edge_points(t.polygons, scales.back() / 4.0);
        const auto fit = boxdim_estimate(pts, scales);
        for (std::size_t k = 0; k < scales.size(); ++k) {
            mean[k] += fit.counts[k] / samples;
        }
    }
    TestReport r = slope_report("dimension-boundary", scales, mean, samples, seed);
    const std::size_t last = scales.size() - 1;
    r.details["finest_local_slope"] = std::log2(mean[last] / mean[last - 1]);
    r.passed = std::abs(r.statistic - 1.0) <= 0.15;
    return r;
}

TestReport dimension_report(int samples, std::uint64_t seed)
{
    const TestReport range = range_dimension_report(samples, seed);
    const TestReport boundary = boundary_dimension_report(samples, seed);
    TestReport r;
    r.name = "dimension";
    r.sample_sizes = {static_cast<std::size_t>(samples)};
    r.statistic = boundary.statistic;
    r.slope = boundary.slope;
    r.slope_stderr = boundary.slope_stderr;
    r.details["range_slope"] = *range.slope;
    r.details["range_slope_stderr"] = *range.slope_stderr;
    r.passed = range.passed && boundary.passed;
    r.seed = seed;
    return r;
}

//---------------------------------------------------------------------------//

TestReport duality_report(std::size_t n, std::uint64_t seed)
{
    RandomStream rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // Three distinct points on the line, spread over several decades.
        std::array<double, 3> x{};
        for (auto& v : x) {
            v = std::tan(kPi * (rng.uniform_open() - 0.5));
        }
        std::sort(x.begin(), x.end());
        if (!(x[0] < x[1] && x[1] < x[2])) {
            continue;
        }
        // Both placements of w outside [u, v].
        const auto d = rng.coin() ? triple_density_and_duality(x[0], x[1], x[2])
                                  : triple_density_and_duality(x[1], x[2], x[0]);
        worst = std::max(worst, d.residual);
    }
    TestReport r;
    r.name = "duality";
    r.sample_sizes = {n};
    r.statistic = worst;
    r.alpha = 0.0;
    r.passed = worst < 1e-12;
    r.seed = seed;
    return r;
}

TestReport quadrangulation_report(std::size_t n, std::uint64_t seed)
{
    const RandomStream base(seed);
    const double cutoff = 1e-3;
    const double y0 = cutoff / (2.0 + cutoff);

    // Square accordions restarted once the arch is large; each square is
    // re-normalized against the arch it was attached to.
    double residual = 0.0;
    std::vector<double> y2;
    PoissonJumps jumps(base.split(0), cutoff);
    Arch arch;
    while (y2.size() < n) {
        SquareJump j;
        try {
            j = rho4_pair(jumps.next().x);
        } catch (const DegenerateError&) {
            continue;
        }
        const SquareStep step = apply_square_jump(arch, j);
        auto norm = [&](double p) { return 2.0 * (p - arch.L) / arch.width() - 1.0; };
        const double p1 = step.kind == SquareKind::II ? step.square[3] : step.square[step.kind == SquareKind::I1 ? 0 : 2];
        const double p2 = step.kind == SquareKind::II ? step.square[0] : step.square[step.kind == SquareKind::I1 ? 1 : 3];
        const double x1 = norm(p1);
        const double x2 = norm(p2);
        residual = std::max(residual, square_relation_residual(x1, x2));
        y2.push_back((x2 - 1.0) / (x2 + 1.0));
        arch = step.arch.width() > 1e8 ? Arch{} : step.arch;
    }

    // Reference: log-uniform y on (2 y0, 2 / y0) by rejection.
    const ZetaInterval outer(-1.0, 1.0, Side::outside);
    RandomStream ref_stream = base.split(1);
    std::vector<double> ref;
    while (ref.size() < n) {
        const double y = outer.coordinate(outer.sample(ref_stream, y0 / 4.0));
        if (y > 2.0 * y0 && y < 2.0 / y0) {
            ref.push_back(y);
        }
    }
    const KsResult ks = ks_two_sample(y2, ref);

    // Type-II squares per unit of waiting time.
    PoissonJumps timed(base.split(2), cutoff);
    const int units = 10000;
    std::vector<long> counts(units, 0);
    for (double t = 0.0;;) {
        const auto ev = timed.next();
        t += ev.wait;
        if (t >= units) {
            break;
        }
        try {
            if (rho4_pair(ev.x).kind == SquareKind::II) {
                ++counts[static_cast<std::size_t>(t)];
            }
        } catch (const DegenerateError&) {
        }
    }
    const auto gof = poisson_gof(counts, type_two_mass());

    TestReport r;
    r.name = "quadrangulation";
    r.sample_sizes = {n, static_cast<std::size_t>(units)};
    r.statistic = residual;
    const auto adjusted = holm_adjust({ks.p_value, gof.p_value});
    r.p_value = std::min(adjusted[0], adjusted[1]);
    r.details["relation_residual"] = residual;
    r.details["x2_ks_p"] = ks.p_value;
    r.details["type_two_gof_p"] = gof.p_value;
    r.alpha = 0.01;
    r.passed = residual < 1e-10 && ks.p_value > 0.01 && gof.p_value > 0.01;
    r.seed = seed;
    return r;
}

} // namespace hyplane
