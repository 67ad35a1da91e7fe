#include "hyplane/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hyplane/errors.hpp"
#include "hyplane/io.hpp"
#include "hyplane/suite.hpp"

namespace hyplane {

namespace {

constexpr int kUsage = 1;
constexpr int kFailedVerdict = 2;

struct SampleArgs {
    std::string kind;
    std::uint64_t seed = 1;
    double resolution = 1e-3;
    std::optional<double> jump_cutoff;
    std::string out;
    std::optional<double> thin;
};

struct RenderArgs {
    std::string in;
    std::string svg;
    int width = 800;
    std::string model = "disk";
};

struct StatsArgs {
    std::string mode;
    std::optional<std::size_t> n;
    std::uint64_t seed = 1;
    double alpha = kDefaultAlpha;
    bool json = false;
};

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
        throw Error("cannot write " + path);
    }
}

int do_sample(const SampleArgs& a, std::ostream& out)
{
    Tiling t;
    if (a.kind == "farey") {
        t = farey_random(a.seed, a.resolution);
    } else {
        EngineOptions opts;
        opts.resolution = a.resolution;
        opts.jump_cutoff = a.jump_cutoff.value_or(0.0);
        t = a.kind == "tri" ? sample_disk_triangulation(a.seed, opts) : sample_disk_quadrangulation(a.seed, opts);
    }
    if (a.thin) {
        t = thin(t, *a.thin, RandomStream(a.seed).split(2));
    }
    emit(serialize_tiling(t), a.out, out);
    return 0;
}

int do_render(const RenderArgs& a, std::ostream& out)
{
    SvgOptions opts;
    opts.width = a.width;
    opts.model = a.model == "disk" ? Model::disk : Model::halfplane;
    emit(render_svg(read_tiling(a.in), opts), a.svg, out);
    return 0;
}

int do_stats(const StatsArgs& a, std::ostream& out)
{
    TestReport r;
    if (a.mode == "coverage") {
        r = coverage_report(static_cast<int>(a.n.value_or(50)), a.seed);
    } else if (a.mode == "dimension") {
        r = dimension_report(static_cast<int>(a.n.value_or(20)), a.seed);
    } else if (a.mode == "duality") {
        r = duality_report(a.n.value_or(10000), a.seed);
    } else {
        SuiteOptions opts;
        opts.n = a.n.value_or(10000);
        opts.seed = a.seed;
        opts.alpha = a.alpha;
        r = invariance_suite(invariance_mode_from_string(a.mode), opts);
    }
    if (a.json) {
        out << r.to_json_line() << "\n";
    } else {
        out << r.name << ": statistic " << r.statistic;
        if (r.p_value) {
            out << ", p " << *r.p_value;
        }
        if (r.slope) {
            out << ", slope " << *r.slope << " +- " << *r.slope_stderr;
        }
        out << " -> " << (r.passed ? "pass" : "fail") << "\n";
    }
    return r.passed ? 0 : kFailedVerdict;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Random Markovian tilings of the hyperbolic plane", "hyplane"};
    app.require_subcommand(1);

    SampleArgs sample;
    auto* s = app.add_subcommand("sample", "Sample a tiling and write it as JSON");
    s->add_option("kind", sample.kind, "tri, quad or farey")->required()->check(CLI::IsMember({"tri", "quad", "farey"}));
    s->add_option("--seed", sample.seed, "Random seed");
    s->add_option("--resolution", sample.resolution, "Smallest Euclidean diameter kept")
        ->check(CLI::PositiveNumber);
    s->add_option("--jump-cutoff", sample.jump_cutoff, "Jumps with |x| <= 1 + cutoff are dropped (default resolution/10)")
        ->check(CLI::PositiveNumber);
    s->add_option("--out", sample.out, "Output path (default stdout)");
    s->add_option("--thin", sample.thin, "Keep each polygon with this probability")->check(CLI::Range(0.0, 1.0));

    RenderArgs render;
    auto* r = app.add_subcommand("render", "Render a tiling document as SVG");
    r->add_option("--in", render.in, "Tiling JSON")->required();
    r->add_option("--svg", render.svg, "Output path (default stdout)");
    r->add_option("--width", render.width, "Width in pixels")->check(CLI::PositiveNumber);
    r->add_option("--model", render.model, "disk or halfplane")->check(CLI::IsMember({"disk", "halfplane"}));

    StatsArgs stats;
    auto* st = app.add_subcommand("stats", "Run a statistical check");
    st->add_option("mode", stats.mode, "Check to run")
        ->required()
        ->check(CLI::IsMember({"mobius", "reversibility", "target", "markov", "coverage", "dimension", "duality"}));
    st->add_option("--n", stats.n, "Sample count")->check(CLI::PositiveNumber);
    st->add_option("--seed", stats.seed, "Random seed");
    st->add_option("--alpha", stats.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    st->add_flag("--json", stats.json, "Emit the report as a JSON line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (s->parsed()) {
            return do_sample(sample, out);
        }
        if (r->parsed()) {
            return do_render(render, out);
        }
        return do_stats(stats, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace hyplane
