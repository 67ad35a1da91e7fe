#include "hyplane/tiling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <string>
#include <thread>

#include "hyplane/errors.hpp"
#include "hyplane/measures.hpp"
#include "hyplane/ngon.hpp"

namespace hyplane {

const char* to_string(TilingKind kind)
{
    switch (kind) {
    case TilingKind::markov_triangles:
        return "markov-triangles";
    case TilingKind::farey:
        return "farey";
    default:
        return "markov-squares";
    }
}

TilingKind tiling_kind_from_string(std::string_view name)
{
    if (name == "markov-triangles") {
        return TilingKind::markov_triangles;
    }
    if (name == "farey") {
        return TilingKind::farey;
    }
    if (name == "markov-squares") {
        return TilingKind::markov_squares;
    }
    throw ParseError("unknown tiling kind '" + std::string(name) + "'");
}

unsigned default_threads()
{
    if (const char* env = std::getenv("HYPLANE_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) {
            return static_cast<unsigned>(n);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body)
{
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            body(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }
}

// Polygon from half-plane feet mapped into the disk; nullopt when degenerate.
template <std::size_t N>
std::optional<IdealPolygon> disk_polygon(const std::array<BoundaryPoint, N>& pts)
{
    try {
        return IdealPolygon(std::span<const BoundaryPoint>(pts.data(), N));
    } catch (const DegenerateError&) {
        return std::nullopt;
    } catch (const OrientationError&) {
        // Rounding can swap feet that are a few ulps apart.
        return std::nullopt;
    }
}

} // namespace

GapFill fill_gap(const GapTask& task, Shape shape, const EngineOptions& options, const GapFilter& filter)
{
    GapFill out;
    const double delta = options.resolution;
    const Gap& gap = task.gap;
    if (gap.diameter_bound() < delta || (filter && !filter(gap))) {
        return out;
    }
    const MobiusMap back = gap_normalizer(gap).inverse();
    auto foot = [&](double x) { return back(BoundaryPoint::on_line(x)); };

    PoissonJumps source(task.stream.split(0), options.effective_cutoff(), options.law);
    Arch arch{-1.0, 1.0};
    BoundaryPoint left = gap.to;
    BoundaryPoint right = gap.from;
    std::uint64_t side_index = 0;
    std::uint64_t jumps = 0;

    auto emit_side = [&](const BoundaryPoint& a, const BoundaryPoint& b) {
        const Gap side{a, b};
        const std::uint64_t j = side_index++;
        if (side.diameter_bound() < delta || (filter && !filter(side))) {
            return;
        }
        out.children.push_back({side, task.stream.split(j + 1)});
    };
    auto emit_polygon = [&](const std::optional<IdealPolygon>& poly) {
        if (!poly) {
            ++out.degenerate;
        } else if (poly->euclidean_diameter() >= delta) {
            out.polygons.push_back(*poly);
        }
    };

    while (true) {
        const Gap rest{right, left};
        if (rest.diameter_bound() < delta || (filter && !filter(rest))) {
            break;
        }
        if (jumps >= options.max_jumps) {
            out.budget_exceeded = true;
            break;
        }
        const double x = source.next().x;
        ++jumps;
        if (shape == Shape::triangle) {
            const JumpStep step = apply_jump(arch, x);
            if (x > 1.0) {
                const BoundaryPoint grown = foot(step.arch.R);
                emit_polygon(disk_polygon<3>({left, right, grown}));
                emit_side(right, grown);
                right = grown;
            } else {
                const BoundaryPoint grown = foot(step.arch.L);
                emit_polygon(disk_polygon<3>({grown, left, right}));
                emit_side(grown, left);
                left = grown;
            }
            arch = step.arch;
            continue;
        }

        SquareJump jump;
        try {
            jump = rho4_pair(x);
        } catch (const DegenerateError&) {
            continue;
        }
        const SquareStep step = apply_square_jump(arch, jump);
        const BoundaryPoint p1 = foot(step.kind == SquareKind::II ? step.square[3] : step.square[step.kind == SquareKind::I1 ? 0 : 2]);
        const BoundaryPoint p2 = foot(step.kind == SquareKind::II ? step.square[0] : step.square[step.kind == SquareKind::I1 ? 1 : 3]);
        switch (step.kind) {
        case SquareKind::I2:
            emit_polygon(disk_polygon<4>({left, right, p1, p2}));
            emit_side(right, p1);
            emit_side(p1, p2);
            right = p2;
            break;
        case SquareKind::I1:
            emit_polygon(disk_polygon<4>({p1, p2, left, right}));
            emit_side(p1, p2);
            emit_side(p2, left);
            left = p1;
            break;
        case SquareKind::II:
            emit_polygon(disk_polygon<4>({p2, left, right, p1}));
            emit_side(right, p1);
            emit_side(p2, left);
            left = p2;
            right = p1;
            break;
        }
        arch = step.arch;
    }
    return out;
}

std::vector<GapTask> root_gaps(const IdealPolygon& root, const RandomStream& stream)
{
    const auto disk = root.to(Model::disk);
    const std::size_t n = disk.size();
    std::vector<GapTask> tasks;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t a = n == 3 ? (k + 1) % 3 : k;
        const std::size_t b = (a + 1) % n;
        tasks.push_back({Gap{disk[a], disk[b]}, stream.split(k)});
    }
    return tasks;
}

Tiling grow_tiling(Shape shape, const IdealPolygon& root, const RandomStream& gap_stream,
                   const EngineOptions& options, const GapFilter& filter)
{
    if (!(options.resolution > 0.0)) {
        throw PreconditionError("resolution must be positive");
    }
    Tiling tiling;
    tiling.kind = shape == Shape::triangle ? TilingKind::markov_triangles : TilingKind::markov_squares;
    tiling.meta.resolution = options.resolution;
    tiling.meta.jump_cutoff = options.effective_cutoff();
    tiling.polygons.push_back(root.to(Model::disk));

    const unsigned threads = options.threads > 0 ? options.threads : default_threads();
    std::vector<GapTask> wave = root_gaps(root, gap_stream);
    while (!wave.empty()) {
        std::vector<GapFill> fills(wave.size());
        parallel_for(wave.size(), threads,
                     [&](std::size_t i) { fills[i] = fill_gap(wave[i], shape, options, filter); });
        std::vector<GapTask> next;
        for (auto& f : fills) {
            tiling.polygons.insert(tiling.polygons.end(), f.polygons.begin(), f.polygons.end());
            next.insert(next.end(), f.children.begin(), f.children.end());
            tiling.meta.degenerate_skipped += f.degenerate;
            tiling.meta.budget_exceeded = tiling.meta.budget_exceeded || f.budget_exceeded;
        }
        wave = std::move(next);
    }
    tiling.meta.polygon_count = tiling.polygons.size();
    return tiling;
}

Tiling sample_disk_triangulation(std::uint64_t seed, const EngineOptions& options, const GapFilter& filter)
{
    const RandomStream rng(seed);
    RandomStream root_stream = rng.split(0);
    const IdealPolygon root = sample_p0(root_stream);
    Tiling t = grow_tiling(Shape::triangle, root, rng.split(1), options, filter);
    t.meta.seed = seed;
    return t;
}

Tiling sample_disk_quadrangulation(std::uint64_t seed, const EngineOptions& options, const GapFilter& filter)
{
    const RandomStream rng(seed);
    RandomStream root_stream = rng.split(0);
    const IdealPolygon root = sample_p0_square(root_stream);
    Tiling t = grow_tiling(Shape::square, root, rng.split(1), options, filter);
    t.meta.seed = seed;
    return t;
}

std::optional<IdealPolygon> locate(Shape shape, const IdealPolygon& root, const RandomStream& gap_stream, Complex z,
                                   const EngineOptions& options)
{
    const Complex w = to_disk(z, root.model());
    const IdealPolygon disk_root = root.to(Model::disk);
    if (polygon_contains(disk_root, w)) {
        return disk_root;
    }
    const GapFilter holds_z = [w](const Gap& g) { return g.contains(w); };
    std::vector<GapTask> frontier;
    for (auto& task : root_gaps(root, gap_stream)) {
        if (holds_z(task.gap)) {
            frontier.push_back(task);
        }
    }
    while (!frontier.empty()) {
        const GapTask task = frontier.back();
        frontier.pop_back();
        GapFill fill = fill_gap(task, shape, options, holds_z);
        for (const auto& p : fill.polygons) {
            if (polygon_contains(p, w)) {
                return p;
            }
        }
        frontier.insert(frontier.end(), fill.children.begin(), fill.children.end());
    }
    return std::nullopt;
}

std::optional<IdealPolygon> triangle_containing(const Tiling& tiling, Complex z)
{
    if (!(std::norm(z) < 1.0)) {
        throw PreconditionError("query point must lie in the open disk");
    }
    for (const auto& p : tiling.polygons) {
        if (polygon_contains(p, z)) {
            return p;
        }
    }
    return std::nullopt;
}

Tiling thin(const Tiling& tiling, double p, RandomStream rng)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw PreconditionError("thinning probability must lie in [0, 1]");
    }
    Tiling out;
    out.kind = tiling.kind;
    out.meta = tiling.meta;
    for (const auto& poly : tiling.polygons) {
        if (rng.uniform() < p) {
            out.polygons.push_back(poly);
        }
    }
    out.meta.thin_p = p;
    out.meta.polygon_count = out.polygons.size();
    return out;
}

//---------------------------------------------------------------------------//
// Farey
//---------------------------------------------------------------------------//

std::vector<IdealPolygon> farey_closure(const IdealPolygon& tau, const FareyOptions& options)
{
    if (tau.size() != 3) {
        throw PreconditionError("Farey closure starts from a triangle");
    }
    if (!(options.resolution > 0.0) && options.max_generation < 0) {
        throw PreconditionError("Farey closure needs a resolution or a generation limit");
    }
    struct Pending {
        BoundaryPoint a;
        BoundaryPoint b;
        BoundaryPoint opposite;
        int generation;
    };
    std::vector<IdealPolygon> out{tau};
    std::deque<Pending> queue;
    for (std::size_t k = 0; k < 3; ++k) {
        queue.push_back({tau[k], tau[(k + 1) % 3], tau[(k + 2) % 3], 1});
    }
    while (!queue.empty()) {
        const Pending p = queue.front();
        queue.pop_front();
        if (options.max_generation >= 0 && p.generation > options.max_generation) {
            continue;
        }
        const Gap beyond{p.a, p.b};
        if (beyond.diameter_bound() < options.resolution) {
            continue;
        }
        const BoundaryPoint d = reflect_across(p.opposite, p.a, p.b);
        std::optional<IdealPolygon> tri;
        try {
            tri = IdealPolygon{p.a, d, p.b};
        } catch (const DegenerateError&) {
            continue;
        }
        if (tri->euclidean_diameter() >= options.resolution) {
            out.push_back(*tri);
        }
        queue.push_back({p.a, d, p.b, p.generation + 1});
        queue.push_back({d, p.b, p.a, p.generation + 1});
    }
    return out;
}

Tiling farey_ref(const IdealPolygon& tau, double resolution)
{
    if (!(resolution > 0.0)) {
        throw PreconditionError("resolution must be positive");
    }
    Tiling t;
    t.kind = TilingKind::farey;
    for (const auto& p : farey_closure(tau.to(Model::disk), {resolution, -1})) {
        t.polygons.push_back(p);
    }
    t.meta.resolution = resolution;
    t.meta.polygon_count = t.polygons.size();
    return t;
}

Tiling farey_random(std::uint64_t seed, double resolution)
{
    RandomStream root = RandomStream(seed).split(0);
    Tiling t = farey_ref(sample_p0(root), resolution);
    t.meta.seed = seed;
    t.meta.randomized = true;
    return t;
}

IdealPolygon farey_locate(const IdealPolygon& root, Complex z, int max_steps)
{
    IdealPolygon current = root.to(Model::disk);
    const Complex w = to_disk(z, root.model());
    for (int step = 0; step < max_steps; ++step) {
        if (polygon_contains(current, w)) {
            return current;
        }
        bool moved = false;
        for (std::size_t k = 0; k < 3 && !moved; ++k) {
            const Gap beyond{current[k], current[(k + 1) % 3]};
            if (beyond.contains(w)) {
                const BoundaryPoint d = reflect_across(current[(k + 2) % 3], beyond.from, beyond.to);
                current = IdealPolygon{beyond.from, d, beyond.to};
                moved = true;
            }
        }
        if (!moved) {
            throw PreconditionError("point lies on an edge of the Farey tiling");
        }
    }
    throw PreconditionError("Farey walk did not reach the point");
}

//---------------------------------------------------------------------------//
// Chords and edges
//---------------------------------------------------------------------------//

namespace {

// Parameter t in (-1, 1) where the geodesic (a b) crosses the line through 0
// in direction e^{i angle}; nullopt if it does not cross transversally.
std::optional<double> crossing(const BoundaryPoint& a, const BoundaryPoint& b, double angle)
{
    const Complex ra = std::polar(1.0, a.disk_angle() - angle);
    const Complex rb = std::polar(1.0, b.disk_angle() - angle);
    const EuclideanCurve c = disk_geodesic(ra, rb);
    if (c.is_line) {
        if (std::abs(c.direction.imag()) < 1e-15) {
            return std::nullopt;
        }
        return 0.0;
    }
    const double re = c.center.real();
    if (std::abs(re) <= 1.0) {
        return std::nullopt;
    }
    return 1.0 / (re + std::copysign(std::sqrt(re * re - 1.0), re));
}

// Intervals of the chord line where `inside` holds, from the given breakpoints.
template <class Pred>
std::vector<std::array<double, 2>> line_intervals(std::vector<double> cuts, double angle, Pred inside)
{
    cuts.push_back(-1.0);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::array<double, 2>> out;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        if (!(cuts[k + 1] > cuts[k])) {
            continue;
        }
        const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
        if (inside(std::polar(mid, angle))) {
            if (!out.empty() && out.back()[1] == cuts[k]) {
                out.back()[1] = cuts[k + 1];
            } else {
                out.push_back({cuts[k], cuts[k + 1]});
            }
        }
    }
    return out;
}

} // namespace

std::optional<std::array<double, 2>> chord_trace(const IdealPolygon& poly, const Chord& chord)
{
    const IdealPolygon d = poly.to(Model::disk);
    std::vector<double> cuts;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (auto t = crossing(d[k], d[(k + 1) % d.size()], chord.angle)) {
            cuts.push_back(*t);
        }
    }
    const auto pieces = line_intervals(cuts, chord.angle, [&](Complex w) { return polygon_contains(d, w); });
    if (pieces.empty()) {
        return std::nullopt;
    }
    const double lo = std::max(pieces.front()[0], chord.from);
    const double hi = std::min(pieces.back()[1], chord.to);
    if (!(hi > lo)) {
        return std::nullopt;
    }
    return std::array<double, 2>{lo, hi};
}

bool gap_meets_chord(const Gap& gap, const Chord& chord)
{
    const Gap d = gap.to_disk();
    std::vector<double> cuts;
    if (auto t = crossing(d.from, d.to, chord.angle)) {
        cuts.push_back(*t);
    }
    for (const auto& piece : line_intervals(cuts, chord.angle, [&](Complex w) { return d.contains(w); })) {
        if (piece[1] > chord.from && piece[0] < chord.to) {
            return true;
        }
    }
    return false;
}

std::vector<std::array<double, 2>> edge_points(const std::vector<IdealPolygon>& polygons, double spacing)
{
    std::vector<std::array<double, 2>> out;
    for (const auto& poly : polygons) {
        const IdealPolygon d = poly.to(Model::disk);
        for (std::size_t k = 0; k < d.size(); ++k) {
            const Complex a = d[k].extended().value;
            const Complex b = d[(k + 1) % d.size()].extended().value;
            const EuclideanCurve c = disk_geodesic(a, b);
            if (c.is_line) {
                const int n = std::max(1, static_cast<int>(std::ceil(2.0 / spacing)));
                for (int i = 0; i <= n; ++i) {
                    const Complex p = a + (b - a) * (static_cast<double>(i) / n);
                    out.push_back({p.real(), p.imag()});
                }
                continue;
            }
            const double t0 = std::arg(a - c.center);
            double sweep = std::arg((b - c.center) / (a - c.center));
            const int n = std::max(1, static_cast<int>(std::ceil(std::abs(sweep) * c.radius / spacing)));
            for (int i = 0; i <= n; ++i) {
                const Complex p = c.center + std::polar(c.radius, t0 + sweep * i / n);
                out.push_back({p.real(), p.imag()});
            }
        }
    }
    return out;
}

} // namespace hyplane
