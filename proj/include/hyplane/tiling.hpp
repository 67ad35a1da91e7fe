#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "hyplane/accordion.hpp"
#include "hyplane/geom.hpp"
#include "hyplane/random.hpp"

namespace hyplane {

enum class TilingKind : std::uint8_t { markov_triangles, farey, markov_squares };

const char* to_string(TilingKind kind);
TilingKind tiling_kind_from_string(std::string_view name);

struct TilingMeta {
    std::uint64_t seed = 0;
    double resolution = 0.0;
    // Zero for the Farey tiling, which has no jumps.
    double jump_cutoff = 0.0;
    std::optional<double> thin_p;
    std::size_t polygon_count = 0;
    std::size_t degenerate_skipped = 0;
    bool budget_exceeded = false;
    bool randomized = false;
};

struct Tiling {
    TilingKind kind = TilingKind::markov_triangles;
    std::vector<IdealPolygon> polygons;
    TilingMeta meta;
};

struct EngineOptions {
    double resolution = 1e-3;
    // Zero means resolution / 10.
    double jump_cutoff = 0.0;
    JumpLaw law = JumpLaw::zeta;
    std::uint64_t max_jumps = kDefaultMaxJumps;
    // Zero means HYPLANE_THREADS, else the hardware concurrency.
    unsigned threads = 0;

    double effective_cutoff() const { return jump_cutoff > 0.0 ? jump_cutoff : resolution / 10.0; }
};

// Worker count from HYPLANE_THREADS, falling back to the hardware.
unsigned default_threads();

enum class Shape : std::uint8_t { triangle, square };

// Gaps failing the filter are neither filled nor recursed into.
using GapFilter = std::function<bool(const Gap&)>;

struct GapTask {
    Gap gap;
    RandomStream stream;
};

struct GapFill {
    std::vector<IdealPolygon> polygons;
    std::vector<GapTask> children;
    std::size_t degenerate = 0;
    bool budget_exceeded = false;
};

/*!
 * Fill one gap with an accordion grown toward the far point of its
 * normalized chart.
 *
 * Jumps come from stream.split(0); the j-th side gap gets stream.split(j+1).
 * The accordion stops once the region above the current arch is smaller
 * than the resolution (or fails the filter). Polygons below the resolution
 * are dropped; side gaps below it are not returned.
 */
GapFill fill_gap(const GapTask& task, Shape shape, const EngineOptions& options, const GapFilter& filter = {});

// Gaps outside a root polygon, gap k between apexes k+1 and k+2 (cyclic)
// for triangles and k, k+1 for squares, on stream.split(k).
std::vector<GapTask> root_gaps(const IdealPolygon& root, const RandomStream& stream);

// Breadth-first assembly from a root; output order is independent of threads.
Tiling grow_tiling(Shape shape, const IdealPolygon& root, const RandomStream& gap_stream,
                   const EngineOptions& options, const GapFilter& filter = {});

// Root from RandomStream(seed).split(0), gaps from split(1).
Tiling sample_disk_triangulation(std::uint64_t seed, const EngineOptions& options, const GapFilter& filter = {});
Tiling sample_disk_quadrangulation(std::uint64_t seed, const EngineOptions& options,
                                   const GapFilter& filter = {});

// Polygon containing z in the tiling grown from root, following only the
// gaps that contain z. Agrees with grow_tiling on the same streams.
std::optional<IdealPolygon> locate(Shape shape, const IdealPolygon& root, const RandomStream& gap_stream, Complex z,
                                   const EngineOptions& options);

std::optional<IdealPolygon> triangle_containing(const Tiling& tiling, Complex z);

Tiling thin(const Tiling& tiling, double p, RandomStream rng);

//---------------------------------------------------------------------------//
// Farey tiling by repeated reflection.
//---------------------------------------------------------------------------//

struct FareyOptions {
    double resolution = 1e-3;
    // Largest reflection generation kept (tau itself is generation 0); -1 for no limit.
    int max_generation = -1;
};

// Reflection closure of tau, in tau's chart, breadth first.
std::vector<IdealPolygon> farey_closure(const IdealPolygon& tau, const FareyOptions& options);

Tiling farey_ref(const IdealPolygon& tau, double resolution);
// Randomized variant with tau drawn from P0 on RandomStream(seed).split(0).
Tiling farey_random(std::uint64_t seed, double resolution);

// Triangle of the Farey tiling of root that contains z (disk chart).
IdealPolygon farey_locate(const IdealPolygon& root, Complex z, int max_steps = 100000);

//---------------------------------------------------------------------------//
// Traces on a chord through the origin.
//---------------------------------------------------------------------------//

// Points t * e^{i angle} for t in [from, to].
struct Chord {
    double angle = 0.0;
    double from = 0.0;
    double to = 0.9;

    double length() const { return to - from; }
};

// Parameter interval of polygon intersected with the chord.
std::optional<std::array<double, 2>> chord_trace(const IdealPolygon& poly, const Chord& chord);
bool gap_meets_chord(const Gap& gap, const Chord& chord);

// Points along every polygon edge at the given Euclidean spacing.
std::vector<std::array<double, 2>> edge_points(const std::vector<IdealPolygon>& polygons, double spacing);

} // namespace hyplane
