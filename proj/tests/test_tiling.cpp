#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <vector>

#include "hyplane/errors.hpp"
#include "hyplane/measures.hpp"
#include "hyplane/stats.hpp"
#include "hyplane/tiling.hpp"

using namespace hyplane;

namespace {

Complex uniform_disk(RandomStream& rng, double radius)
{
    return std::polar(radius * std::sqrt(rng.uniform()), kTwoPi * rng.uniform());
}

bool same_polygons(const std::vector<IdealPolygon>& a, const std::vector<IdealPolygon>& b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t i = 0; i < a[k].size(); ++i) {
            if (a[k][i].angle() != b[k][i].angle()) {
                return false;
            }
        }
    }
    return true;
}

struct Frac {
    long p;
    long q;
    double value() const { return q == 0 ? INFINITY : static_cast<double>(p) / q; }
    bool operator==(const Frac&) const = default;
};

Frac normalized(long p, long q)
{
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
    return {p, q};
}

// Farey triangles by mediants in exact integers, generations 0..max_gen.
std::vector<std::array<Frac, 3>> mediant_triangles(int max_gen)
{
    struct Edge {
        Frac a, b, opposite;
        int gen;
    };
    const Frac zero{0, 1}, one{1, 1}, inf{1, 0};
    std::vector<std::array<Frac, 3>> out{{zero, one, inf}};
    std::deque<Edge> queue{{zero, one, inf, 1}, {one, inf, zero, 1}, {inf, zero, one, 1}};
    while (!queue.empty()) {
        const Edge e = queue.front();
        queue.pop_front();
        if (e.gen > max_gen) {
            continue;
        }
        Frac d = normalized(e.a.p + e.b.p, e.a.q + e.b.q);
        if (d == e.opposite) {
            d = normalized(e.a.p - e.b.p, e.a.q - e.b.q);
        }
        out.push_back({e.a, d, e.b});
        queue.push_back({e.a, d, e.b, e.gen + 1});
        queue.push_back({d, e.b, e.a, e.gen + 1});
    }
    return out;
}

std::array<double, 3> sorted_values(std::array<double, 3> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("sampled triangulation basics")
{
    EngineOptions opts;
    opts.resolution = 1e-2;
    const Tiling t = sample_disk_triangulation(42, opts);
    REQUIRE(t.polygons.size() > 50);
    CHECK(polygon_contains(t.polygons.front(), Complex(0)));
    CHECK(t.meta.polygon_count == t.polygons.size());
    CHECK_FALSE(t.meta.budget_exceeded);
    for (std::size_t k = 1; k < t.polygons.size(); ++k) {
        CHECK(t.polygons[k].euclidean_diameter() >= opts.resolution);
    }

    RandomStream rng(1);
    for (int k = 0; k < 2000; ++k) {
        const Complex z = uniform_disk(rng, 0.999);
        int hits = 0;
        for (const auto& p : t.polygons) {
            hits += polygon_contains(p, z) ? 1 : 0;
        }
        CHECK(hits <= 1);
    }
    CHECK_THROWS_AS(triangle_containing(t, Complex(1.5, 0)), PreconditionError);
}

TEST_CASE("output does not depend on the thread count")
{
    EngineOptions opts;
    opts.resolution = 3e-3;
    opts.threads = 1;
    const Tiling one = sample_disk_triangulation(7, opts);
    opts.threads = 4;
    const Tiling four = sample_disk_triangulation(7, opts);
    CHECK(same_polygons(one.polygons, four.polygons));
    const Tiling other = sample_disk_triangulation(8, opts);
    CHECK_FALSE(same_polygons(one.polygons, other.polygons));

    setenv("HYPLANE_THREADS", "3", 1);
    CHECK(default_threads() == 3);
    unsetenv("HYPLANE_THREADS");
}

TEST_CASE("lazy locate agrees with the full tiling")
{
    EngineOptions opts;
    opts.resolution = 2e-3;
    const std::uint64_t seed = 99;
    const Tiling full = sample_disk_triangulation(seed, opts);
    RandomStream root_stream = RandomStream(seed).split(0);
    const IdealPolygon root = sample_p0(root_stream);
    const RandomStream gaps = RandomStream(seed).split(1);
    RandomStream rng(2);
    int found = 0;
    for (int k = 0; k < 300; ++k) {
        const Complex z = uniform_disk(rng, 0.99);
        const auto lazy = locate(Shape::triangle, root, gaps, z, opts);
        const auto scan = triangle_containing(full, z);
        REQUIRE(lazy.has_value() == scan.has_value());
        if (lazy) {
            ++found;
            CHECK(lazy->same_as(*scan, 1e-14));
        }
    }
    CHECK(found > 200);
}

TEST_CASE("fine tilings cover most of the disk")
{
    EngineOptions opts;
    opts.resolution = 1e-4;
    RandomStream root_stream = RandomStream(5).split(0);
    const IdealPolygon root = sample_p0(root_stream);
    const RandomStream gaps = RandomStream(5).split(1);
    RandomStream rng(3);
    int hits = 0;
    const int n = 1000;
    for (int k = 0; k < n; ++k) {
        hits += locate(Shape::triangle, root, gaps, uniform_disk(rng, 1.0), opts) ? 1 : 0;
    }
    CHECK(static_cast<double>(hits) / n >= 0.95);
}

TEST_CASE("Farey closure matches mediants")
{
    const IdealPolygon tau{BoundaryPoint::on_line(0), BoundaryPoint::on_line(1), BoundaryPoint::at_infinity()};
    const auto tris = farey_closure(tau, {1e-300, 7});
    const auto oracle = mediant_triangles(7);
    REQUIRE(tris.size() == oracle.size());
    REQUIRE(tris.size() == 382);

    long max_den = 0;
    for (std::size_t k = 0; k < tris.size(); ++k) {
        std::array<double, 3> got{};
        std::array<double, 3> want{};
        for (int i = 0; i < 3; ++i) {
            const auto& b = tris[k][i];
            got[i] = b.extended().infinite ? INFINITY : b.real();
            want[i] = oracle[k][i].value();
            max_den = std::max(max_den, oracle[k][i].q);
        }
        got = sorted_values(got);
        want = sorted_values(want);
        for (int i = 0; i < 3; ++i) {
            if (std::isinf(want[i])) {
                CHECK(std::isinf(got[i]));
            } else {
                CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
            }
        }
        // Neighbouring Farey fractions have unit determinant.
        for (int i = 0; i < 3; ++i) {
            const Frac a = oracle[k][i];
            const Frac b = oracle[k][(i + 1) % 3];
            CHECK(std::labs(a.p * b.q - a.q * b.p) == 1);
        }
    }
    CHECK(max_den == 34);
}

TEST_CASE("Farey locate walks to the containing triangle")
{
    const Tiling t = farey_random(12, 1e-3);
    CHECK(t.meta.randomized);
    const IdealPolygon root = t.polygons.front();
    CHECK(polygon_contains(root, Complex(0)));
    RandomStream rng(4);
    for (int k = 0; k < 200; ++k) {
        const Complex z = uniform_disk(rng, 0.95);
        const IdealPolygon walked = farey_locate(root, z);
        CHECK(polygon_contains(walked, z));
        if (const auto scan = triangle_containing(t, z)) {
            CHECK(walked.same_as(*scan, 1e-9));
        }
    }
}

TEST_CASE("thinning")
{
    EngineOptions opts;
    opts.resolution = 5e-3;
    const Tiling t = sample_disk_triangulation(3, opts);
    CHECK(thin(t, 0.0, RandomStream(1)).polygons.empty());
    CHECK(thin(t, 1.0, RandomStream(1)).polygons.size() == t.polygons.size());
    CHECK_THROWS_AS(thin(t, 1.5, RandomStream(1)), PreconditionError);

    const Tiling half = thin(t, 0.5, RandomStream(9));
    REQUIRE(half.meta.thin_p.has_value());
    const double n = static_cast<double>(t.polygons.size());
    const double kept = static_cast<double>(half.polygons.size());
    const auto gof = chi_square_gof({kept, n - kept}, {0.5 * n, 0.5 * n});
    CHECK(gof.p_value > 0.001);
}

TEST_CASE("chord traces")
{
    const Chord chord;
    // The diameter (-1, 1) closes off the lower half; the triangle (1, i, -1) meets the chord only on its edge.
    const IdealPolygon upper{BoundaryPoint::on_disk(0), BoundaryPoint::on_disk(0.5 * kPi), BoundaryPoint::on_disk(kPi)};
    CHECK_FALSE(chord_trace(upper, chord).has_value());
    const IdealPolygon across{BoundaryPoint::on_disk(-0.5), BoundaryPoint::on_disk(0.5),
                              BoundaryPoint::on_disk(kPi)};
    const auto tr = chord_trace(across, chord);
    REQUIRE(tr.has_value());
    CHECK((*tr)[0] == 0.0);
    // Geodesic between e^{-0.5 i} and e^{0.5 i} meets the axis at (1 - sin 0.5) / cos 0.5.
    CHECK((*tr)[1] == doctest::Approx((1 - std::sin(0.5)) / std::cos(0.5)));

    const Gap beyond{BoundaryPoint::on_disk(-0.5), BoundaryPoint::on_disk(0.5)};
    CHECK(gap_meets_chord(beyond, chord));
    const Gap far{BoundaryPoint::on_disk(2.0), BoundaryPoint::on_disk(3.0)};
    CHECK_FALSE(gap_meets_chord(far, chord));

    const auto pts = edge_points({standard_triangle()}, 0.01);
    for (const auto& p : pts) {
        CHECK(std::hypot(p[0], p[1]) <= 1.0 + 1e-12);
    }
    CHECK(pts.size() > 3 * 100);
}
