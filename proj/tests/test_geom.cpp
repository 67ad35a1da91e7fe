#include <doctest.h>

#include <cmath>
#include <random>

#include "hyplane/errors.hpp"
#include "hyplane/geom.hpp"

using namespace hyplane;

namespace {

const Complex I{0.0, 1.0};
const Complex J = std::polar(1.0, 2.0 * kPi / 3.0);

BoundaryPoint line(double x) { return BoundaryPoint::on_line(x); }
BoundaryPoint disk(double a) { return BoundaryPoint::on_disk(a); }
BoundaryPoint inf() { return BoundaryPoint::at_infinity(); }

double angle_gap(double a, double b)
{
    const double d = canonical_angle(a - b);
    return std::min(d, kTwoPi - d);
}

// Random orientation-preserving disk isometry.
MobiusMap random_isometry(std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Complex z0 = std::polar(0.95 * std::sqrt(u(gen)), kTwoPi * u(gen));
    return MobiusMap::disk_isometry(z0, kTwoPi * u(gen));
}

Complex random_interior(std::mt19937_64& gen, double rmax = 0.95)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(rmax * std::sqrt(u(gen)), kTwoPi * u(gen));
}

IdealPolygon random_triangle(std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    std::array<double, 3> a{u(gen), u(gen), u(gen)};
    std::sort(a.begin(), a.end());
    return IdealPolygon::triangle(a[0], a[1], a[2], Model::disk);
}

} // namespace

TEST_CASE("boundary points canonicalize and convert")
{
    CHECK(disk(-kPi / 2).angle() == doctest::Approx(1.5 * kPi));
    CHECK(disk(disk(7.0).angle()).angle() == disk(7.0).angle());
    CHECK(line(0.0).disk_angle() == doctest::Approx(kPi));
    CHECK(line(1.0).disk_angle() == doctest::Approx(1.5 * kPi));
    CHECK(inf().disk_angle() == 0.0);
    CHECK(disk(0.0).to_halfplane().is_infinite());

    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(1e-6, kTwoPi - 1e-6);
    for (int k = 0; k < 1000; ++k) {
        const double a = u(gen);
        CHECK(angle_gap(disk(a).to_halfplane().to_disk().angle(), a) < 1e-12);
    }
    // Increasing reals run anticlockwise.
    const std::array<BoundaryPoint, 3> tri{line(-2.0), line(0.5), line(7.0)};
    CHECK(is_anticlockwise(tri));
}

TEST_CASE("Cayley constant and basic maps")
{
    const Complex zero = MobiusMap::cayley()(I);
    CHECK(std::abs(zero) < 1e-15);
    CHECK(MobiusMap::cayley()(Extended::at_infinity()).value == Complex{1.0});
    CHECK(std::abs(MobiusMap::disk_isometry(0.3, 1.1)(Complex{0.3})) < 1e-15);
    const Complex z{0.2, -0.4};
    CHECK(std::abs(MobiusMap::identity()(z) - z) < 1e-15);
    CHECK_THROWS_AS(MobiusMap(1.0, 2.0, 2.0, 4.0), InvalidMapError);
}

TEST_CASE("maps from triples")
{
    const std::array<BoundaryPoint, 3> std3{line(0.0), line(1.0), inf()};
    const auto id = mobius_from_triples(std3, std3);
    const auto dbl = mobius_from_triples(std3, {line(0.0), line(2.0), inf()});
    const auto shift = mobius_from_triples(std3, {line(1.0), line(2.0), inf()});
    for (Complex z : {Complex{0.3, 2.0}, Complex{-4.0, 0.1}, Complex{10.0, 3.0}}) {
        CHECK(std::abs(id(z) - z) < 1e-12);
        CHECK(std::abs(dbl(z) - 2.0 * z) < 1e-12);
        CHECK(std::abs(shift(z) - (z + 1.0)) < 1e-12);
    }
    CHECK_THROWS_AS(mobius_from_triples(std3, {line(1.0), line(0.0), inf()}), OrientationError);
    CHECK_THROWS_AS(mobius_from_triples(std3, {line(1.0), line(1.0), inf()}), DegenerateError);

    // Cross-chart map hits all three targets.
    const std::array<BoundaryPoint, 3> roots{disk(0.0), disk(2 * kPi / 3), disk(4 * kPi / 3)};
    const auto m = mobius_from_triples(std3, roots);
    CHECK(m.source() == Model::halfplane);
    CHECK(m.target() == Model::disk);
    for (int k = 0; k < 3; ++k) {
        CHECK(angle_gap(m(std3[k]).angle(), roots[k].angle()) < 1e-10);
    }
}

TEST_CASE("group laws and conjugation on random probes")
{
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m1 = random_isometry(gen);
        const auto m2 = random_isometry(gen);
        const auto phi = random_isometry(gen);
        const Complex z = random_interior(gen);
        CHECK(std::abs((m1 * m2)(z) - m1(m2(z))) < 1e-10);
        CHECK(std::abs((m1 * m1.inverse())(z) - z) < 1e-10);
        CHECK(std::norm(m1(z)) < 1.0);

        const auto t1 = random_triangle(gen);
        const auto t2 = random_triangle(gen);
        const std::array<BoundaryPoint, 3> s{t1[0], t1[1], t1[2]};
        const std::array<BoundaryPoint, 3> d{t2[0], t2[1], t2[2]};
        const std::array<BoundaryPoint, 3> ps{phi(s[0]), phi(s[1]), phi(s[2])};
        const std::array<BoundaryPoint, 3> pd{phi(d[0]), phi(d[1]), phi(d[2])};
        const auto lhs = mobius_from_triples(ps, pd);
        const auto rhs = phi * mobius_from_triples(s, d) * phi.inverse();
        const Complex w = random_interior(gen, 0.8);
        CHECK(std::abs(lhs(w) - rhs(w)) < 1e-8);
    }
}

TEST_CASE("polygon containment")
{
    const auto roots = IdealPolygon::triangle(0.0, 2 * kPi / 3, 4 * kPi / 3, Model::disk);
    CHECK(polygon_contains(roots, 0.0));
    CHECK_FALSE(polygon_contains(roots, std::polar(0.99, kPi / 3)));
    const IdealPolygon upper{line(-1.0), line(1.0), inf()};
    CHECK(polygon_contains(upper, 2.0 * I));
    CHECK_FALSE(polygon_contains(upper, 0.5 * I));

    // Independent oracle for the (1, j) edge: orthogonal circle.
    const Complex c{1.0, std::sqrt(3.0)};
    CHECK(std::abs(std::polar(0.99, kPi / 3) - c) < std::sqrt(3.0));

    CHECK_THROWS_AS(IdealPolygon({disk(1.0), disk(0.5), disk(2.0)}), OrientationError);
    CHECK_THROWS_AS(IdealPolygon({disk(1.0), disk(1.0 + 1e-13), disk(2.0)}), DegenerateError);

    std::mt19937_64 gen(5);
    int agree = 0;
    int inside = 0;
    const int n = 10000;
    for (int k = 0; k < n; ++k) {
        const auto t = random_triangle(gen);
        const Complex z = random_interior(gen);
        const auto phi = random_isometry(gen);
        const bool before = polygon_contains(t, z);
        agree += before == polygon_contains(t.mapped(phi), phi(z));
        inside += before;
    }
    CHECK(agree == n);
    CHECK(inside > 100);
}

TEST_CASE("harmonic measure")
{
    CHECK(harmonic_measure(0.0, {disk(0.0), disk(kPi / 2), false}) == doctest::Approx(0.25));
    CHECK(harmonic_measure(0.0, BoundaryArc::whole()) == 1.0);
    CHECK(harmonic_measure(0.5, {disk(0.0), disk(kPi), false}) == doctest::Approx(0.5));

    // Poisson kernel quadrature as an independent oracle.
    const Complex z{0.3, -0.5};
    double sum = 0.0;
    const int steps = 200000;
    const double a = 0.4;
    const double b = 2.9;
    for (int k = 0; k < steps; ++k) {
        const double t = a + (b - a) * (k + 0.5) / steps;
        sum += (1.0 - std::norm(z)) / std::norm(std::polar(1.0, t) - z);
    }
    sum *= (b - a) / steps / kTwoPi;
    CHECK(harmonic_measure(z, {disk(a), disk(b), false}) == doctest::Approx(sum).epsilon(1e-9));

    std::mt19937_64 gen(8);
    for (int k = 0; k < 1000; ++k) {
        const auto t = random_triangle(gen);
        const Complex w = random_interior(gen);
        const auto phi = random_isometry(gen);
        const BoundaryArc arc{t[0], t[1], false};
        const BoundaryArc image{phi(t[0]), phi(t[1]), false};
        CHECK(std::abs(harmonic_measure(w, arc) - harmonic_measure(phi(w), image)) < 1e-9);
    }
}

TEST_CASE("geodesic realization")
{
    const auto curve = Geodesic(disk(0.0), disk(2 * kPi / 3)).realize();
    CHECK(!curve.is_line);
    CHECK(std::abs(curve.center - Complex{1.0, std::sqrt(3.0)}) < 1e-12);
    CHECK(curve.radius == doctest::Approx(std::sqrt(3.0)));
    // Orthogonality to the unit circle: |c|^2 = 1 + r^2.
    CHECK(std::norm(curve.center) == doctest::Approx(1.0 + curve.radius * curve.radius));
    CHECK(std::abs(std::abs(Complex{1.0} - curve.center) - curve.radius) < 1e-10);
    CHECK(std::abs(std::abs(J - curve.center) - curve.radius) < 1e-10);

    const auto diameter = Geodesic(disk(0.0), disk(kPi)).realize();
    CHECK(diameter.is_line);
    CHECK(std::abs(diameter.direction.imag()) < 1e-15);
}

TEST_CASE("gap normalizer")
{
    // Independent oracle: h(w) = S^{-1}(lambda S(w)) with S(w) = (w + 1) / (1 - w).
    auto h = [](double lambda, Complex w) {
        const Complex s = lambda * (w + 1.0) / (1.0 - w);
        return (s - 1.0) / (s + 1.0);
    };

    const auto id = gap_normalizer({line(1.0), line(-1.0)});
    for (Complex z : {Complex{0.3, 2.0}, Complex{-4.0, 0.1}, Complex{1.0, 1.0}}) {
        CHECK(std::abs(id(z) - z) < 1e-12);
    }

    const auto n2 = gap_normalizer({line(2.0), line(-2.0)});
    CHECK(std::abs(n2(Complex{2.0}) - 1.0) < 1e-12);
    CHECK(std::abs(n2(Complex{-2.0}) + 1.0) < 1e-12);
    CHECK(std::abs(n2.derivative(2.0)) == doctest::Approx(1.0));
    // Scan the one-parameter family h_lambda(z / 2) for the derivative pin.
    double best = 0.0;
    double best_err = 1e9;
    for (double lambda = 0.01; lambda < 3.0; lambda += 1e-5) {
        const double eps = 1e-6;
        const double d = std::abs(h(lambda, (2.0 + eps) / 2.0) - h(lambda, (2.0 - eps) / 2.0)) / (2 * eps);
        if (std::abs(d - 1.0) < best_err) {
            best_err = std::abs(d - 1.0);
            best = lambda;
        }
    }
    CHECK(best == doctest::Approx(0.5).epsilon(1e-4));
    for (Complex z : {Complex{0.3, 2.0}, Complex{-4.0, 0.1}, Complex{3.0, 5.0}}) {
        CHECK(std::abs(n2(z) - h(best, z / 2.0)) < 1e-4);
    }

    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 500; ++trial) {
        const auto t = random_triangle(gen);
        const Gap gap{t[1], t[2]};
        const auto norm = gap_normalizer(gap);
        CHECK(angle_gap(norm(gap.from).disk_angle(), line(1.0).disk_angle()) < 1e-9);
        CHECK(angle_gap(norm(gap.to).disk_angle(), line(-1.0).disk_angle()) < 1e-9);
        CHECK(std::abs(norm.derivative(gap.from.extended().value)) == doctest::Approx(1.0));
        // Gap interior lands in |z| > 1.
        // A point just inside the arc midpoint, well within the sagitta.
        const double sagitta = 1.0 - std::cos(0.5 * gap.span());
        const Complex inner = (1.0 - 0.1 * sagitta) * std::polar(1.0, gap.from.disk_angle() + 0.5 * gap.span());
        CHECK(gap.contains(inner));
        const Complex image = norm(inner);
        CHECK(std::abs(image) > 1.0);
        CHECK(image.imag() > 0.0);

        // Under an isometry the normalizer changes by a map fixing +-1 and
        // preserving the upper exterior region; rotations leave it unchanged.
        const auto phi = random_isometry(gen);
        const Gap moved{phi(gap.from), phi(gap.to)};
        const auto defect = gap_normalizer(moved) * phi * norm.inverse();
        CHECK(std::abs(defect(Complex{1.0}) - 1.0) < 1e-7);
        CHECK(std::abs(defect(Complex{-1.0}) + 1.0) < 1e-7);
        const Complex probe = defect(Complex{0.0, 3.0});
        CHECK(std::abs(probe) > 1.0);
        CHECK(std::abs(defect.coefficients()[1] - defect.coefficients()[2]) < 1e-8);

        const auto rot = MobiusMap::disk_isometry(0.0, kTwoPi * std::uniform_real_distribution<double>()(gen));
        const Gap turned{rot(gap.from), rot(gap.to)};
        const auto exact = gap_normalizer(turned) * rot * norm.inverse();
        CHECK(std::abs(exact(Complex{0.4, 2.0}) - Complex{0.4, 2.0}) < 1e-8);
    }
}

TEST_CASE("reflection across geodesics")
{
    CHECK(reflect_across(inf(), line(0.0), line(1.0)).real() == doctest::Approx(0.5));
    CHECK(reflect_across(line(0.0), line(1.0), inf()).real() == doctest::Approx(2.0));
    CHECK(reflect_across(line(1.0), line(0.0), inf()).real() == doctest::Approx(-1.0));
    CHECK(reflect_across(line(3.0), line(-1.0), line(1.0)).real() == doctest::Approx(1.0 / 3.0));
    const auto r = reflect_across(disk(kPi / 2), disk(0.0), disk(kPi));
    CHECK(angle_gap(r.angle(), 1.5 * kPi) < 1e-12);

    // Chart consistency.
    std::mt19937_64 gen(2);
    for (int k = 0; k < 100; ++k) {
        const auto t = random_triangle(gen);
        const auto via_disk = reflect_across(t[0], t[1], t[2]);
        const auto via_line = reflect_across(t[0].to_halfplane(), t[1].to_halfplane(), t[2].to_halfplane());
        CHECK(angle_gap(via_disk.angle(), via_line.disk_angle()) < 1e-9);
    }
}
