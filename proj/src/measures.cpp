#include "hyplane/measures.hpp"

#include <cmath>
#include <limits>

#include "hyplane/errors.hpp"

namespace hyplane {

double zeta_density(double x)
{
    const double a = std::abs(x);
    return a > 1.0 ? 2.0 / (x * x - 1.0) : 0.0;
}

double tail_mass(double x0)
{
    if (!(x0 > 1.0)) {
        throw MeasureError("zeta tail above a cutoff <= 1 has infinite mass");
    }
    return 2.0 * std::log1p(2.0 / (x0 - 1.0));
}

double zeta_magnitude(double u, double x0)
{
    const double s = u * std::log1p(2.0 / (x0 - 1.0));
    // (e^s + 1) / (e^s - 1), written to stay accurate for small s.
    return 1.0 + 2.0 / std::expm1(s);
}

double sample_zeta(RandomStream& rng, double x0)
{
    if (!(x0 > 1.0)) {
        throw MeasureError("zeta tail above a cutoff <= 1 has infinite mass");
    }
    const bool negative = rng.coin();
    const double x = zeta_magnitude(rng.uniform_open(), x0);
    return negative ? -x : x;
}

ZetaInterval::ZetaInterval(double u, double v, Side side) : u_(u), v_(v), side_(side)
{
    if (!(u < v) || !std::isfinite(u) || std::isnan(v)) {
        throw PreconditionError("interval measure needs finite u < v");
    }
    if (side == Side::outside && std::isinf(v)) {
        throw PreconditionError("outside interval measure needs finite endpoints");
    }
}

double ZetaInterval::coordinate(double w) const
{
    if (side_ == Side::inside) {
        return std::isinf(v_) ? w - u_ : (w - u_) / (v_ - w);
    }
    return (w - v_) / (w - u_);
}

double ZetaInterval::point(double x) const
{
    if (side_ == Side::inside) {
        return std::isinf(v_) ? u_ + x : (v_ * x + u_) / (x + 1.0);
    }
    if (x == 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    return (u_ * x - v_) / (x - 1.0);
}

double ZetaInterval::density(double w) const
{
    if (side_ == Side::inside) {
        if (!(w > u_ && w < v_)) {
            return 0.0;
        }
        return std::isinf(v_) ? 1.0 / (w - u_) : (v_ - u_) / ((v_ - w) * (w - u_));
    }
    if (w >= u_ && w <= v_) {
        return 0.0;
    }
    return (v_ - u_) / ((w - u_) * (w - v_));
}

double ZetaInterval::primitive(double w) const
{
    return std::log(coordinate(w));
}

double ZetaInterval::mass(double w0, double w1) const
{
    return std::abs(primitive(w1) - primitive(w0));
}

double ZetaInterval::truncated_mass(double eps)
{
    if (!(eps > 0.0 && eps < 1.0)) {
        throw MeasureError("truncation parameter must lie in (0, 1)");
    }
    return -2.0 * std::log(eps);
}

double ZetaInterval::sample(RandomStream& rng, double eps) const
{
    const double half = -std::log(eps);
    if (!(eps > 0.0 && eps < 1.0)) {
        throw MeasureError("truncated support is empty");
    }
    const double x = std::exp(half * (2.0 * rng.uniform() - 1.0));
    return point(x);
}

ZetaInterval zeta_as_interval()
{
    return {-1.0, 1.0, Side::outside};
}

double zeta_cutoff_to_eps(double x0)
{
    if (!(x0 > 1.0)) {
        throw MeasureError("zeta cutoff must exceed 1");
    }
    return (x0 - 1.0) / (x0 + 1.0);
}

double pi_density(double u, double v)
{
    if (u == v) {
        throw DegenerateError("pi density at coincident points");
    }
    return 1.0 / ((v - u) * (v - u));
}

double triple_density(double u, double v, double w)
{
    const double p = std::abs(u - v) * std::abs(v - w) * std::abs(w - u);
    if (!(p > 0.0)) {
        throw DegenerateError("triple density at coincident points");
    }
    return 1.0 / (kPi * kPi * p);
}

DualityCheck triple_density_and_duality(double u, double v, double w)
{
    if (u == v || v == w || w == u) {
        throw DegenerateError("duality check at coincident points");
    }
    if (!(u < v) || (w > u && w < v)) {
        throw OrientationError("duality check needs u < v with w outside [u, v]");
    }
    const double lhs = pi_density(u, v) * ZetaInterval(u, v, Side::outside).density(w);
    const double rhs = 1.0 / ((w - v) * (v - u) * (w - u));
    return {triple_density(u, v, w), std::abs(lhs - rhs) / std::abs(rhs)};
}

Complex sample_mu_standard(RandomStream& rng)
{
    // x is arcsine on (0, 1); above the semicircle y has tail y0 / y.
    const double s = std::sin(0.5 * kPi * rng.uniform_open());
    const double x = s * s;
    const double y0 = std::sqrt(x * (1.0 - x));
    return {x, y0 / rng.uniform_open()};
}

IdealPolygon standard_triangle()
{
    return IdealPolygon::triangle(0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0, Model::disk);
}

IdealPolygon sample_p0(RandomStream& rng)
{
    static const MobiusMap to_disk_triangle = mobius_from_triples(
        {BoundaryPoint::on_line(0.0), BoundaryPoint::on_line(1.0), BoundaryPoint::at_infinity()},
        {BoundaryPoint::on_disk(0.0), BoundaryPoint::on_disk(2.0 * kPi / 3.0),
         BoundaryPoint::on_disk(4.0 * kPi / 3.0)});
    const Complex z0 = to_disk_triangle(sample_mu_standard(rng));
    const double theta = kTwoPi * rng.uniform();
    return standard_triangle().mapped(MobiusMap::disk_isometry(z0, theta));
}

} // namespace hyplane
