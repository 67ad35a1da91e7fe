#include "hyplane/ngon.hpp"

#include <algorithm>
#include <cmath>

#include "hyplane/errors.hpp"
#include "hyplane/measures.hpp"

namespace hyplane {

const char* to_string(SquareKind kind)
{
    switch (kind) {
    case SquareKind::I1:
        return "I1";
    case SquareKind::I2:
        return "I2";
    default:
        return "II";
    }
}

double type_two_mass()
{
    return std::log(2.0);
}

SquareJump rho4_pair(double x1)
{
    if (!(std::abs(x1) > 1.0) || !std::isfinite(x1)) {
        throw PreconditionError("square jump needs |x1| > 1");
    }
    const double y1 = (x1 - 1.0) / (x1 + 1.0);
    if (std::abs(2.0 * y1 - 1.0) < 1e-12) {
        throw DegenerateError("x1 on the I2/II type boundary");
    }
    const double y2 = 2.0 * y1;
    SquareJump out;
    out.x1 = x1;
    out.x2 = (1.0 + y2) / (1.0 - y2);
    if (x1 < -1.0) {
        out.kind = SquareKind::I1;
    } else if (out.x2 > 1.0) {
        out.kind = SquareKind::I2;
    } else {
        out.kind = SquareKind::II;
    }
    return out;
}

double square_relation_residual(double x1, double x2)
{
    const double y2 = 2.0 * (x1 - 1.0) / (x1 + 1.0);
    return std::abs((x2 - 1.0) / (x2 + 1.0) - y2) / std::max(1.0, std::abs(y2));
}

Complex square_cross_ratio(const IdealPolygon& square)
{
    if (square.size() != 4) {
        throw PreconditionError("cross ratio needs four apexes");
    }
    const auto d = square.to(Model::disk);
    const Complex a = d[0].extended().value;
    const Complex b = d[1].extended().value;
    const Complex c = d[2].extended().value;
    const Complex e = d[3].extended().value;
    return (a - c) * (b - e) / ((a - e) * (b - c));
}

IdealPolygon standard_square()
{
    return {BoundaryPoint::on_disk(0.0), BoundaryPoint::on_disk(0.5 * kPi), BoundaryPoint::on_disk(kPi),
            BoundaryPoint::on_disk(1.5 * kPi)};
}

BoundaryPoint fourth_vertex(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c)
{
    const auto m = mobius_from_triples({a, b, c}, {BoundaryPoint::on_disk(0.0), BoundaryPoint::on_disk(0.5 * kPi),
                                                   BoundaryPoint::on_disk(kPi)});
    return m.inverse()(BoundaryPoint::on_disk(1.5 * kPi));
}

IdealPolygon sample_p0_square(RandomStream& rng)
{
    static const std::array<BoundaryPoint, 3> unit{BoundaryPoint::on_line(0.0), BoundaryPoint::on_line(1.0),
                                                   BoundaryPoint::at_infinity()};
    static const MobiusMap upper = mobius_from_triples(
        unit, {BoundaryPoint::on_disk(0.0), BoundaryPoint::on_disk(0.5 * kPi), BoundaryPoint::on_disk(kPi)});
    static const MobiusMap lower = mobius_from_triples(
        unit, {BoundaryPoint::on_disk(kPi), BoundaryPoint::on_disk(1.5 * kPi), BoundaryPoint::on_disk(0.0)});
    // The two diagonal halves have equal area.
    const bool first = rng.coin();
    const Complex z = sample_mu_standard(rng);
    const Complex z0 = first ? upper(z) : lower(z);
    const double theta = kTwoPi * rng.uniform();
    return standard_square().mapped(MobiusMap::disk_isometry(z0, theta));
}

SquareStep apply_square_jump(const Arch& arch, const SquareJump& jump)
{
    const double p1 = arch.place(jump.x1);
    const double p2 = arch.place(jump.x2);
    SquareStep step;
    step.kind = jump.kind;
    switch (jump.kind) {
    case SquareKind::I2:
        step.arch = {arch.L, p2};
        step.square = {arch.L, arch.R, p1, p2};
        step.sides = {{{arch.R, p1}, {p1, p2}}};
        break;
    case SquareKind::I1:
        step.arch = {p1, arch.R};
        step.square = {p1, p2, arch.L, arch.R};
        step.sides = {{{p1, p2}, {p2, arch.L}}};
        break;
    case SquareKind::II:
        step.arch = {p2, p1};
        step.square = {p2, arch.L, arch.R, p1};
        step.sides = {{{arch.R, p1}, {p2, arch.L}}};
        break;
    }
    return step;
}

} // namespace hyplane
