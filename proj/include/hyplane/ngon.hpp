#pragma once

#include <array>
#include <cstdint>

#include "hyplane/accordion.hpp"
#include "hyplane/geom.hpp"
#include "hyplane/random.hpp"

namespace hyplane {

enum class SquareKind : std::uint8_t { I1, I2, II };

const char* to_string(SquareKind kind);

// Square (-1, 1, x1, x2) in the half-plane, regular by construction.
struct SquareJump {
    double x1 = 0.0;
    double x2 = 0.0;
    SquareKind kind = SquareKind::I2;
};

// Mass of x1 values giving type II: x1 > 3, i.e. ln 2.
double type_two_mass();

// Completes x1 to a regular square: y2 = 2 y1 with y = (x - 1) / (x + 1).
SquareJump rho4_pair(double x1);

// |(x2 - 1)/(x2 + 1) - 2 (x1 - 1)/(x1 + 1)|, relative once the right side exceeds 1.
double square_relation_residual(double x1, double x2);

// Cross ratio (a - c)(b - d) / ((a - d)(b - c)); equal to 2 for a regular square.
Complex square_cross_ratio(const IdealPolygon& square);

// The unique d making (a, b, c, d) a regular square, in the chart of the inputs.
BoundaryPoint fourth_vertex(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c);

// Regular square containing 0, distributed as the square analog of P0.
IdealPolygon sample_p0_square(RandomStream& rng);
IdealPolygon standard_square();

struct SquareStep {
    Arch arch;
    std::array<double, 4> square{};
    std::array<std::array<double, 2>, 2> sides{};
    SquareKind kind = SquareKind::I2;
};

SquareStep apply_square_jump(const Arch& arch, const SquareJump& jump);

} // namespace hyplane
