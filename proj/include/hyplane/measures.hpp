#pragma once

#include <utility>

#include "hyplane/geom.hpp"
#include "hyplane/random.hpp"

namespace hyplane {

//---------------------------------------------------------------------------//
// Jump measure zeta(dx) = 2 dx / (x^2 - 1) on |x| > 1.
//---------------------------------------------------------------------------//

double zeta_density(double x);
// Mass of {|x| > x0}: 2 ln((x0 + 1) / (x0 - 1)).
double tail_mass(double x0);
// Inverse CDF of the normalized tail on one side: u = 1 gives x0, u -> 0 gives infinity.
double zeta_magnitude(double u, double x0);
// Sample of zeta restricted to |x| > x0, sign by fair coin.
double sample_zeta(RandomStream& rng, double x0);

//---------------------------------------------------------------------------//
/*!
 * Image of dx/x on (0, inf) under a Moebius change of coordinates.
 *
 * inside:  zeta_[u,v], supported on (u, v), coordinate x = (w - u) / (v - w).
 * outside: zeta_[v,u], supported off [u, v], coordinate x = (w - v) / (w - u).
 *
 * v may be +infinity for the inside kind, in which case x = w - u.
 * Truncation at eps keeps x in [eps, 1/eps], of mass 2 ln(1/eps).
 */
enum class Side { inside, outside };

class ZetaInterval {
  public:
    ZetaInterval(double u, double v, Side side);

    double u() const { return u_; }
    double v() const { return v_; }
    Side side() const { return side_; }

    double density(double w) const;
    // Coordinate x(w) and its inverse.
    double coordinate(double w) const;
    double point(double x) const;
    // Antiderivative ln x(w) on the support (inside kind: ln((w-u)/(v-w))).
    double primitive(double w) const;
    // Mass of the support segment between w0 and w1 (same branch).
    double mass(double w0, double w1) const;

    static double truncated_mass(double eps);
    double sample(RandomStream& rng, double eps) const;

  private:
    double u_;
    double v_;
    Side side_;
};

// zeta on |x| > x0 as an outside interval measure over (-1, 1).
ZetaInterval zeta_as_interval();
double zeta_cutoff_to_eps(double x0);

//---------------------------------------------------------------------------//
// Invariant densities on pairs and triples of real boundary points.
//---------------------------------------------------------------------------//

double pi_density(double u, double v);
// Normalized triple density (1/pi^2) / (|u-v||v-w||w-u|).
double triple_density(double u, double v, double w);

struct DualityCheck {
    double triple_density = 0.0;
    // |pi(u,v) zeta_[v,u](w) - 1/((w-v)(v-u)(w-u))| relative to the second term.
    double residual = 0.0;
};

// u < v and w outside [u, v], i.e. (u, v, w) anticlockwise on the real line.
DualityCheck triple_density_and_duality(double u, double v, double w);

//---------------------------------------------------------------------------//
// Haar-type samplers.
//---------------------------------------------------------------------------//

// Point of the half-plane triangle (0, 1, inf), distributed as mu restricted to it.
Complex sample_mu_standard(RandomStream& rng);

// Triangle containing 0, distributed as P0.
IdealPolygon sample_p0(RandomStream& rng);

// The standard triangle (1, j, j^2) in the disk.
IdealPolygon standard_triangle();

} // namespace hyplane
