#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <vector>

namespace hyplane {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Minimum angular separation (radians, disk chart) between polygon apexes.
inline constexpr double kApexSeparation = 1e-12;

enum class Model : std::uint8_t { disk, halfplane };

const char* to_string(Model model);

// Point of the Riemann sphere.
struct Extended {
    Complex value{};
    bool infinite = false;

    static Extended at_infinity() { return {Complex{}, true}; }
};

// Reduce an angle into [0, 2*pi).
double canonical_angle(double angle);

//---------------------------------------------------------------------------//
/*!
 * Point of the ideal boundary of one of the two models.
 *
 * Disk points are stored as a canonical angle in [0, 2*pi). Half-plane
 * points are stored as an extended real with an explicit infinity flag.
 * Conversions between the charts go through the Cayley map
 * z -> (z - i) / (z + i), which sends the real line anticlockwise around
 * the unit circle and infinity to angle 0.
 */
class BoundaryPoint {
  public:
    BoundaryPoint() = default;

    static BoundaryPoint on_disk(double angle);
    static BoundaryPoint on_line(double x);
    static BoundaryPoint at_infinity();

    Model model() const { return model_; }
    bool is_infinite() const { return infinite_; }

    // Disk angle; only valid for disk points.
    double angle() const;
    // Real coordinate; only valid for finite half-plane points.
    double real() const;

    // Angle of the disk image, whatever the chart.
    double disk_angle() const;
    // Position on the Riemann sphere in the point's own chart.
    Extended extended() const;

    BoundaryPoint to(Model target) const;
    BoundaryPoint to_disk() const { return to(Model::disk); }
    BoundaryPoint to_halfplane() const { return to(Model::halfplane); }

    friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;

  private:
    BoundaryPoint(Model model, double value, bool infinite)
        : model_(model), value_(value), infinite_(infinite) {}

    Model model_ = Model::disk;
    double value_ = 0.0;
    bool infinite_ = false;
};

// Anticlockwise angular distance from `from` to `to` in [0, 2*pi).
double anticlockwise_span(const BoundaryPoint& from, const BoundaryPoint& to);

// True if the points are pairwise distinct and in anticlockwise cyclic order.
bool is_anticlockwise(std::span<const BoundaryPoint> points);

// Smallest pairwise angular separation in the disk chart.
double min_separation(std::span<const BoundaryPoint> points);

//---------------------------------------------------------------------------//
/*!
 * Orientation-preserving fractional linear map z -> (az + b) / (cz + d).
 *
 * The map carries a source and a target chart, so the Cayley map and gap
 * normalizers are first-class values. The coefficient matrix is rescaled to
 * unit determinant on construction and after every product.
 */
class MobiusMap {
  public:
    MobiusMap(Complex a, Complex b, Complex c, Complex d,
              Model source = Model::disk, Model target = Model::disk);

    static MobiusMap identity(Model model = Model::disk);
    // Half-plane to disk, z -> (z - i) / (z + i).
    static MobiusMap cayley();
    // Disk to half-plane, z -> i (1 + z) / (1 - z).
    static MobiusMap inverse_cayley();
    // Disk isometry z -> e^{i theta} (z - z0) / (conj(z0) z - 1).
    static MobiusMap disk_isometry(Complex z0, double theta);

    Model source() const { return source_; }
    Model target() const { return target_; }
    const std::array<Complex, 4>& coefficients() const { return m_; }

    Extended operator()(const Extended& z) const;
    // Interior point; the image must be finite.
    Complex operator()(Complex z) const;
    BoundaryPoint operator()(const BoundaryPoint& p) const;

    Complex derivative(Complex z) const;
    MobiusMap inverse() const;

    friend MobiusMap operator*(const MobiusMap& outer, const MobiusMap& inner);

  private:
    std::array<Complex, 4> m_;
    Model source_;
    Model target_;
};

/*!
 * Unique orientation-preserving map with map(src[k]) == dst[k].
 *
 * Both triples must be anticlockwise in their own charts; the charts may
 * differ, in which case the result maps one model onto the other.
 */
MobiusMap mobius_from_triples(const std::array<BoundaryPoint, 3>& src,
                              const std::array<BoundaryPoint, 3>& dst);

//---------------------------------------------------------------------------//
// Ideal polygon with 3 or 4 anticlockwise apexes.
class IdealPolygon {
  public:
    IdealPolygon(std::initializer_list<BoundaryPoint> apexes);
    explicit IdealPolygon(std::span<const BoundaryPoint> apexes);

    static IdealPolygon triangle(double a, double b, double c, Model model);

    std::size_t size() const { return size_; }
    Model model() const { return apexes_[0].model(); }
    const BoundaryPoint& operator[](std::size_t i) const { return apexes_[i]; }
    std::span<const BoundaryPoint> apexes() const { return {apexes_.data(), size_}; }

    IdealPolygon to(Model target) const;
    IdealPolygon mapped(const MobiusMap& map) const;

    // Largest chord between apexes, measured in the disk.
    double euclidean_diameter() const;

    // Same unordered apex set (cyclic relabelling allowed), compared in the
    // disk chart to `tol` radians.
    bool same_as(const IdealPolygon& other, double tol = 1e-10) const;

  private:
    std::array<BoundaryPoint, 4> apexes_{};
    std::size_t size_ = 0;
};

//---------------------------------------------------------------------------//
// Euclidean picture of a hyperbolic line.
struct EuclideanCurve {
    bool is_line = false;
    // Circle: center and radius. Line: a point on it and a unit direction.
    Complex center{};
    double radius = 0.0;
    Complex point{};
    Complex direction{};
};

struct Geodesic {
    BoundaryPoint from;
    BoundaryPoint to;

    Geodesic(BoundaryPoint a, BoundaryPoint b);
    Model model() const { return from.model(); }
    EuclideanCurve realize() const;
};

// Orthogonal circle of the disk geodesic joining two unit complex numbers:
// center (a + b) / (1 + Re(a conj b)), radius sqrt(|c|^2 - 1).
EuclideanCurve disk_geodesic(Complex a, Complex b);

/*!
 * Region bounded by the geodesic (from, to) and the boundary arc running
 * anticlockwise from `from` to `to`.
 */
struct Gap {
    BoundaryPoint from;
    BoundaryPoint to;

    Model model() const { return from.model(); }
    Gap to_disk() const { return {from.to_disk(), to.to_disk()}; }
    // Angular length of the boundary arc.
    double span() const { return anticlockwise_span(from, to); }
    // Upper bound on the Euclidean diameter in the disk: chord plus sagitta.
    double diameter_bound() const;
    // Strict interior test for a point given in the gap's chart.
    bool contains(Complex z) const;
};

// Boundary arc from `from` anticlockwise to `to`, or the whole circle.
struct BoundaryArc {
    BoundaryPoint from = BoundaryPoint::on_disk(0.0);
    BoundaryPoint to = BoundaryPoint::on_disk(0.0);
    bool full = false;

    static BoundaryArc whole() { return {BoundaryPoint::on_disk(0.0), BoundaryPoint::on_disk(0.0), true}; }
};

// Interior point conversions.
Complex to_disk(Complex z, Model model);
Complex from_disk(Complex w, Model model);

// Strict interior test; points on an edge are outside.
bool polygon_contains(const IdealPolygon& poly, Complex z);

// Harmonic measure at z (in the arc's chart) of a boundary arc.
double harmonic_measure(Complex z, const BoundaryArc& arc);

// Harmonic measures at z of the arcs cut off by each side, sorted ascending.
std::vector<double> side_measures(const IdealPolygon& poly, Complex z);

/*!
 * Map sending a gap onto {z in H : |z| > 1}.
 *
 * Pinned by gap.from -> 1, gap.to -> -1 and |map'(gap.from)| = 1, with the
 * derivative taken in the gap's own chart.
 */
MobiusMap gap_normalizer(const Gap& gap);

// Reflection of `p` across the geodesic (a b), in the chart of the inputs.
BoundaryPoint reflect_across(const BoundaryPoint& p, const BoundaryPoint& a, const BoundaryPoint& b);

} // namespace hyplane
