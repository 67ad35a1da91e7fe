#include "hyplane/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyplane/errors.hpp"

namespace hyplane {

namespace {

constexpr Complex kI{0.0, 1.0};

// Raw 2x2 matrices for building maps without chart bookkeeping.
using Mat = std::array<Complex, 4>;

Mat multiply(const Mat& x, const Mat& y)
{
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

Mat adjugate(const Mat& x) { return {x[3], -x[1], -x[2], x[0]}; }

// Matrix sending (p1, p2, p3) to (0, 1, infinity).
Mat to_standard(const Extended& p1, const Extended& p2, const Extended& p3)
{
    if (p1.infinite) {
        return {Complex{0.0}, p2.value - p3.value, Complex{1.0}, -p3.value};
    }
    if (p2.infinite) {
        return {Complex{1.0}, -p1.value, Complex{1.0}, -p3.value};
    }
    if (p3.infinite) {
        return {Complex{1.0}, -p1.value, Complex{0.0}, p2.value - p1.value};
    }
    const Complex s = p2.value - p3.value;
    const Complex t = p2.value - p1.value;
    return {s, -p1.value * s, t, -p3.value * t};
}

// Signed position of w relative to the geodesic (a b): positive inside the
// region cut off over the anticlockwise arc from a to b, whose midpoint is m.
double cap_coordinate(Complex a, Complex b, Complex m, Complex w)
{
    const Complex g = (w - a) / (w - b);
    const Complex gm = (m - a) / (m - b);
    return (g / gm).real();
}

Complex unit(double angle) { return std::polar(1.0, angle); }

Complex arc_midpoint(const BoundaryPoint& from, const BoundaryPoint& to)
{
    return unit(from.disk_angle() + 0.5 * anticlockwise_span(from, to));
}

void require_same_model(std::span<const BoundaryPoint> points)
{
    for (const auto& p : points) {
        if (p.model() != points[0].model()) {
            throw PreconditionError("boundary points mix disk and half-plane charts");
        }
    }
}

} // namespace

const char* to_string(Model model)
{
    return model == Model::disk ? "disk" : "halfplane";
}

double canonical_angle(double angle)
{
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

//---------------------------------------------------------------------------//
// BoundaryPoint
//---------------------------------------------------------------------------//

BoundaryPoint BoundaryPoint::on_disk(double angle)
{
    if (!std::isfinite(angle)) {
        throw PreconditionError("disk boundary angle must be finite");
    }
    return {Model::disk, canonical_angle(angle), false};
}

BoundaryPoint BoundaryPoint::on_line(double x)
{
    if (std::isnan(x)) {
        throw PreconditionError("half-plane boundary coordinate is NaN");
    }
    if (std::isinf(x)) {
        return at_infinity();
    }
    return {Model::halfplane, x, false};
}

BoundaryPoint BoundaryPoint::at_infinity()
{
    return {Model::halfplane, 0.0, true};
}

double BoundaryPoint::angle() const
{
    if (model_ != Model::disk) {
        throw PreconditionError("angle() requested on a half-plane point");
    }
    return value_;
}

double BoundaryPoint::real() const
{
    if (model_ != Model::halfplane || infinite_) {
        throw PreconditionError("real() requested on a non-real boundary point");
    }
    return value_;
}

double BoundaryPoint::disk_angle() const
{
    if (model_ == Model::disk) {
        return value_;
    }
    if (infinite_) {
        return 0.0;
    }
    // Cayley image of x has angle 2 atan2(1, -x).
    return canonical_angle(2.0 * std::atan2(1.0, -value_));
}

Extended BoundaryPoint::extended() const
{
    if (model_ == Model::disk) {
        return {unit(value_), false};
    }
    if (infinite_) {
        return Extended::at_infinity();
    }
    return {Complex{value_, 0.0}, false};
}

BoundaryPoint BoundaryPoint::to(Model target) const
{
    if (target == model_) {
        return *this;
    }
    if (target == Model::disk) {
        return on_disk(disk_angle());
    }
    if (value_ == 0.0) {
        return at_infinity();
    }
    // Inverse Cayley image of e^{i theta} is -cot(theta / 2).
    const double half = 0.5 * value_;
    return on_line(-std::cos(half) / std::sin(half));
}

double anticlockwise_span(const BoundaryPoint& from, const BoundaryPoint& to)
{
    return canonical_angle(to.disk_angle() - from.disk_angle());
}

bool is_anticlockwise(std::span<const BoundaryPoint> points)
{
    double previous = 0.0;
    for (std::size_t k = 1; k < points.size(); ++k) {
        const double offset = anticlockwise_span(points[0], points[k]);
        if (!(offset > previous)) {
            return false;
        }
        previous = offset;
    }
    return true;
}

double min_separation(std::span<const BoundaryPoint> points)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double s = anticlockwise_span(points[i], points[j]);
            best = std::min({best, s, kTwoPi - s});
        }
    }
    return best;
}

//---------------------------------------------------------------------------//
// MobiusMap
//---------------------------------------------------------------------------//

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d, Model source, Model target)
    : m_{a, b, c, d}, source_(source), target_(target)
{
    double scale = 0.0;
    for (const auto& x : m_) {
        scale = std::max(scale, std::abs(x));
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw InvalidMapError("Moebius coefficients are zero or not finite");
    }
    for (auto& x : m_) {
        x /= scale;
    }
    const Complex det = m_[0] * m_[3] - m_[1] * m_[2];
    if (std::abs(det) < 1e-14) {
        throw InvalidMapError("Moebius map has vanishing determinant");
    }
    const Complex root = std::sqrt(det);
    for (auto& x : m_) {
        x /= root;
    }
}

MobiusMap MobiusMap::identity(Model model)
{
    return {1.0, 0.0, 0.0, 1.0, model, model};
}

MobiusMap MobiusMap::cayley()
{
    return {1.0, -kI, 1.0, kI, Model::halfplane, Model::disk};
}

MobiusMap MobiusMap::inverse_cayley()
{
    return {kI, kI, -1.0, 1.0, Model::disk, Model::halfplane};
}

MobiusMap MobiusMap::disk_isometry(Complex z0, double theta)
{
    if (!(std::norm(z0) < 1.0)) {
        throw PreconditionError("disk isometry center must lie in the open disk");
    }
    const Complex rot = unit(theta);
    return {rot, -rot * z0, std::conj(z0), -1.0, Model::disk, Model::disk};
}

Extended MobiusMap::operator()(const Extended& z) const
{
    const auto& [a, b, c, d] = m_;
    if (z.infinite) {
        if (c == Complex{}) {
            return Extended::at_infinity();
        }
        return {a / c, false};
    }
    const Complex den = c * z.value + d;
    if (den == Complex{}) {
        return Extended::at_infinity();
    }
    return {(a * z.value + b) / den, false};
}

Complex MobiusMap::operator()(Complex z) const
{
    const Extended w = (*this)(Extended{z, false});
    if (w.infinite) {
        throw PreconditionError("interior point mapped to infinity");
    }
    return w.value;
}

BoundaryPoint MobiusMap::operator()(const BoundaryPoint& p) const
{
    if (p.model() != source_) {
        throw PreconditionError("boundary point is not in the map's source chart");
    }
    const Extended w = (*this)(p.extended());
    if (target_ == Model::disk) {
        if (w.infinite) {
            throw PreconditionError("boundary point mapped to infinity in the disk chart");
        }
        return BoundaryPoint::on_disk(std::arg(w.value));
    }
    if (w.infinite) {
        return BoundaryPoint::at_infinity();
    }
    return BoundaryPoint::on_line(w.value.real());
}

Complex MobiusMap::derivative(Complex z) const
{
    const Complex den = m_[2] * z + m_[3];
    return 1.0 / (den * den);
}

MobiusMap MobiusMap::inverse() const
{
    const auto adj = adjugate(m_);
    return {adj[0], adj[1], adj[2], adj[3], target_, source_};
}

MobiusMap operator*(const MobiusMap& outer, const MobiusMap& inner)
{
    if (outer.source_ != inner.target_) {
        throw PreconditionError("composition of maps with mismatched charts");
    }
    const auto p = multiply(outer.m_, inner.m_);
    return {p[0], p[1], p[2], p[3], inner.source_, outer.target_};
}

MobiusMap mobius_from_triples(const std::array<BoundaryPoint, 3>& src,
                              const std::array<BoundaryPoint, 3>& dst)
{
    for (const auto* triple : {&src, &dst}) {
        require_same_model(*triple);
        if (min_separation(*triple) <= kApexSeparation) {
            throw DegenerateError("triple has coincident points");
        }
        if (!is_anticlockwise(*triple)) {
            throw OrientationError("triple is not anticlockwise");
        }
    }
    const Mat s = to_standard(src[0].extended(), src[1].extended(), src[2].extended());
    const Mat t = to_standard(dst[0].extended(), dst[1].extended(), dst[2].extended());
    const Mat m = multiply(adjugate(t), s);
    return {m[0], m[1], m[2], m[3], src[0].model(), dst[0].model()};
}

//---------------------------------------------------------------------------//
// IdealPolygon
//---------------------------------------------------------------------------//

IdealPolygon::IdealPolygon(std::initializer_list<BoundaryPoint> apexes)
    : IdealPolygon(std::span<const BoundaryPoint>(apexes.begin(), apexes.size()))
{
}

IdealPolygon::IdealPolygon(std::span<const BoundaryPoint> apexes)
{
    if (apexes.size() != 3 && apexes.size() != 4) {
        throw PreconditionError("ideal polygons have 3 or 4 apexes");
    }
    require_same_model(apexes);
    if (!(min_separation(apexes) > kApexSeparation)) {
        throw DegenerateError("polygon apexes closer than the separation floor");
    }
    if (!is_anticlockwise(apexes)) {
        throw OrientationError("polygon apexes are not anticlockwise");
    }
    std::copy(apexes.begin(), apexes.end(), apexes_.begin());
    size_ = apexes.size();
}

IdealPolygon IdealPolygon::triangle(double a, double b, double c, Model model)
{
    if (model == Model::disk) {
        return {BoundaryPoint::on_disk(a), BoundaryPoint::on_disk(b), BoundaryPoint::on_disk(c)};
    }
    return {BoundaryPoint::on_line(a), BoundaryPoint::on_line(b), BoundaryPoint::on_line(c)};
}

IdealPolygon IdealPolygon::to(Model target) const
{
    std::array<BoundaryPoint, 4> out{};
    for (std::size_t k = 0; k < size_; ++k) {
        out[k] = apexes_[k].to(target);
    }
    return IdealPolygon(std::span<const BoundaryPoint>(out.data(), size_));
}

IdealPolygon IdealPolygon::mapped(const MobiusMap& map) const
{
    std::array<BoundaryPoint, 4> out{};
    for (std::size_t k = 0; k < size_; ++k) {
        out[k] = map(apexes_[k]);
    }
    return IdealPolygon(std::span<const BoundaryPoint>(out.data(), size_));
}

double IdealPolygon::euclidean_diameter() const
{
    double best = 0.0;
    for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t j = i + 1; j < size_; ++j) {
            const double s = anticlockwise_span(apexes_[i], apexes_[j]);
            best = std::max(best, 2.0 * std::abs(std::sin(0.5 * s)));
        }
    }
    return best;
}

bool IdealPolygon::same_as(const IdealPolygon& other, double tol) const
{
    if (other.size_ != size_) {
        return false;
    }
    for (std::size_t shift = 0; shift < size_; ++shift) {
        bool all = true;
        for (std::size_t k = 0; k < size_ && all; ++k) {
            const double s = anticlockwise_span(apexes_[k], other.apexes_[(k + shift) % size_]);
            all = std::min(s, kTwoPi - s) <= tol;
        }
        if (all) {
            return true;
        }
    }
    return false;
}

//---------------------------------------------------------------------------//
// Geodesics and gaps
//---------------------------------------------------------------------------//

EuclideanCurve disk_geodesic(Complex a, Complex b)
{
    const double denom = 1.0 + (a * std::conj(b)).real();
    EuclideanCurve curve;
    if (std::abs(denom) < 1e-12) {
        curve.is_line = true;
        curve.point = Complex{};
        curve.direction = a / std::abs(a);
        return curve;
    }
    curve.center = (a + b) / denom;
    curve.radius = std::sqrt(std::max(0.0, std::norm(curve.center) - 1.0));
    return curve;
}

Geodesic::Geodesic(BoundaryPoint a, BoundaryPoint b) : from(a), to(b)
{
    if (a.model() != b.model()) {
        throw PreconditionError("geodesic endpoints in different charts");
    }
    const std::array<BoundaryPoint, 2> ends{a, b};
    if (!(min_separation(ends) > 0.0)) {
        throw DegenerateError("geodesic endpoints coincide");
    }
}

EuclideanCurve Geodesic::realize() const
{
    if (model() == Model::disk) {
        return disk_geodesic(from.extended().value, to.extended().value);
    }
    EuclideanCurve curve;
    if (from.is_infinite() || to.is_infinite()) {
        const double x = from.is_infinite() ? to.real() : from.real();
        curve.is_line = true;
        curve.point = Complex{x, 0.0};
        curve.direction = kI;
        return curve;
    }
    curve.center = Complex{0.5 * (from.real() + to.real()), 0.0};
    curve.radius = 0.5 * std::abs(to.real() - from.real());
    return curve;
}

double Gap::diameter_bound() const
{
    const double phi = span();
    if (phi >= kPi) {
        return 2.0;
    }
    return 2.0 * std::sin(0.5 * phi) + (1.0 - std::cos(0.5 * phi));
}

bool Gap::contains(Complex z) const
{
    const Complex w = hyplane::to_disk(z, model());
    return cap_coordinate(unit(from.disk_angle()), unit(to.disk_angle()), arc_midpoint(from, to), w) > 0.0;
}

Complex to_disk(Complex z, Model model)
{
    if (model == Model::disk) {
        return z;
    }
    return (z - kI) / (z + kI);
}

Complex from_disk(Complex w, Model model)
{
    if (model == Model::disk) {
        return w;
    }
    return kI * (1.0 + w) / (1.0 - w);
}

bool polygon_contains(const IdealPolygon& poly, Complex z)
{
    const Complex w = to_disk(z, poly.model());
    if (!(std::norm(w) < 1.0)) {
        throw PreconditionError("containment query outside the open domain");
    }
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const auto& a = poly[k];
        const auto& b = poly[(k + 1) % n];
        const double side = cap_coordinate(unit(a.disk_angle()), unit(b.disk_angle()), arc_midpoint(a, b), w);
        if (!(side < 0.0)) {
            return false;
        }
    }
    return true;
}

double harmonic_measure(Complex z, const BoundaryArc& arc)
{
    if (arc.full) {
        return 1.0;
    }
    const Complex w = to_disk(z, arc.from.model());
    if (!(std::norm(w) < 1.0)) {
        throw PreconditionError("harmonic measure requested at a non-interior point");
    }
    const MobiusMap center = MobiusMap::disk_isometry(w, 0.0);
    const double a = std::arg(center(Extended{unit(arc.from.disk_angle()), false}).value);
    const double b = std::arg(center(Extended{unit(arc.to.disk_angle()), false}).value);
    return canonical_angle(b - a) / kTwoPi;
}

std::vector<double> side_measures(const IdealPolygon& poly, Complex z)
{
    std::vector<double> out;
    out.reserve(poly.size());
    for (std::size_t k = 0; k < poly.size(); ++k) {
        out.push_back(harmonic_measure(z, {poly[k], poly[(k + 1) % poly.size()], false}));
    }
    std::sort(out.begin(), out.end());
    return out;
}

MobiusMap gap_normalizer(const Gap& gap)
{
    const std::array<BoundaryPoint, 2> ends{gap.from, gap.to};
    require_same_model(ends);
    if (!(min_separation(ends) > kApexSeparation)) {
        throw DegenerateError("gap arch endpoints coincide");
    }
    if (gap.from.is_infinite()) {
        throw PreconditionError("gap normalizer needs a finite pinned endpoint");
    }
    const BoundaryPoint mid =
        BoundaryPoint::on_disk(gap.from.disk_angle() + 0.5 * gap.span()).to(gap.model());
    const MobiusMap base = mobius_from_triples(
        {gap.from, mid, gap.to},
        {BoundaryPoint::on_line(1.0), BoundaryPoint::at_infinity(), BoundaryPoint::on_line(-1.0)});

    // Hyperbolic map fixing -1 and 1 with multiplier 1/lambda at 1:
    // conjugate of s -> lambda s under s = (w + 1) / (1 - w).
    const double lambda = std::abs(base.derivative(gap.from.extended().value));
    const MobiusMap to_axis(1.0, 1.0, -1.0, 1.0, Model::halfplane, Model::halfplane);
    const MobiusMap scale(lambda, 0.0, 0.0, 1.0, Model::halfplane, Model::halfplane);
    return to_axis.inverse() * scale * to_axis * base;
}

BoundaryPoint reflect_across(const BoundaryPoint& p, const BoundaryPoint& a, const BoundaryPoint& b)
{
    const std::array<BoundaryPoint, 3> pts{p, a, b};
    require_same_model(pts);
    if (!(min_separation(pts) > 0.0)) {
        throw DegenerateError("reflection with coincident points");
    }
    if (p.model() == Model::disk) {
        const Complex u = a.extended().value;
        const Complex v = b.extended().value;
        const Complex x = p.extended().value;
        return BoundaryPoint::on_disk(std::arg((2.0 * u * v - x * (u + v)) / ((u + v) - 2.0 * x)));
    }
    if (a.is_infinite()) {
        return BoundaryPoint::on_line(2.0 * b.real() - p.real());
    }
    if (b.is_infinite()) {
        return BoundaryPoint::on_line(2.0 * a.real() - p.real());
    }
    const double center = 0.5 * (a.real() + b.real());
    if (p.is_infinite()) {
        return BoundaryPoint::on_line(center);
    }
    const double radius = 0.5 * (b.real() - a.real());
    return BoundaryPoint::on_line(center + radius * radius / (p.real() - center));
}

} // namespace hyplane
