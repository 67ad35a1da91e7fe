#include <cmath>
#include <cstdio>
#include <string>

#include "hyplane/io.hpp"

namespace hyplane {

namespace {

struct Screen {
    double width;
    Model model;
    double extent;

    // Model coordinates to SVG user units (y grows downward).
    Complex operator()(Complex z) const
    {
        if (model == Model::disk) {
            return {(z.real() + 1.0) * 0.5 * width, (1.0 - z.imag()) * 0.5 * width};
        }
        const double s = 0.5 * width / extent;
        return {(z.real() + extent) * s, (extent - z.imag()) * s};
    }
    double scale() const { return model == Model::disk ? 0.5 * width : 0.5 * width / extent; }
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// Arc or segment from a to b around center c (screen units).
std::string arc_path(Complex a, Complex b, Complex c, double r)
{
    const double cross = (a.real() - c.real()) * (b.imag() - c.imag()) - (a.imag() - c.imag()) * (b.real() - c.real());
    return "M " + fmt(a.real()) + " " + fmt(a.imag()) + " A " + fmt(r) + " " + fmt(r) + " 0 0 " +
           (cross > 0 ? "1 " : "0 ") + fmt(b.real()) + " " + fmt(b.imag());
}

std::string line_path(Complex a, Complex b)
{
    return "M " + fmt(a.real()) + " " + fmt(a.imag()) + " L " + fmt(b.real()) + " " + fmt(b.imag());
}

std::string disk_edge(const BoundaryPoint& p, const BoundaryPoint& q, const Screen& screen)
{
    const Complex a = std::polar(1.0, p.disk_angle());
    const Complex b = std::polar(1.0, q.disk_angle());
    const EuclideanCurve g = disk_geodesic(a, b);
    if (g.is_line) {
        return line_path(screen(a), screen(b));
    }
    return arc_path(screen(a), screen(b), screen(g.center), g.radius * screen.scale());
}

std::string halfplane_edge(const BoundaryPoint& p, const BoundaryPoint& q, const Screen& screen)
{
    const BoundaryPoint hp = p.to_halfplane();
    const BoundaryPoint hq = q.to_halfplane();
    if (hp.is_infinite() || hq.is_infinite()) {
        const double x = hp.is_infinite() ? hq.real() : hp.real();
        return line_path(screen({x, 0.0}), screen({x, screen.extent}));
    }
    const double u = hp.real();
    const double v = hq.real();
    return arc_path(screen({u, 0.0}), screen({v, 0.0}), screen({0.5 * (u + v), 0.0}),
                    0.5 * std::abs(v - u) * screen.scale());
}

} // namespace

std::string render_svg(const Tiling& tiling, const SvgOptions& options)
{
    const double w = options.width;
    const double h = options.model == Model::disk ? w : 0.5 * w;
    const Screen screen{w, options.model, options.halfplane_extent};
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
                      fmt(w) + "\" height=\"" + fmt(h) + "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) + "\">\n";
    if (options.model == Model::disk) {
        out += "<circle cx=\"" + fmt(0.5 * w) + "\" cy=\"" + fmt(0.5 * w) + "\" r=\"" + fmt(0.5 * w) +
               "\" fill=\"none\" stroke=\"black\"/>\n";
    } else {
        out += "<line x1=\"0\" y1=\"" + fmt(h) + "\" x2=\"" + fmt(w) + "\" y2=\"" + fmt(h) + "\" stroke=\"black\"/>\n";
    }
    out += "<g fill=\"none\" stroke=\"black\" stroke-width=\"0.5\">\n";
    for (const auto& poly : tiling.polygons) {
        std::string d;
        for (std::size_t k = 0; k < poly.size(); ++k) {
            const auto& p = poly[k];
            const auto& q = poly[(k + 1) % poly.size()];
            d += (d.empty() ? "" : " ") +
                 (options.model == Model::disk ? disk_edge(p, q, screen) : halfplane_edge(p, q, screen));
        }
        out += "<path d=\"" + d + "\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

} // namespace hyplane
