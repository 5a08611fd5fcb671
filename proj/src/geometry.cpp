#include "openup/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace openup {

namespace {

double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

bool on_segment(Complex p, Complex a, Complex b) {
    return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

}  // namespace

void Box::expand(Complex p) {
    if (empty) {
        xmin = xmax = p.real();
        ymin = ymax = p.imag();
        empty = false;
        return;
    }
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
}

void Box::expand(const Box& other) {
    if (other.empty) return;
    expand(Complex(other.xmin, other.ymin));
    expand(Complex(other.xmax, other.ymax));
}

Box Box::inflated(double margin) const {
    Box b = *this;
    if (b.empty) return b;
    b.xmin -= margin;
    b.xmax += margin;
    b.ymin -= margin;
    b.ymax += margin;
    return b;
}

double Box::diameter() const { return empty ? 0.0 : std::hypot(width(), height()); }

Box bounding_box(std::span<const Complex> points) {
    Box b;
    for (const Complex& p : points) b.expand(p);
    return b;
}

double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex d = b - a;
    const double dd = std::norm(d);
    if (dd == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * d.real() + (p.imag() - a.imag()) * d.imag()) / dd;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
    const double d1 = cross(c, d, a);
    const double d2 = cross(c, d, b);
    const double d3 = cross(a, b, c);
    const double d4 = cross(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
    if (d1 == 0 && on_segment(a, c, d)) return true;
    if (d2 == 0 && on_segment(b, c, d)) return true;
    if (d3 == 0 && on_segment(c, a, b)) return true;
    if (d4 == 0 && on_segment(d, a, b)) return true;
    return false;
}

double segment_segment_distance(Complex a, Complex b, Complex c, Complex d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    return std::min(std::min(point_segment_distance(a, c, d), point_segment_distance(b, c, d)),
                    std::min(point_segment_distance(c, a, b), point_segment_distance(d, a, b)));
}

double point_polyline_distance(Complex p, std::span<const Complex> polyline, bool closed) {
    if (polyline.empty()) return std::numeric_limits<double>::infinity();
    if (polyline.size() == 1) return std::abs(p - polyline[0]);
    double dist = std::numeric_limits<double>::infinity();
    const std::size_t segs = closed ? polyline.size() : polyline.size() - 1;
    for (std::size_t i = 0; i < segs; ++i)
        dist = std::min(dist, point_segment_distance(p, polyline[i], polyline[(i + 1) % polyline.size()]));
    return dist;
}

double polyline_min_distance(std::span<const Complex> a, std::span<const Complex> b, bool a_closed,
                             bool b_closed) {
    if (a.size() < 2 || b.size() < 2) {
        double dist = std::numeric_limits<double>::infinity();
        for (const Complex& p : a) dist = std::min(dist, point_polyline_distance(p, b, b_closed));
        for (const Complex& p : b) dist = std::min(dist, point_polyline_distance(p, a, a_closed));
        return dist;
    }
    double dist = std::numeric_limits<double>::infinity();
    const std::size_t na = a_closed ? a.size() : a.size() - 1;
    const std::size_t nb = b_closed ? b.size() : b.size() - 1;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            dist = std::min(dist, segment_segment_distance(a[i], a[(i + 1) % a.size()], b[j],
                                                           b[(j + 1) % b.size()]));
    return dist;
}

bool polyline_simple(std::span<const Complex> polyline, bool closed) {
    if (polyline.size() < 2) return true;
    const std::size_t count = closed ? polyline.size() : polyline.size() - 1;
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            const bool adjacent = (j == i + 1) || (closed && i == 0 && j == count - 1);
            if (adjacent) continue;
            if (segments_intersect(polyline[i], polyline[(i + 1) % polyline.size()], polyline[j],
                                   polyline[(j + 1) % polyline.size()]))
                return false;
        }
    }
    return true;
}

bool point_in_closed_curve(Complex p, std::span<const Complex> curve) {
    bool inside = false;
    const std::size_t m = curve.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Complex a = curve[i];
        const Complex b = curve[(i + 1) % m];
        if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
            const double xint =
                a.real() + (p.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
            if (p.real() < xint) inside = !inside;
        }
    }
    return inside;
}

double halton(unsigned index, unsigned base) {
    double f = 1.0;
    double r = 0.0;
    while (index > 0) {
        f /= double(base);
        r += f * double(index % base);
        index /= base;
    }
    return r;
}

}  // namespace openup
