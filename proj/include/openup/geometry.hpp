#pragma once

#include <span>

#include "openup/poly.hpp"

namespace openup {

struct Box {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool empty = true;

    void expand(Complex p);
    void expand(const Box& other);
    Box inflated(double margin) const;
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double diameter() const;
};

Box bounding_box(std::span<const Complex> points);

double point_segment_distance(Complex p, Complex a, Complex b);
double segment_segment_distance(Complex a, Complex b, Complex c, Complex d);
bool segments_intersect(Complex a, Complex b, Complex c, Complex d);

/// Distance from p to the polyline (closed polylines wrap around).
double point_polyline_distance(Complex p, std::span<const Complex> polyline, bool closed = false);

/// Minimum distance between two polylines.
double polyline_min_distance(std::span<const Complex> a, std::span<const Complex> b,
                             bool a_closed = false, bool b_closed = false);

/// No intersections among non-adjacent segments (and the wrap segment for
/// closed polylines).
bool polyline_simple(std::span<const Complex> polyline, bool closed = false);

/// Even-odd crossing test against a closed sampled curve.
bool point_in_closed_curve(Complex p, std::span<const Complex> curve);

/// Deterministic low-discrepancy sequence term (van der Corput in the given base).
double halton(unsigned index, unsigned base);

}  // namespace openup
