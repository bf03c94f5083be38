#pragma once

#include <vector>

#include "fieldline/polygon.hpp"

namespace fieldline {

struct curve_sample {
    double t = 0.0;
    point p;
    point d;  // right-derivative, unit length
};

// Piecewise-C1 curve, arc-length parametrized, represented by samples.
// Points interpolate linearly between samples; the tangent is the
// right-derivative of the sample at or before the query parameter.
class curve {
public:
    curve(std::vector<curve_sample> samples, double total_length);

    const std::vector<curve_sample>& samples() const { return samples_; }
    double length() const { return length_; }
    bool closed() const;

    point at(double t) const;
    point tangent(double t) const;

    curve blowup(double eta) const;

private:
    std::vector<curve_sample> samples_;
    double length_ = 0.0;
};

curve make_segment(point a, point b, int samples = 8);
curve make_circle(point center, double radius, int samples = 512);

struct polygonize_result {
    polygon poly;
    // sup over samples of |tangent - chord direction|, the step-wise
    // faithfulness of the chord approximation (0 for straight pieces)
    double tangent_deviation = 0.0;
};

// Chord polygon through n_chords + 1 equispaced parameter values; closed
// curves yield closed polygons.
polygonize_result polygonize(const curve& c, int n_chords);

}  // namespace fieldline
