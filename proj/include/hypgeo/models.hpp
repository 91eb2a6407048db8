#pragma once

#include "hypgeo/hyperboloid.hpp"

namespace hypgeo {

// Upper-half-space coordinates (x_1, ..., x_n), x_n > 0, with the metric
// (dx_1^2 + ... + dx_n^2) / x_n^2.
struct UHSPoint {
    Vec x;

    explicit UHSPoint(Vec coords);
    int dim() const { return static_cast<int>(x.size()); }
    double height() const { return x[x.size() - 1]; }
};

// Conversions route through the Poincare ball. The UHS basepoint
// (0,...,0,1) maps to the hyperboloid point (0,...,0,1); the round trip is
// the identity up to roundoff.
HPoint uhs_to_hyperboloid(const UHSPoint& p);
UHSPoint hyperboloid_to_uhs(const HPoint& p);

Vec uhs_to_ball(const Vec& x);
Vec ball_to_uhs(const Vec& b);
HPoint ball_to_hyperboloid(const Vec& b);
Vec hyperboloid_to_ball(const HPoint& p);

// Region x_n >= level in standard position; a general horoball is an
// isometric image of this one.
struct Horoball {
    double level;

    explicit Horoball(double level_);
    bool contains(const UHSPoint& p) const { return p.height() >= level; }
};

}  // namespace hypgeo
