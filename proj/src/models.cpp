#include "hypgeo/models.hpp"

#include <cmath>

namespace hypgeo {

namespace {

// Inversion in the sphere of radius sqrt(2) centered at -e_n. It is an
// involution of R^n u {inf} exchanging the unit ball and the upper half
// space, and restricts to an isometry of the hyperbolic metrics with
// 0 <-> e_n.
Vec ball_uhs_inversion(const Vec& x) {
    const Eigen::Index n = x.size();
    Vec y = x;
    y[n - 1] += 1.0;  // x + e_n
    const double s = y.squaredNorm();
    if (s == 0.0)
        throw InvalidPoint("model conversion: point at the inversion center");
    y *= 2.0 / s;
    y[n - 1] -= 1.0;  // -e_n + 2(x+e_n)/|x+e_n|^2
    return y;
}

}  // namespace

UHSPoint::UHSPoint(Vec coords) : x(std::move(coords)) {
    if (x.size() < 2)
        throw DimensionMismatch("UHSPoint needs at least 2 coordinates");
    if (x[x.size() - 1] <= 0.0)
        throw InvalidPoint("UHSPoint: x_n must be positive");
}

Vec uhs_to_ball(const Vec& x) { return ball_uhs_inversion(x); }

Vec ball_to_uhs(const Vec& b) { return ball_uhs_inversion(b); }

HPoint ball_to_hyperboloid(const Vec& b) {
    const double r2 = b.squaredNorm();
    if (r2 >= 1.0)
        throw InvalidPoint("ball_to_hyperboloid: point outside the open unit ball");
    const Eigen::Index n = b.size();
    Vec v(n + 1);
    v.head(n) = 2.0 / (1.0 - r2) * b;
    v[n] = (1.0 + r2) / (1.0 - r2);
    return HPoint(std::move(v));
}

Vec hyperboloid_to_ball(const HPoint& p) {
    const Eigen::Index n = p.coords().size() - 1;
    return p.coords().head(n) / (1.0 + p.coords()[n]);
}

HPoint uhs_to_hyperboloid(const UHSPoint& p) { return ball_to_hyperboloid(uhs_to_ball(p.x)); }

UHSPoint hyperboloid_to_uhs(const HPoint& p) { return UHSPoint(ball_to_uhs(hyperboloid_to_ball(p))); }

Horoball::Horoball(double level_) : level(level_) {
    if (!(level > 0.0))
        throw InvalidPoint("Horoball: level must be positive");
}

}  // namespace hypgeo
