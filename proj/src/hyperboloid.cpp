#include "hypgeo/hyperboloid.hpp"

#include <cmath>

namespace hypgeo {

HPoint::HPoint(Vec v) : v_(std::move(v)) {
    check_ambient_dim(v_);
    const double q = minkowski_norm_sq(v_);
    if (q >= 0.0)
        throw InvalidPoint("HPoint: vector is not timelike");
    if (v_[v_.size() - 1] <= 0.0)
        throw InvalidPoint("HPoint: time coordinate must be positive (upper sheet)");
    v_ /= std::sqrt(-q);
}

double HTangent::norm() const {
    // <.,.> restricted to a tangent space is positive definite; clamp the
    // roundoff-negative case.
    return std::sqrt(std::max(0.0, norm_sq()));
}

double minkowski_inner(const HPoint& p, const HPoint& q) {
    return minkowski_inner(p.coords(), q.coords());
}

double h_distance(const HPoint& p, const HPoint& q) {
    // <p-q, p-q> = 2(cosh d - 1) = 4 sinh^2(d/2). Differencing the
    // coordinates before forming products stays accurate for nearby points
    // far from the origin, where acosh(-<p,q>) loses every digit.
    const double d2 = minkowski_norm_sq(p.coords() - q.coords());
    if (d2 < 0.0) {
        if (d2 < -2.0 * kTauPoint)
            throw InvalidPoint("h_distance: -<p,q> < 1, inputs are not valid points");
        return 0.0;
    }
    return 2.0 * std::asinh(0.5 * std::sqrt(d2));
}

HTangent project_to_tangent(const HPoint& p, const Vec& w) {
    if (w.size() != p.coords().size())
        throw DimensionMismatch("project_to_tangent: dimension mismatch");
    Vec t = w + minkowski_inner(w, p.coords()) * p.coords();
    return HTangent{p, std::move(t)};
}

GeodesicLine::GeodesicLine(HPoint base, Vec dir) : base_(std::move(base)), dir_(std::move(dir)) {
    HTangent t = project_to_tangent(base_, dir_);
    const double n2 = t.norm_sq();
    if (n2 <= 0.0)
        throw InvalidPoint("GeodesicLine: direction projects to a non-spacelike vector");
    dir_ = t.dir / std::sqrt(n2);
}

HPoint GeodesicLine::point_at(double t) const {
    return HPoint(base_.coords() * std::cosh(t) + dir_ * std::sinh(t));
}

HTangent GeodesicLine::tangent_at(double t) const {
    HPoint p = point_at(t);
    Vec d = base_.coords() * std::sinh(t) + dir_ * std::cosh(t);
    return HTangent{std::move(p), std::move(d)};
}

GeodesicLine geodesic_between(const HPoint& p, const HPoint& q) {
    const double c = -minkowski_inner(p, q);
    if (c < 1.0 + kTauPoint)
        throw InvalidPoint("geodesic_between: coincident endpoints");
    // q - c p is tangent at p and points toward q; GeodesicLine normalizes.
    return GeodesicLine(p, q.coords() - c * p.coords());
}

HPoint geodesic_interpolate(const HPoint& p, const HPoint& q, double s) {
    if (s < 0.0 || s > 1.0)
        throw InputError("geodesic_interpolate: s must lie in [0, 1]");
    const double d = h_distance(p, q);
    if (d < kTauPoint)
        return p;
    const double w = std::sinh(d);
    return HPoint(std::sinh((1.0 - s) * d) / w * p.coords() +
                  std::sinh(s * d) / w * q.coords());
}

DualHyperplane::DualHyperplane(Vec normal) : normal_(std::move(normal)) {
    check_ambient_dim(normal_);
    const double n2 = minkowski_norm_sq(normal_);
    if (n2 <= 0.0)
        throw InvalidPoint("DualHyperplane: normal must be spacelike");
    normal_ /= std::sqrt(n2);
}

std::optional<double> dual_plane_distance(const DualHyperplane& P, const DualHyperplane& Q) {
    const double c = minkowski_inner(P.normal(), Q.normal());
    // span{n_P, n_Q} has signature (1,1) iff the Gram determinant 1 - c^2
    // is negative; |c| = 1 is the tangent (distance 0) case.
    if (std::abs(c) < 1.0)
        return std::nullopt;
    return std::acosh(std::abs(c));
}

}  // namespace hypgeo
