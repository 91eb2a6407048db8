#pragma once

#include <optional>

#include "hypgeo/minkowski.hpp"

namespace hypgeo {

// Point on the upper sheet of the hyperboloid <v,v> = -1, v_n > 0.
// Constructors renormalize timelike upper-sheet vectors onto the sheet
// (v -> v / sqrt(-<v,v>)) instead of rejecting near-misses.
class HPoint {
  public:
    explicit HPoint(Vec v);

    const Vec& coords() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()) - 1; }
    double time() const { return v_[v_.size() - 1]; }

  private:
    Vec v_;
};

// Tangent vector at a base point: <dir, base> = 0. Built through
// project_to_tangent or by generators that guarantee tangency.
struct HTangent {
    HPoint base;
    Vec dir;

    double norm_sq() const { return minkowski_inner(dir, dir); }
    double norm() const;
};

double minkowski_inner(const HPoint& p, const HPoint& q);

// acosh(-<p,q>). Throws InvalidPoint when -<p,q> < 1 beyond kTauPoint.
double h_distance(const HPoint& p, const HPoint& q);

// Tangential projection w + <w,p> p.
HTangent project_to_tangent(const HPoint& p, const Vec& w);

// Unit-speed geodesic gamma(t) = base cosh t + dir sinh t, <dir,dir> = 1.
class GeodesicLine {
  public:
    GeodesicLine(HPoint base, Vec dir);

    HPoint point_at(double t) const;
    HTangent tangent_at(double t) const;

    const HPoint& base() const { return base_; }
    const Vec& dir() const { return dir_; }

  private:
    HPoint base_;
    Vec dir_;  // unit spacelike, tangent at base_
};

// The geodesic through p in the direction of q, with p = point_at(0)
// and q = point_at(h_distance(p,q)). Throws InvalidPoint if p == q.
GeodesicLine geodesic_between(const HPoint& p, const HPoint& q);

// Point at fraction s in [0, 1] along the geodesic segment from p to q:
//   (sinh((1-s) D) p + sinh(s D) q) / sinh(D).
// Interpolating between the endpoints stays accurate where the
// line-parameterization cosh/sinh form cancels catastrophically.
HPoint geodesic_interpolate(const HPoint& p, const HPoint& q, double s);

// Hyperplane normal^perp intersected with H^n, for a unit spacelike normal.
class DualHyperplane {
  public:
    explicit DualHyperplane(Vec normal);
    const Vec& normal() const { return normal_; }

  private:
    Vec normal_;
};

// Distance between dual hyperplanes: acosh(|<n_P,n_Q>|) when the normals
// span a subspace of signature (1,1) (disjoint or tangent planes), nullopt
// when |<n_P,n_Q>| < 1 (the planes intersect in H^n).
std::optional<double> dual_plane_distance(const DualHyperplane& P, const DualHyperplane& Q);

}  // namespace hypgeo
