#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hypgeo/errors.hpp"

namespace hypgeo {

// Transition profile for the tube metric: phi == 1 for r <= -2, phi == 0
// for r >= -1, 0 <= phi <= 1, with closed-form first and second derivatives.
struct BumpFunction {
    std::string name;
    std::function<double(double)> phi, dphi, d2phi;
};

// C2 quintic smoothstep transition.
BumpFunction smoothstep_bump();
// C-infinity transition built from exp(-1/x).
BumpFunction exp_bump();
BumpFunction bump_by_name(const std::string& name);  // "smoothstep" | "exp"

// Warped-product metric dr^2 + f^2(r) dmu^2 + g^2(r) dlambda^2 on the
// solid torus, r in [r0, 0], interpolating the cusp form l e^r, e^r near
// the boundary into the non-singular core form 2 pi sinh(r - r0),
// 2 e^{r0} cosh(r - r0).
class TubeMetric {
  public:
    TubeMetric(double l, BumpFunction bump);  // throws MeridianTooShort if l < e^3 pi

    double l() const { return l_; }
    double r0() const { return r0_; }
    const BumpFunction& bump() const { return bump_; }

    double f(double r) const;
    double fp(double r) const;
    double fpp(double r) const;
    double g(double r) const;
    double gp(double r) const;
    double gpp(double r) const;

  private:
    double l_, r0_;
    BumpFunction bump_;
};

TubeMetric build_tube_metric(double l, const BumpFunction& bump);

struct CurvatureTriple {
    double k_ff;  // -f''/f
    double k_gg;  // -g''/g
    double k_fg;  // -(f' g')/(f g)

    double max_dev_from_minus_one() const;
};

// The three sectional-curvature functions at r; every sectional curvature
// of the metric is a convex combination of them. r must lie in (r0, 0]
// (f(r0) = 0 makes the quotients singular at the core).
CurvatureTriple curvature_triple(const TubeMetric& m, double r);

struct BoundaryFormReport {
    double dev_f_outer = 0.0;  // max |f - l e^r| on [-1, 0]
    double dev_g_outer = 0.0;  // max |g - e^r| on [-1, 0]
    double dev_f_inner = 0.0;  // max |f - 2 pi sinh(r-r0)| on [r0, -2]
    double dev_g_inner = 0.0;  // max |g - 2 e^{r0} cosh(r-r0)| on [r0, -2]
    double f_at_zero = 0.0;    // = l
    double g_at_zero = 0.0;    // = 1
    double f_at_core = 0.0;    // = 0
    double fp_at_core = 0.0;   // = 2 pi (cone angle 2 pi)
    double g_at_core = 0.0;    // = 2 e^{r0}

    double max_deviation() const;
};

BoundaryFormReport boundary_form_check(const TubeMetric& m, std::size_t samples = 4096);

struct PinchingReport {
    double l_emp = 0.0;       // l^2 * max |K + 1| over sampled (r0, 0]
    double l_formula = 0.0;   // the closed-form constant, maxed over [-2, -1]
    double exact_region_dev = 0.0;  // max |K + 1| outside the transition band
    std::size_t samples = 0;
};

// Samples the curvature triple on (r0, 0] (core offset 1e-6) and compares
// l^2 max|K+1| against the closed-form constant
//   max{ pi^2 e^4 |phi'' - 2 phi'| / (1 - e^-2),
//        pi^4 e^8 |2 phi phi' - phi'^2| / (1 - e^-4) }  over [-2, -1].
// Requires samples >= 1000.
PinchingReport pinching_verify(const TubeMetric& m, std::size_t samples = 100000);

// Length of the mu-circle at radius r: f(r). r in [r0, 0].
double meridian_length(const TubeMetric& m, double r);

// e^3 pi, the shortest admissible meridian.
double min_meridian_length();

}  // namespace hypgeo
