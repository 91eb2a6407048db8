#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hypgeo/hyperboloid.hpp"

namespace hypgeo {

constexpr double kUnitSpeedTol = 1e-3;

// Discretized unit-speed curve: uniformly spaced parameters t_i and points
// p_i on the hyperboloid. Externally supplied paths are validated, never
// reparameterized.
struct SampledPath {
    std::vector<double> ts;
    std::vector<HPoint> points;
    double unit_speed_tol = kUnitSpeedTol;

    std::size_t size() const { return points.size(); }
    double dt() const { return ts[1] - ts[0]; }

    // Checks: >= 5 samples, strictly increasing uniform spacing (1e-12),
    // |d(p_i, p_{i+1}) - dt| <= unit_speed_tol * dt.
    static SampledPath validated(std::vector<double> ts, std::vector<HPoint> points,
                                 double unit_speed_tol = kUnitSpeedTol);
};

enum class FdOrder { second, fourth };

// Interior index range [first_interior, size - 1 - first_interior] for the
// chosen stencil.
std::size_t stencil_margin(FdOrder order);

// Central finite differences for the ambient second derivative at sample i.
Vec ambient_second_derivative(const SampledPath& path, std::size_t i, FdOrder order = FdOrder::second);

// D(gamma-dot)/dt at p_i: ambient second difference followed by the
// tangential projection w -> w + <w,p> p.
HTangent covariant_accel(const SampledPath& path, std::size_t i, FdOrder order = FdOrder::second);

struct CurvatureProfile {
    std::vector<double> values;  // kappa_i >= 0, aligned with interior samples
    std::size_t first_index = 0; // path index of values[0]
    double max_kappa = 0.0;
};

CurvatureProfile geodesic_curvature(const SampledPath& path, FdOrder order = FdOrder::second);

// max_i | <gdd_i, gdd_i> - (kappa_i^2 - 1) | over interior samples; the
// ambient acceleration of a unit-speed path has norm squared kappa^2 - 1.
double accel_identity_residual(const SampledPath& path, FdOrder order = FdOrder::second);

// 1 / sqrt(1 - K^2) for 0 <= K < 1; throws CurvatureTooLarge otherwise.
double quasi_constant(double K);

struct QuasiGeodesicReport {
    double k = 1.0;
    double lower_violation = 0.0;   // max over pairs of ((1/k)|t-t'| - d)^+
    double upper_violation = 0.0;   // max over pairs of (d - |t-t'|)^+ (unit-speed check)
    double chord_hausdorff = 0.0;
};

// Checks the k-quasi-geodesic lower bound over all sample pairs (c = 0).
QuasiGeodesicReport verify_quasi_geodesic(const SampledPath& path, double k);

// Symmetric Hausdorff distance between the samples and the geodesic segment
// joining the endpoints, the latter sampled at dt/2.
double chord_hausdorff(const SampledPath& path);

// Cumulative trapezoid integral of sqrt(1 - kappa^2); throws
// CurvatureTooLarge when any kappa_i >= 1. Result aligned with the profile.
std::vector<double> displacement_integral(const CurvatureProfile& profile, double dt);

// max_j (Delta_j - d(p_first, p_(first+j)))^+ : the displacement never
// exceeds the point displacement.
double displacement_bound_violation(const SampledPath& path, const CurvatureProfile& profile,
                                    const std::vector<double>& deltas);

// --- fixture generators (analytic unit-speed parameterizations in H^2) ---

SampledPath make_geodesic_path(double length, double dt);

// Equidistant curve (hypercycle) at distance d from a geodesic axis;
// d = 0 degenerates to the axis itself. Geodesic curvature tanh d.
SampledPath make_equidistant_curve(double d, double length, double dt);

// Circle of hyperbolic radius rho; geodesic curvature coth rho.
SampledPath make_circle(double rho, double length, double dt);

// Horocycle (x_2 = 1 in the upper half plane); geodesic curvature 1.
SampledPath make_horocycle(double length, double dt);

// Integrates the frame ODE gamma' = T, T' = kappa(t) N + gamma, N' = -kappa(t) T
// with RK4 and per-step reorthonormalization, producing a unit-speed path
// with prescribed geodesic curvature. fine_substeps RK4 steps per sample.
SampledPath make_prescribed_curvature_path(const std::function<double(double)>& kappa,
                                           double length, double dt, int fine_substeps = 8);

// Arc-length resampling for externally supplied point sequences that are
// not unit speed: accumulates chord lengths and re-samples at uniform arc
// steps dt by geodesic interpolation between the bracketing input points.
SampledPath resample_by_arc_length(const std::vector<HPoint>& points, double dt,
                                   double unit_speed_tol = kUnitSpeedTol);

}  // namespace hypgeo
