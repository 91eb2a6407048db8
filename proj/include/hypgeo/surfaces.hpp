#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypgeo/curves.hpp"
#include "hypgeo/hyperboloid.hpp"

namespace hypgeo {

// Rectangular (u,v)-grid of points on the hyperboloid model of H^3.
// An optional analytic chart backs off-grid evaluation (geodesic tracing);
// all curvature computations use finite differences on the grid.
struct ParamSurface {
    std::size_t nu = 0, nv = 0;
    double u0 = 0.0, v0 = 0.0;
    double du = 0.0, dv = 0.0;
    std::vector<HPoint> points;  // row-major, index iu * nv + iv
    std::function<HPoint(double, double)> chart;  // optional

    const HPoint& at(std::size_t iu, std::size_t iv) const { return points[iu * nv + iv]; }
    double u(std::size_t iu) const { return u0 + static_cast<double>(iu) * du; }
    double v(std::size_t iv) const { return v0 + static_cast<double>(iv) * dv; }

    static ParamSurface from_grid(std::size_t nu, std::size_t nv, double u0, double v0,
                                  double du, double dv, std::vector<HPoint> points);
    static ParamSurface from_chart(const std::function<HPoint(double, double)>& chart,
                                   double extent, double h);
};

// Interior-node fields with a margin of excluded boundary rings.
template <typename T>
struct GridField {
    std::size_t nu = 0, nv = 0;  // full grid dims
    std::size_t margin = 1;
    std::vector<T> values;       // (nu-2*margin) x (nv-2*margin), row-major

    std::size_t rows() const { return nu - 2 * margin; }
    std::size_t cols() const { return nv - 2 * margin; }
    const T& at(std::size_t iu, std::size_t iv) const {  // full-grid indices
        return values[(iu - margin) * cols() + (iv - margin)];
    }
    T& at(std::size_t iu, std::size_t iv) {
        return values[(iu - margin) * cols() + (iv - margin)];
    }
};

// First and second fundamental forms per interior node, plus the unit
// normal field used for II. II is symmetrized; the largest asymmetry seen
// before symmetrization is recorded.
struct FundamentalForms {
    GridField<Eigen::Matrix2d> I;
    GridField<Eigen::Matrix2d> II;
    GridField<Vec> normal;
    double max_asymmetry = 0.0;
};

// flip_normal negates the normal field (and therefore II).
FundamentalForms fundamental_forms(const ParamSurface& s, bool flip_normal = false);

struct PrincipalCurvatures {
    GridField<double> lambda1;  // lambda1 >= lambda2
    GridField<double> lambda2;
    double min1 = 0.0, max1 = 0.0, min2 = 0.0, max2 = 0.0;
};

PrincipalCurvatures principal_curvatures(const FundamentalForms& f);

// Gaussian curvature of the induced metric by the Brioschi formula with
// finite differences of the I field; defined two rings in from the boundary.
GridField<double> intrinsic_curvature(const FundamentalForms& f, double du, double dv);

// max over nodes of | K_intrinsic - (-1) - lambda1 * lambda2 |.
double gauss_residual(const ParamSurface& s);

struct CurvatureCertificate {
    double max_abs_principal = 0.0;
    std::optional<double> quasi;       // 1/sqrt(1 - K^2) when K < 1
    std::size_t probes = 0;            // traced intrinsic geodesics
    double probe_max_kappa = 0.0;      // worst ambient curvature seen
    bool probe_ok = true;              // probe_max_kappa <= K + 10 h
};

// With probe_geodesics > 0 (needs the analytic chart), traces that many
// seeded random intrinsic geodesics and checks that their ambient
// curvature stays below max_abs_principal + 10 h.
CurvatureCertificate small_curvature_certificate(const ParamSurface& s,
                                                 std::size_t probe_geodesics = 0,
                                                 unsigned long long seed = 0);

// Shoots a geodesic of the induced metric from (u_start, v_start) in grid
// direction theta, using Christoffel symbols finite-differenced from the I
// field and bilinearly interpolated. Steps of the grid size; stops at the
// safe interior margin. Needs the surface chart for ambient points.
SampledPath trace_intrinsic_geodesic(const ParamSurface& s, double u_start, double v_start,
                                     double theta, std::size_t max_steps);

// --- fixtures ---

// Totally geodesic plane x_2 = 0, Fermi chart (u,v).
ParamSurface make_geodesic_plane_patch(double extent, double h);
// Equidistant surface at distance d from the geodesic plane.
ParamSurface make_equidistant_patch(double d, double extent, double h);
// Horosphere x_3 = 1 of the upper half space, mapped to the hyperboloid.
ParamSurface make_horosphere_patch(double extent, double h);

// CSV grid: header line "nu,nv", then rows "iu,iv,x0,x1,x2,x3".
// Grid steps are not stored in the file and must be supplied.
ParamSurface load_surface_csv(const std::string& path, double du, double dv);
void write_surface_csv(const ParamSurface& s, const std::string& path);

}  // namespace hypgeo
