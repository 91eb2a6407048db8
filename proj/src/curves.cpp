#include "hypgeo/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypgeo/models.hpp"

namespace hypgeo {

SampledPath SampledPath::validated(std::vector<double> ts, std::vector<HPoint> points,
                                   double unit_speed_tol) {
    if (ts.size() != points.size())
        throw InputError("SampledPath: ts and points must have equal length");
    if (points.size() < 5)
        throw InputError("SampledPath: at least 5 samples required");
    const double dt = ts[1] - ts[0];
    if (!(dt > 0.0))
        throw InputError("SampledPath: parameters must be strictly increasing");
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (std::abs((ts[i + 1] - ts[i]) - dt) > 1e-12)
            throw InputError("SampledPath: non-uniform parameter spacing");
    }
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double step = h_distance(points[i], points[i + 1]);
        if (std::abs(step - dt) > unit_speed_tol * dt)
            throw InputError("SampledPath: path is not unit speed within tolerance");
    }
    SampledPath p;
    p.ts = std::move(ts);
    p.points = std::move(points);
    p.unit_speed_tol = unit_speed_tol;
    return p;
}

std::size_t stencil_margin(FdOrder order) { return order == FdOrder::second ? 1 : 2; }

Vec ambient_second_derivative(const SampledPath& path, std::size_t i, FdOrder order) {
    const std::size_t m = stencil_margin(order);
    if (i < m || i + m >= path.size())
        throw InputError("ambient_second_derivative: index outside interior stencil range");
    const double dt = path.dt();
    const auto& p = path.points;
    if (order == FdOrder::second)
        return (p[i - 1].coords() - 2.0 * p[i].coords() + p[i + 1].coords()) / (dt * dt);
    return (-p[i - 2].coords() + 16.0 * p[i - 1].coords() - 30.0 * p[i].coords() +
            16.0 * p[i + 1].coords() - p[i + 2].coords()) /
           (12.0 * dt * dt);
}

HTangent covariant_accel(const SampledPath& path, std::size_t i, FdOrder order) {
    return project_to_tangent(path.points[i], ambient_second_derivative(path, i, order));
}

CurvatureProfile geodesic_curvature(const SampledPath& path, FdOrder order) {
    const std::size_t m = stencil_margin(order);
    CurvatureProfile profile;
    profile.first_index = m;
    profile.values.reserve(path.size() - 2 * m);
    for (std::size_t i = m; i + m < path.size(); ++i)
        profile.values.push_back(covariant_accel(path, i, order).norm());
    profile.max_kappa = *std::max_element(profile.values.begin(), profile.values.end());
    return profile;
}

double accel_identity_residual(const SampledPath& path, FdOrder order) {
    const std::size_t m = stencil_margin(order);
    double worst = 0.0;
    for (std::size_t i = m; i + m < path.size(); ++i) {
        const Vec gdd = ambient_second_derivative(path, i, order);
        const double kappa = project_to_tangent(path.points[i], gdd).norm();
        const double lhs = minkowski_norm_sq(gdd);
        worst = std::max(worst, std::abs(lhs - (kappa * kappa - 1.0)));
    }
    return worst;
}

double quasi_constant(double K) {
    if (K < 0.0)
        throw InputError("quasi_constant: K must be nonnegative");
    if (K >= 1.0)
        throw CurvatureTooLarge("quasi_constant: requires K < 1");
    return 1.0 / std::sqrt(1.0 - K * K);
}

QuasiGeodesicReport verify_quasi_geodesic(const SampledPath& path, double k) {
    if (k < 1.0)
        throw InputError("verify_quasi_geodesic: k must be >= 1");
    QuasiGeodesicReport report;
    report.k = k;
    const std::size_t n = path.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dparam = path.ts[j] - path.ts[i];
            const double d = h_distance(path.points[i], path.points[j]);
            report.lower_violation = std::max(report.lower_violation, dparam / k - d);
            report.upper_violation = std::max(report.upper_violation, d - dparam);
        }
    }
    report.lower_violation = std::max(report.lower_violation, 0.0);
    report.upper_violation = std::max(report.upper_violation, 0.0);
    report.chord_hausdorff = chord_hausdorff(path);
    return report;
}

double chord_hausdorff(const SampledPath& path) {
    const HPoint& a = path.points.front();
    const HPoint& b = path.points.back();
    const double span = h_distance(a, b);
    if (span < kTauPoint)
        throw InvalidPoint("chord_hausdorff: coincident endpoints");
    const double step = path.dt() / 2.0;
    const auto nseg = static_cast<std::size_t>(std::ceil(span / step)) + 1;
    std::vector<HPoint> seg;
    seg.reserve(nseg);
    for (std::size_t i = 0; i < nseg; ++i) {
        const double s = std::min(1.0, static_cast<double>(i) * step / span);
        seg.push_back(geodesic_interpolate(a, b, s));
    }

    double sup_path = 0.0;  // sup over path samples of dist to segment
    std::vector<double> seg_min(seg.size(), std::numeric_limits<double>::infinity());
    for (const HPoint& p : path.points) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < seg.size(); ++j) {
            const double d = h_distance(p, seg[j]);
            best = std::min(best, d);
            seg_min[j] = std::min(seg_min[j], d);
        }
        sup_path = std::max(sup_path, best);
    }
    const double sup_seg = *std::max_element(seg_min.begin(), seg_min.end());
    return std::max(sup_path, sup_seg);
}

std::vector<double> displacement_integral(const CurvatureProfile& profile, double dt) {
    if (!(dt > 0.0))
        throw InputError("displacement_integral: dt must be positive");
    for (double kappa : profile.values)
        if (kappa >= 1.0)
            throw CurvatureTooLarge("displacement_integral: requires kappa < 1 everywhere");
    std::vector<double> deltas(profile.values.size(), 0.0);
    auto speed = [](double kappa) { return std::sqrt(1.0 - kappa * kappa); };
    for (std::size_t i = 1; i < deltas.size(); ++i)
        deltas[i] = deltas[i - 1] + 0.5 * dt * (speed(profile.values[i - 1]) + speed(profile.values[i]));
    return deltas;
}

double displacement_bound_violation(const SampledPath& path, const CurvatureProfile& profile,
                                    const std::vector<double>& deltas) {
    if (deltas.size() != profile.values.size())
        throw InputError("displacement_bound_violation: profile/deltas size mismatch");
    const std::size_t off = profile.first_index;
    double worst = 0.0;
    for (std::size_t j = 0; j < deltas.size(); ++j) {
        const double d = h_distance(path.points[off], path.points[off + j]);
        worst = std::max(worst, deltas[j] - d);
    }
    return worst;
}

namespace {

std::vector<double> uniform_params(double length, double dt) {
    if (!(length > 0.0) || !(dt > 0.0))
        throw InputError("curve generator: length and dt must be positive");
    const auto n = static_cast<std::size_t>(std::floor(length / dt + 0.5)) + 1;
    if (n < 5)
        throw InputError("curve generator: fewer than 5 samples, reduce dt");
    std::vector<double> ts(n);
    for (std::size_t i = 0; i < n; ++i)
        ts[i] = static_cast<double>(i) * dt;
    return ts;
}

SampledPath from_chart(const std::function<HPoint(double)>& chart, double length, double dt) {
    auto ts = uniform_params(length, dt);
    std::vector<HPoint> pts;
    pts.reserve(ts.size());
    // center the arc on the chart origin: coordinates grow like e^{|t|},
    // so [-L/2, L/2] keeps long arcs numerically tame
    const double mid = 0.5 * (ts.front() + ts.back());
    for (double t : ts)
        pts.push_back(chart(t - mid));
    return SampledPath::validated(std::move(ts), std::move(pts));
}

}  // namespace

SampledPath make_geodesic_path(double length, double dt) {
    return from_chart(
        [](double t) {
            Vec v(3);
            v << std::sinh(t), 0.0, std::cosh(t);
            return HPoint(std::move(v));
        },
        length, dt);
}

SampledPath make_equidistant_curve(double d, double length, double dt) {
    if (d < 0.0)
        throw InputError("make_equidistant_curve: d must be nonnegative");
    const double cd = std::cosh(d);
    const double sd = std::sinh(d);
    return from_chart(
        [cd, sd](double t) {
            Vec v(3);
            v << std::sinh(t / cd) * cd, sd, std::cosh(t / cd) * cd;
            return HPoint(std::move(v));
        },
        length, dt);
}

SampledPath make_circle(double rho, double length, double dt) {
    if (!(rho > 0.0))
        throw InputError("make_circle: radius must be positive");
    const double sr = std::sinh(rho);
    const double cr = std::cosh(rho);
    return from_chart(
        [sr, cr](double t) {
            Vec v(3);
            v << sr * std::cos(t / sr), sr * std::sin(t / sr), cr;
            return HPoint(std::move(v));
        },
        length, dt);
}

SampledPath make_horocycle(double length, double dt) {
    return from_chart(
        [](double t) {
            Vec x(2);
            x << t, 1.0;
            return uhs_to_hyperboloid(UHSPoint(std::move(x)));
        },
        length, dt);
}

namespace {

struct Frame {
    Vec gamma, T, N;

    // Project back onto the hyperboloid and Minkowski-orthonormalize.
    void restore() {
        gamma /= std::sqrt(-minkowski_norm_sq(gamma));
        T += minkowski_inner(T, gamma) * gamma;
        T /= std::sqrt(minkowski_norm_sq(T));
        N += minkowski_inner(N, gamma) * gamma;
        N -= minkowski_inner(N, T) * T;
        N /= std::sqrt(minkowski_norm_sq(N));
    }
};

}  // namespace

SampledPath make_prescribed_curvature_path(const std::function<double(double)>& kappa,
                                           double length, double dt, int fine_substeps) {
    if (fine_substeps < 1)
        throw InputError("make_prescribed_curvature_path: fine_substeps must be >= 1");
    auto ts = uniform_params(length, dt);

    Frame f;
    f.gamma = Vec(3);
    f.gamma << 0.0, 0.0, 1.0;
    f.T = Vec(3);
    f.T << 1.0, 0.0, 0.0;
    f.N = Vec(3);
    f.N << 0.0, 1.0, 0.0;

    auto deriv = [&kappa](double t, const Frame& s) {
        Frame d;
        d.gamma = s.T;
        d.T = kappa(t) * s.N + s.gamma;
        d.N = -kappa(t) * s.T;
        return d;
    };
    auto axpy = [](const Frame& a, double c, const Frame& b) {
        Frame r;
        r.gamma = a.gamma + c * b.gamma;
        r.T = a.T + c * b.T;
        r.N = a.N + c * b.N;
        return r;
    };

    const double h = dt / fine_substeps;
    std::vector<HPoint> pts;
    pts.reserve(ts.size());
    pts.emplace_back(f.gamma);
    double t = 0.0;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        for (int s = 0; s < fine_substeps; ++s) {
            const Frame k1 = deriv(t, f);
            const Frame k2 = deriv(t + h / 2, axpy(f, h / 2, k1));
            const Frame k3 = deriv(t + h / 2, axpy(f, h / 2, k2));
            const Frame k4 = deriv(t + h, axpy(f, h, k3));
            f.gamma += (h / 6) * (k1.gamma + 2 * k2.gamma + 2 * k3.gamma + k4.gamma);
            f.T += (h / 6) * (k1.T + 2 * k2.T + 2 * k3.T + k4.T);
            f.N += (h / 6) * (k1.N + 2 * k2.N + 2 * k3.N + k4.N);
            f.restore();
            t += h;
        }
        pts.emplace_back(f.gamma);
    }
    return SampledPath::validated(std::move(ts), std::move(pts));
}

SampledPath resample_by_arc_length(const std::vector<HPoint>& points, double dt,
                                   double unit_speed_tol) {
    if (points.size() < 2)
        throw InputError("resample_by_arc_length: at least 2 points required");
    if (!(dt > 0.0))
        throw InputError("resample_by_arc_length: dt must be positive");
    std::vector<double> arc(points.size(), 0.0);
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double step = h_distance(points[i - 1], points[i]);
        if (step <= 0.0)
            throw InputError("resample_by_arc_length: repeated input point");
        arc[i] = arc[i - 1] + step;
    }
    const auto n = static_cast<std::size_t>(std::floor(arc.back() / dt)) + 1;
    if (n < 5)
        throw InputError("resample_by_arc_length: fewer than 5 output samples, reduce dt");
    std::vector<double> ts(n);
    std::vector<HPoint> out;
    out.reserve(n);
    std::size_t seg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double target = std::min(static_cast<double>(i) * dt, arc.back());
        ts[i] = static_cast<double>(i) * dt;
        while (seg + 2 < arc.size() && arc[seg + 1] < target)
            ++seg;
        const double span = arc[seg + 1] - arc[seg];
        out.push_back(geodesic_interpolate(points[seg], points[seg + 1],
                                           std::clamp((target - arc[seg]) / span, 0.0, 1.0)));
    }
    return SampledPath::validated(std::move(ts), std::move(out), unit_speed_tol);
}

}  // namespace hypgeo
