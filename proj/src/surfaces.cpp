#include "hypgeo/surfaces.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "hypgeo/models.hpp"

namespace hypgeo {

namespace {

// Euclidean generalized cross product in R^4: w orthogonal to a, b, c.
Vec cross4(const Vec& a, const Vec& b, const Vec& c) {
    Vec w(4);
    for (int i = 0; i < 4; ++i) {
        Eigen::Matrix3d m;
        int col = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            m(0, col) = a[j];
            m(1, col) = b[j];
            m(2, col) = c[j];
            ++col;
        }
        w[i] = ((i % 2) == 0 ? 1.0 : -1.0) * m.determinant();
    }
    return w;
}

Vec apply_j(const Vec& v) {
    Vec r = v;
    r[r.size() - 1] = -r[r.size() - 1];
    return r;
}

double det4(const Vec& c0, const Vec& c1, const Vec& c2, const Vec& c3) {
    Eigen::Matrix4d m;
    m.col(0) = c0;
    m.col(1) = c1;
    m.col(2) = c2;
    m.col(3) = c3;
    return m.determinant();
}

}  // namespace

ParamSurface ParamSurface::from_grid(std::size_t nu, std::size_t nv, double u0, double v0,
                                     double du, double dv, std::vector<HPoint> points) {
    if (nu < 5 || nv < 5)
        throw InputError("ParamSurface: grid must be at least 5x5");
    if (!(du > 0.0) || !(dv > 0.0))
        throw InputError("ParamSurface: grid steps must be positive");
    if (points.size() != nu * nv)
        throw InputError("ParamSurface: wrong number of grid points");
    for (const HPoint& p : points)
        if (p.dim() != 3)
            throw DimensionMismatch("ParamSurface: points must lie in H^3");
    ParamSurface s;
    s.nu = nu;
    s.nv = nv;
    s.u0 = u0;
    s.v0 = v0;
    s.du = du;
    s.dv = dv;
    s.points = std::move(points);
    return s;
}

ParamSurface ParamSurface::from_chart(const std::function<HPoint(double, double)>& chart,
                                      double extent, double h) {
    if (!(extent > 0.0) || !(h > 0.0))
        throw InputError("ParamSurface: extent and step must be positive");
    const auto half = static_cast<std::size_t>(std::floor(extent / h + 1e-12));
    const std::size_t n = 2 * half + 1;
    if (n < 5)
        throw InputError("ParamSurface: grid must be at least 5x5, reduce step");
    const double start = -static_cast<double>(half) * h;
    std::vector<HPoint> pts;
    pts.reserve(n * n);
    for (std::size_t iu = 0; iu < n; ++iu)
        for (std::size_t iv = 0; iv < n; ++iv)
            pts.push_back(chart(start + static_cast<double>(iu) * h,
                                start + static_cast<double>(iv) * h));
    ParamSurface s = from_grid(n, n, start, start, h, h, std::move(pts));
    s.chart = chart;
    return s;
}

FundamentalForms fundamental_forms(const ParamSurface& s, bool flip_normal) {
    FundamentalForms f;
    f.I.nu = f.II.nu = f.normal.nu = s.nu;
    f.I.nv = f.II.nv = f.normal.nv = s.nv;
    f.I.margin = f.II.margin = f.normal.margin = 1;
    const std::size_t rows = s.nu - 2, cols = s.nv - 2;
    f.I.values.resize(rows * cols);
    f.II.values.resize(rows * cols);
    f.normal.values.resize(rows * cols);

    const double du = s.du, dv = s.dv;
    for (std::size_t iu = 1; iu + 1 < s.nu; ++iu) {
        for (std::size_t iv = 1; iv + 1 < s.nv; ++iv) {
            const Vec& c = s.at(iu, iv).coords();
            const Vec xu = (s.at(iu + 1, iv).coords() - s.at(iu - 1, iv).coords()) / (2 * du);
            const Vec xv = (s.at(iu, iv + 1).coords() - s.at(iu, iv - 1).coords()) / (2 * dv);
            const Vec xuu = (s.at(iu + 1, iv).coords() - 2 * c + s.at(iu - 1, iv).coords()) / (du * du);
            const Vec xvv = (s.at(iu, iv + 1).coords() - 2 * c + s.at(iu, iv - 1).coords()) / (dv * dv);
            const Vec xuv = (s.at(iu + 1, iv + 1).coords() - s.at(iu + 1, iv - 1).coords() -
                             s.at(iu - 1, iv + 1).coords() + s.at(iu - 1, iv - 1).coords()) /
                            (4 * du * dv);

            Eigen::Matrix2d I;
            I(0, 0) = minkowski_inner(xu, xu);
            I(0, 1) = I(1, 0) = minkowski_inner(xu, xv);
            I(1, 1) = minkowski_inner(xv, xv);
            if (!(I(0, 0) > 0.0) || !(I.determinant() > 1e-14 * I(0, 0) * I(1, 1)))
                throw DomainError("fundamental_forms: degenerate tangent plane");

            // Minkowski-orthogonal complement of {c, xu, xv}: w with
            // w . x = 0 euclidean gives <Jw, x> = 0 in the form.
            Vec eta = apply_j(cross4(c, xu, xv));
            const double n2 = minkowski_norm_sq(eta);
            if (!(n2 > 0.0))
                throw DomainError("fundamental_forms: normal is not spacelike");
            eta /= std::sqrt(n2);
            if (det4(c, xu, xv, eta) < 0.0)
                eta = -eta;
            if (flip_normal)
                eta = -eta;

            // <proj(x_ab), eta> = <x_ab, eta> since <c, eta> = 0.
            Eigen::Matrix2d II;
            II(0, 0) = minkowski_inner(xuu, eta);
            II(1, 1) = minkowski_inner(xvv, eta);
            II(0, 1) = II(1, 0) = minkowski_inner(xuv, eta);
            f.max_asymmetry = std::max(f.max_asymmetry, std::abs(II(0, 1) - II(1, 0)));

            f.I.at(iu, iv) = I;
            f.II.at(iu, iv) = 0.5 * (II + II.transpose());
            f.normal.at(iu, iv) = eta;
        }
    }
    return f;
}

PrincipalCurvatures principal_curvatures(const FundamentalForms& f) {
    PrincipalCurvatures pc;
    pc.lambda1.nu = pc.lambda2.nu = f.I.nu;
    pc.lambda1.nv = pc.lambda2.nv = f.I.nv;
    pc.lambda1.margin = pc.lambda2.margin = f.I.margin;
    pc.lambda1.values.resize(f.I.values.size());
    pc.lambda2.values.resize(f.I.values.size());
    pc.min1 = pc.min2 = std::numeric_limits<double>::infinity();
    pc.max1 = pc.max2 = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < f.I.values.size(); ++i) {
        const Eigen::Matrix2d& I = f.I.values[i];
        if (!(I.determinant() > 0.0))
            throw DomainError("principal_curvatures: singular first fundamental form");
        const Eigen::Matrix2d S = I.inverse() * f.II.values[i];
        const double tr = S.trace();
        const double det = S.determinant();
        // The pencil (I, II) is symmetric, so the eigenvalues are real;
        // clamp the roundoff-negative discriminant.
        const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
        const double l1 = 0.5 * (tr + disc);
        const double l2 = 0.5 * (tr - disc);
        pc.lambda1.values[i] = l1;
        pc.lambda2.values[i] = l2;
        pc.min1 = std::min(pc.min1, l1);
        pc.max1 = std::max(pc.max1, l1);
        pc.min2 = std::min(pc.min2, l2);
        pc.max2 = std::max(pc.max2, l2);
    }
    return pc;
}

GridField<double> intrinsic_curvature(const FundamentalForms& f, double du, double dv) {
    const auto& I = f.I;
    GridField<double> K;
    K.nu = I.nu;
    K.nv = I.nv;
    K.margin = I.margin + 1;
    K.values.resize(K.rows() * K.cols());

    auto E = [&I](std::size_t iu, std::size_t iv) { return I.at(iu, iv)(0, 0); };
    auto F = [&I](std::size_t iu, std::size_t iv) { return I.at(iu, iv)(0, 1); };
    auto G = [&I](std::size_t iu, std::size_t iv) { return I.at(iu, iv)(1, 1); };

    for (std::size_t iu = K.margin; iu + K.margin < K.nu; ++iu) {
        for (std::size_t iv = K.margin; iv + K.margin < K.nv; ++iv) {
            const double e = E(iu, iv), ff = F(iu, iv), g = G(iu, iv);
            const double E_u = (E(iu + 1, iv) - E(iu - 1, iv)) / (2 * du);
            const double E_v = (E(iu, iv + 1) - E(iu, iv - 1)) / (2 * dv);
            const double G_u = (G(iu + 1, iv) - G(iu - 1, iv)) / (2 * du);
            const double G_v = (G(iu, iv + 1) - G(iu, iv - 1)) / (2 * dv);
            const double F_u = (F(iu + 1, iv) - F(iu - 1, iv)) / (2 * du);
            const double F_v = (F(iu, iv + 1) - F(iu, iv - 1)) / (2 * dv);
            const double E_vv = (E(iu, iv + 1) - 2 * e + E(iu, iv - 1)) / (dv * dv);
            const double G_uu = (G(iu + 1, iv) - 2 * g + G(iu - 1, iv)) / (du * du);
            const double F_uv = (F(iu + 1, iv + 1) - F(iu + 1, iv - 1) - F(iu - 1, iv + 1) +
                                 F(iu - 1, iv - 1)) /
                                (4 * du * dv);

            Eigen::Matrix3d A, B;
            A << -0.5 * E_vv + F_uv - 0.5 * G_uu, 0.5 * E_u, F_u - 0.5 * E_v,
                 F_v - 0.5 * G_u, e, ff,
                 0.5 * G_v, ff, g;
            B << 0.0, 0.5 * E_v, 0.5 * G_u,
                 0.5 * E_v, e, ff,
                 0.5 * G_u, ff, g;
            const double W = e * g - ff * ff;
            K.at(iu, iv) = (A.determinant() - B.determinant()) / (W * W);
        }
    }
    return K;
}

double gauss_residual(const ParamSurface& s) {
    const FundamentalForms f = fundamental_forms(s);
    const PrincipalCurvatures pc = principal_curvatures(f);
    const GridField<double> K = intrinsic_curvature(f, s.du, s.dv);
    double worst = 0.0;
    for (std::size_t iu = K.margin; iu + K.margin < K.nu; ++iu)
        for (std::size_t iv = K.margin; iv + K.margin < K.nv; ++iv)
            worst = std::max(worst, std::abs(K.at(iu, iv) - (-1.0) -
                                             pc.lambda1.at(iu, iv) * pc.lambda2.at(iu, iv)));
    return worst;
}

CurvatureCertificate small_curvature_certificate(const ParamSurface& s,
                                                 std::size_t probe_geodesics,
                                                 unsigned long long seed) {
    const PrincipalCurvatures pc = principal_curvatures(fundamental_forms(s));
    CurvatureCertificate cert;
    cert.max_abs_principal = std::max(std::max(std::abs(pc.min1), std::abs(pc.max1)),
                                      std::max(std::abs(pc.min2), std::abs(pc.max2)));
    if (cert.max_abs_principal < 1.0)
        cert.quasi = 1.0 / std::sqrt(1.0 - cert.max_abs_principal * cert.max_abs_principal);
    if (probe_geodesics == 0)
        return cert;

    // trace seeded intrinsic geodesics from the middle of the chart and
    // check their ambient curvature against the principal-curvature bound
    std::mt19937_64 rng(seed);
    const std::size_t cu = s.nu / 2, cv = s.nv / 2;
    const double uc = s.u(cu), vc = s.v(cv);
    // keep start + arc inside the safe interior box of the tracer
    const double safe_u = (static_cast<double>(cu) - 3.0) * s.du;
    const double safe_v = (static_cast<double>(cv) - 3.0) * s.dv;
    if (safe_u <= 0.0 || safe_v <= 0.0)
        throw InputError("small_curvature_certificate: grid too small for geodesic probes");
    std::uniform_real_distribution<double> du(-0.4 * safe_u, 0.4 * safe_u);
    std::uniform_real_distribution<double> dv(-0.4 * safe_v, 0.4 * safe_v);
    std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
    const auto steps = static_cast<std::size_t>(0.5 * std::min(safe_u, safe_v) / s.du);
    for (std::size_t trial = 0; trial < probe_geodesics; ++trial) {
        const auto path = trace_intrinsic_geodesic(s, uc + du(rng), vc + dv(rng), ang(rng),
                                                   std::max<std::size_t>(steps, 4));
        cert.probe_max_kappa = std::max(cert.probe_max_kappa,
                                        geodesic_curvature(path).max_kappa);
    }
    cert.probes = probe_geodesics;
    cert.probe_ok = cert.probe_max_kappa <= cert.max_abs_principal + 10.0 * s.du;
    return cert;
}

namespace {

struct MetricSampler {
    const ParamSurface& s;
    GridField<Eigen::Matrix2d> I;          // margin 1
    GridField<Eigen::Matrix2d> gamma_u;    // Christoffel Gamma^1_{ab}, margin 2
    GridField<Eigen::Matrix2d> gamma_v;    // Gamma^2_{ab}, margin 2

    explicit MetricSampler(const ParamSurface& surf) : s(surf) {
        I = fundamental_forms(surf).I;
        gamma_u.nu = gamma_v.nu = s.nu;
        gamma_u.nv = gamma_v.nv = s.nv;
        gamma_u.margin = gamma_v.margin = 2;
        gamma_u.values.resize(gamma_u.rows() * gamma_u.cols());
        gamma_v.values.resize(gamma_u.values.size());
        for (std::size_t iu = 2; iu + 2 < s.nu; ++iu)
            for (std::size_t iv = 2; iv + 2 < s.nv; ++iv)
                fill_christoffel(iu, iv);
    }

    void fill_christoffel(std::size_t iu, std::size_t iv) {
        auto E = [this](std::size_t a, std::size_t b) { return I.at(a, b)(0, 0); };
        auto F = [this](std::size_t a, std::size_t b) { return I.at(a, b)(0, 1); };
        auto G = [this](std::size_t a, std::size_t b) { return I.at(a, b)(1, 1); };
        const double e = E(iu, iv), f = F(iu, iv), g = G(iu, iv);
        const double E_u = (E(iu + 1, iv) - E(iu - 1, iv)) / (2 * s.du);
        const double E_v = (E(iu, iv + 1) - E(iu, iv - 1)) / (2 * s.dv);
        const double G_u = (G(iu + 1, iv) - G(iu - 1, iv)) / (2 * s.du);
        const double G_v = (G(iu, iv + 1) - G(iu, iv - 1)) / (2 * s.dv);
        const double F_u = (F(iu + 1, iv) - F(iu - 1, iv)) / (2 * s.du);
        const double F_v = (F(iu, iv + 1) - F(iu, iv - 1)) / (2 * s.dv);
        const double W = 2.0 * (e * g - f * f);

        Eigen::Matrix2d cu, cv;
        cu(0, 0) = (g * E_u - 2 * f * F_u + f * E_v) / W;
        cu(0, 1) = cu(1, 0) = (g * E_v - f * G_u) / W;
        cu(1, 1) = (2 * g * F_v - g * G_u - f * G_v) / W;
        cv(0, 0) = (2 * e * F_u - e * E_v - f * E_u) / W;
        cv(0, 1) = cv(1, 0) = (e * G_u - f * E_v) / W;
        cv(1, 1) = (e * G_v - 2 * f * F_v + f * G_u) / W;
        gamma_u.at(iu, iv) = cu;
        gamma_v.at(iu, iv) = cv;
    }

    bool in_safe_box(double u, double v) const {
        const double ulo = s.u(2), uhi = s.u(s.nu - 3);
        const double vlo = s.v(2), vhi = s.v(s.nv - 3);
        return u >= ulo && u <= uhi && v >= vlo && v <= vhi;
    }

    template <typename FieldT>
    auto bilinear(const GridField<FieldT>& field, double u, double v) const {
        double fu = (u - s.u0) / s.du;
        double fv = (v - s.v0) / s.dv;
        auto iu = static_cast<std::size_t>(fu);
        auto iv = static_cast<std::size_t>(fv);
        iu = std::min(std::max<std::size_t>(iu, field.margin), s.nu - 2 - field.margin);
        iv = std::min(std::max<std::size_t>(iv, field.margin), s.nv - 2 - field.margin);
        const double a = fu - static_cast<double>(iu);
        const double b = fv - static_cast<double>(iv);
        return ((1 - a) * (1 - b) * field.at(iu, iv) + a * (1 - b) * field.at(iu + 1, iv) +
                (1 - a) * b * field.at(iu, iv + 1) + a * b * field.at(iu + 1, iv + 1))
            .eval();
    }
};

}  // namespace

SampledPath trace_intrinsic_geodesic(const ParamSurface& s, double u_start, double v_start,
                                     double theta, std::size_t max_steps) {
    if (!s.chart)
        throw InputError("trace_intrinsic_geodesic: surface has no analytic chart");
    if (s.nu < 7 || s.nv < 7)
        throw InputError("trace_intrinsic_geodesic: grid too small (needs 7x7)");
    MetricSampler ms(s);
    if (!ms.in_safe_box(u_start, v_start))
        throw InputError("trace_intrinsic_geodesic: start point outside safe interior");

    using State = Eigen::Vector4d;  // (u, v, udot, vdot)
    auto rhs = [&ms](const State& x) {
        const Eigen::Matrix2d cu = ms.bilinear(ms.gamma_u, x[0], x[1]);
        const Eigen::Matrix2d cv = ms.bilinear(ms.gamma_v, x[0], x[1]);
        const Eigen::Vector2d w(x[2], x[3]);
        State d;
        d[0] = x[2];
        d[1] = x[3];
        d[2] = -w.dot(cu * w);
        d[3] = -w.dot(cv * w);
        return d;
    };
    auto unit_speed = [&ms](State& x) {
        const Eigen::Matrix2d I = ms.bilinear(ms.I, x[0], x[1]);
        const Eigen::Vector2d w(x[2], x[3]);
        const double sp = std::sqrt(w.dot(I * w));
        x[2] /= sp;
        x[3] /= sp;
    };

    State x;
    x << u_start, v_start, std::cos(theta), std::sin(theta);
    unit_speed(x);

    const double h = s.du;
    std::vector<double> ts;
    std::vector<HPoint> pts;
    ts.push_back(0.0);
    pts.push_back(s.chart(x[0], x[1]));
    for (std::size_t step = 1; step <= max_steps; ++step) {
        const State k1 = rhs(x);
        const State k2 = rhs(x + 0.5 * h * k1);
        const State k3 = rhs(x + 0.5 * h * k2);
        const State k4 = rhs(x + h * k3);
        State next = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
        if (!ms.in_safe_box(next[0], next[1]))
            break;
        unit_speed(next);
        x = next;
        ts.push_back(static_cast<double>(step) * h);
        pts.push_back(s.chart(x[0], x[1]));
    }
    if (pts.size() < 5)
        throw InputError("trace_intrinsic_geodesic: geodesic left the grid too early");
    return SampledPath::validated(std::move(ts), std::move(pts), 1e-2);
}

ParamSurface make_geodesic_plane_patch(double extent, double h) {
    return ParamSurface::from_chart(
        [](double u, double v) {
            Vec x(4);
            x << std::sinh(u), std::cosh(u) * std::sinh(v), 0.0, std::cosh(u) * std::cosh(v);
            return HPoint(std::move(x));
        },
        extent, h);
}

ParamSurface make_equidistant_patch(double d, double extent, double h) {
    if (d < 0.0)
        throw InputError("make_equidistant_patch: d must be nonnegative");
    const double cd = std::cosh(d), sd = std::sinh(d);
    return ParamSurface::from_chart(
        [cd, sd](double u, double v) {
            Vec x(4);
            x << cd * std::sinh(u), cd * std::cosh(u) * std::sinh(v), sd,
                cd * std::cosh(u) * std::cosh(v);
            return HPoint(std::move(x));
        },
        extent, h);
}

ParamSurface make_horosphere_patch(double extent, double h) {
    return ParamSurface::from_chart(
        [](double u, double v) {
            Vec x(3);
            x << u, v, 1.0;
            return uhs_to_hyperboloid(UHSPoint(std::move(x)));
        },
        extent, h);
}

ParamSurface load_surface_csv(const std::string& path, double du, double dv) {
    std::ifstream in(path);
    if (!in)
        throw InputError("load_surface_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw InputError("load_surface_csv: empty file");
    std::size_t nu = 0, nv = 0;
    {
        std::istringstream hs(line);
        char comma = 0;
        if (!(hs >> nu >> comma >> nv) || comma != ',')
            throw InputError("load_surface_csv: malformed header, expected \"nu,nv\"");
    }
    if (nu < 5 || nv < 5)
        throw InputError("load_surface_csv: grid must be at least 5x5");
    std::vector<std::optional<HPoint>> grid(nu * nv);
    std::size_t filled = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::size_t iu = 0, iv = 0;
        double x0 = 0, x1 = 0, x2 = 0, x3 = 0;
        char c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0;
        if (!(ls >> iu >> c1 >> iv >> c2 >> x0 >> c3 >> x1 >> c4 >> x2 >> c5 >> x3) ||
            c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',')
            throw InputError("load_surface_csv: malformed row: " + line);
        if (iu >= nu || iv >= nv)
            throw InputError("load_surface_csv: index out of range in row: " + line);
        if (grid[iu * nv + iv])
            throw InputError("load_surface_csv: duplicate node in row: " + line);
        Vec v(4);
        v << x0, x1, x2, x3;
        try {
            grid[iu * nv + iv] = HPoint(std::move(v));
        } catch (const InvalidPoint& e) {
            throw InputError(std::string("load_surface_csv: ") + e.what() + " in row: " + line);
        }
        ++filled;
    }
    if (filled != nu * nv)
        throw InputError("load_surface_csv: missing grid entries");
    std::vector<HPoint> pts;
    pts.reserve(nu * nv);
    for (auto& p : grid)
        pts.push_back(std::move(*p));
    return ParamSurface::from_grid(nu, nv, 0.0, 0.0, du, dv, std::move(pts));
}

void write_surface_csv(const ParamSurface& s, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw InputError("write_surface_csv: cannot open " + path);
    out << s.nu << "," << s.nv << "\n";
    out.precision(17);
    for (std::size_t iu = 0; iu < s.nu; ++iu)
        for (std::size_t iv = 0; iv < s.nv; ++iv) {
            const Vec& c = s.at(iu, iv).coords();
            out << iu << "," << iv << "," << c[0] << "," << c[1] << "," << c[2] << "," << c[3]
                << "\n";
        }
}

}  // namespace hypgeo
