#include "hypgeo/tube.hpp"

#include <algorithm>
#include <cmath>

namespace hypgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

double quintic(double x) { return x * x * x * (10.0 + x * (-15.0 + 6.0 * x)); }
double quintic_d(double x) { return x * x * (30.0 + x * (-60.0 + 30.0 * x)); }
double quintic_dd(double x) { return x * (60.0 + x * (-180.0 + 120.0 * x)); }

// sigma(x) = exp(-1/x) for x > 0, else 0, with derivatives.
double sigma(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double sigma_d(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }
double sigma_dd(double x) {
    return x > 0.0 ? std::exp(-1.0 / x) * (1.0 - 2.0 * x) / (x * x * x * x) : 0.0;
}

}  // namespace

BumpFunction smoothstep_bump() {
    BumpFunction b;
    b.name = "smoothstep";
    b.phi = [](double r) {
        if (r <= -2.0) return 1.0;
        if (r >= -1.0) return 0.0;
        return 1.0 - quintic(r + 2.0);
    };
    b.dphi = [](double r) {
        if (r <= -2.0 || r >= -1.0) return 0.0;
        return -quintic_d(r + 2.0);
    };
    b.d2phi = [](double r) {
        if (r <= -2.0 || r >= -1.0) return 0.0;
        return -quintic_dd(r + 2.0);
    };
    return b;
}

BumpFunction exp_bump() {
    BumpFunction b;
    b.name = "exp";
    // phi = A / (A + B) with A = sigma(-1-r), B = sigma(r+2); the support
    // endpoints are exact because sigma vanishes on (-inf, 0].
    b.phi = [](double r) {
        if (r <= -2.0) return 1.0;
        if (r >= -1.0) return 0.0;
        const double A = sigma(-1.0 - r), B = sigma(r + 2.0);
        return A / (A + B);
    };
    b.dphi = [](double r) {
        if (r <= -2.0 || r >= -1.0) return 0.0;
        const double A = sigma(-1.0 - r), B = sigma(r + 2.0);
        const double Ad = -sigma_d(-1.0 - r), Bd = sigma_d(r + 2.0);
        const double s = A + B;
        return (Ad * B - A * Bd) / (s * s);
    };
    b.d2phi = [](double r) {
        if (r <= -2.0 || r >= -1.0) return 0.0;
        const double A = sigma(-1.0 - r), B = sigma(r + 2.0);
        const double Ad = -sigma_d(-1.0 - r), Bd = sigma_d(r + 2.0);
        const double Add = sigma_dd(-1.0 - r), Bdd = sigma_dd(r + 2.0);
        const double s = A + B, sd = Ad + Bd;
        return ((Add * B - A * Bdd) * s - 2.0 * (Ad * B - A * Bd) * sd) / (s * s * s);
    };
    return b;
}

BumpFunction bump_by_name(const std::string& name) {
    if (name == "smoothstep") return smoothstep_bump();
    if (name == "exp") return exp_bump();
    throw InputError("unknown bump function: " + name + " (expected smoothstep|exp)");
}

double min_meridian_length() { return std::exp(3.0) * kPi; }

TubeMetric::TubeMetric(double l, BumpFunction bump) : l_(l), bump_(std::move(bump)) {
    if (!(l >= min_meridian_length() * (1.0 - 1e-12)))
        throw MeridianTooShort("TubeMetric: meridian length must be at least e^3 pi");
    r0_ = -std::log(l_ / kPi);
}

TubeMetric build_tube_metric(double l, const BumpFunction& bump) { return TubeMetric(l, bump); }

// f = pi (e^{r-r0} - phi e^{r0-r}) and g = e^r + phi e^{2 r0 - r}. Outside
// the transition band phi is exactly 0 or 1 and the formulas collapse to
// l e^r / e^r (outer) and 2 pi sinh / 2 e^{r0} cosh (inner); evaluating
// those forms directly avoids catastrophic cancellation near the core,
// where e^{r-r0} - e^{r0-r} loses all significant digits.
double TubeMetric::f(double r) const {
    const double phi = bump_.phi(r);
    if (phi == 0.0) return l_ * std::exp(r);
    if (phi == 1.0) return 2.0 * kPi * std::sinh(r - r0_);
    return kPi * (std::exp(r - r0_) - phi * std::exp(r0_ - r));
}
double TubeMetric::fp(double r) const {
    const double phi = bump_.phi(r);
    if (phi == 0.0) return l_ * std::exp(r);
    if (phi == 1.0) return 2.0 * kPi * std::cosh(r - r0_);
    return kPi * (std::exp(r - r0_) + (phi - bump_.dphi(r)) * std::exp(r0_ - r));
}
double TubeMetric::fpp(double r) const {
    const double phi = bump_.phi(r);
    if (phi == 0.0) return l_ * std::exp(r);
    if (phi == 1.0) return 2.0 * kPi * std::sinh(r - r0_);
    return kPi * (std::exp(r - r0_) -
                  (bump_.d2phi(r) - 2.0 * bump_.dphi(r) + phi) * std::exp(r0_ - r));
}

double TubeMetric::g(double r) const {
    const double phi = bump_.phi(r);
    if (phi == 0.0) return std::exp(r);
    if (phi == 1.0) return 2.0 * std::exp(r0_) * std::cosh(r - r0_);
    return std::exp(r) + phi * std::exp(2.0 * r0_ - r);
}
double TubeMetric::gp(double r) const {
    const double phi = bump_.phi(r);
    if (phi == 0.0) return std::exp(r);
    if (phi == 1.0) return 2.0 * std::exp(r0_) * std::sinh(r - r0_);
    return std::exp(r) + (bump_.dphi(r) - phi) * std::exp(2.0 * r0_ - r);
}
double TubeMetric::gpp(double r) const {
    const double phi = bump_.phi(r);
    if (phi == 0.0) return std::exp(r);
    if (phi == 1.0) return 2.0 * std::exp(r0_) * std::cosh(r - r0_);
    return std::exp(r) +
           (bump_.d2phi(r) - 2.0 * bump_.dphi(r) + phi) * std::exp(2.0 * r0_ - r);
}

double CurvatureTriple::max_dev_from_minus_one() const {
    return std::max({std::abs(k_ff + 1.0), std::abs(k_gg + 1.0), std::abs(k_fg + 1.0)});
}

CurvatureTriple curvature_triple(const TubeMetric& m, double r) {
    if (!(r > m.r0()) || r > 0.0)
        throw DomainError("curvature_triple: r must lie in (r0, 0]");
    CurvatureTriple t;
    t.k_ff = -m.fpp(r) / m.f(r);
    t.k_gg = -m.gpp(r) / m.g(r);
    t.k_fg = -(m.fp(r) * m.gp(r)) / (m.f(r) * m.g(r));
    return t;
}

BoundaryFormReport boundary_form_check(const TubeMetric& m, std::size_t samples) {
    BoundaryFormReport rep;
    const double r0 = m.r0();
    for (std::size_t i = 0; i <= samples; ++i) {
        const double a = static_cast<double>(i) / static_cast<double>(samples);
        const double r_out = -1.0 + a;  // [-1, 0]
        rep.dev_f_outer = std::max(rep.dev_f_outer, std::abs(m.f(r_out) - m.l() * std::exp(r_out)));
        rep.dev_g_outer = std::max(rep.dev_g_outer, std::abs(m.g(r_out) - std::exp(r_out)));
        const double r_in = r0 + a * (-2.0 - r0);  // [r0, -2]
        rep.dev_f_inner =
            std::max(rep.dev_f_inner, std::abs(m.f(r_in) - 2.0 * kPi * std::sinh(r_in - r0)));
        rep.dev_g_inner = std::max(
            rep.dev_g_inner, std::abs(m.g(r_in) - 2.0 * std::exp(r0) * std::cosh(r_in - r0)));
    }
    rep.f_at_zero = m.f(0.0);
    rep.g_at_zero = m.g(0.0);
    rep.f_at_core = m.f(r0);
    rep.fp_at_core = m.fp(r0);
    rep.g_at_core = m.g(r0);
    return rep;
}

double BoundaryFormReport::max_deviation() const {
    return std::max({dev_f_outer, dev_g_outer, dev_f_inner, dev_g_inner});
}

PinchingReport pinching_verify(const TubeMetric& m, std::size_t samples) {
    if (samples < 1000)
        throw InputError("pinching_verify: at least 1000 samples required");
    PinchingReport rep;
    rep.samples = samples;
    const double r0 = m.r0();
    const double lo = r0 + 1e-6;

    double max_dev = 0.0;
    std::vector<double> band_points;
    for (std::size_t i = 0; i <= samples; ++i) {
        const double r =
            lo + (0.0 - lo) * static_cast<double>(i) / static_cast<double>(samples);
        const double dev = curvature_triple(m, r).max_dev_from_minus_one();
        max_dev = std::max(max_dev, dev);
        if (r >= -2.0 && r <= -1.0)
            band_points.push_back(r);
        else
            rep.exact_region_dev = std::max(rep.exact_region_dev, dev);
    }
    rep.l_emp = m.l() * m.l() * max_dev;

    // Closed-form constant over [-2, -1]; evaluated on a uniform band grid
    // plus the band points of the empirical sweep, so the comparison is
    // dominated pointwise.
    for (std::size_t i = 0; i <= samples; ++i)
        band_points.push_back(-2.0 + static_cast<double>(i) / static_cast<double>(samples));
    const double c1 = kPi * kPi * std::exp(4.0) / (1.0 - std::exp(-2.0));
    const double c2 = std::pow(kPi, 4) * std::exp(8.0) / (1.0 - std::exp(-4.0));
    double worst = 0.0;
    for (double r : band_points) {
        const double p = m.bump().phi(r), dp = m.bump().dphi(r), ddp = m.bump().d2phi(r);
        worst = std::max(worst, c1 * std::abs(ddp - 2.0 * dp));
        worst = std::max(worst, c2 * std::abs(2.0 * p * dp - dp * dp));
    }
    rep.l_formula = worst;
    return rep;
}

double meridian_length(const TubeMetric& m, double r) {
    if (r < m.r0() || r > 0.0)
        throw DomainError("meridian_length: r must lie in [r0, 0]");
    return m.f(r);
}

}  // namespace hypgeo
