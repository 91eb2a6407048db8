#include <cmath>

#include "doctest.h"
#include "hypgeo/tube.hpp"

using namespace hypgeo;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Central-difference check of a closed-form derivative.
double fd1(const std::function<double(double)>& f, double r, double h = 1e-5) {
    return (f(r + h) - f(r - h)) / (2 * h);
}
double fd2(const std::function<double(double)>& f, double r, double h = 1e-4) {
    return (f(r + h) - 2 * f(r) + f(r - h)) / (h * h);
}

}  // namespace

TEST_CASE("bump functions satisfy the transition contract") {
    for (const auto& bump : {smoothstep_bump(), exp_bump()}) {
        CAPTURE(bump.name);
        CHECK(bump.phi(-2.0) == 1.0);
        CHECK(bump.phi(-2.5) == 1.0);
        CHECK(bump.phi(-1.0) == 0.0);
        CHECK(bump.phi(-0.5) == 0.0);
        CHECK(bump.dphi(-2.0) == 0.0);
        CHECK(bump.dphi(-1.0) == 0.0);
        CHECK(bump.d2phi(-2.0001) == 0.0);
        CHECK(bump.d2phi(-0.9999) == 0.0);
        for (int i = 0; i <= 400; ++i) {
            const double r = -2.0 + i / 400.0;
            CHECK(bump.phi(r) >= 0.0);
            CHECK(bump.phi(r) <= 1.0);
        }
        // closed-form derivatives match central differences on the band
        for (int i = 1; i < 40; ++i) {
            const double r = -2.0 + i / 40.0;
            CHECK(bump.dphi(r) == doctest::Approx(fd1(bump.phi, r)).epsilon(1e-6));
            CHECK(bump.d2phi(r) == doctest::Approx(fd2(bump.phi, r)).epsilon(1e-5));
        }
    }
}

TEST_CASE("tube metric construction") {
    const BumpFunction bump = smoothstep_bump();
    SUBCASE("l = e^3 pi gives r0 = -3 exactly") {
        const TubeMetric m(std::exp(3.0) * kPi, bump);
        CHECK(m.r0() == doctest::Approx(-3.0).epsilon(1e-13));
    }
    SUBCASE("l = 100 gives r0 = -log(100/pi)") {
        const TubeMetric m(100.0, bump);
        CHECK(m.r0() == doctest::Approx(-std::log(100.0 / kPi)).epsilon(1e-13));
        CHECK(m.r0() == doctest::Approx(-3.4604403).epsilon(1e-6));
        CHECK(m.f(m.r0()) == doctest::Approx(0.0));
    }
    SUBCASE("l = 50 is too short") {
        CHECK_THROWS_AS(TubeMetric(50.0, smoothstep_bump()), MeridianTooShort);
        CHECK(min_meridian_length() == doctest::Approx(63.1).epsilon(1e-3));
    }
}

TEST_CASE("boundary forms are exact outside the transition band") {
    for (const auto& bump : {smoothstep_bump(), exp_bump()}) {
        for (double l : {std::exp(3.0) * kPi, 100.0, 1000.0}) {
            const TubeMetric m(l, bump);
            const auto rep = boundary_form_check(m);
            CAPTURE(bump.name);
            CAPTURE(l);
            CHECK(rep.dev_f_outer < 1e-12);
            CHECK(rep.dev_g_outer < 1e-12);
            CHECK(rep.dev_f_inner < 1e-12 * l);  // scale: f ~ l near r = -2
            CHECK(rep.dev_g_inner < 1e-12);
            CHECK(rep.f_at_zero == doctest::Approx(l).epsilon(1e-12));
            CHECK(rep.g_at_zero == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(rep.f_at_core == doctest::Approx(0.0));
            CHECK(rep.fp_at_core == doctest::Approx(2.0 * kPi).epsilon(1e-12));
            CHECK(rep.g_at_core == doctest::Approx(2.0 * std::exp(m.r0())).epsilon(1e-12));
        }
    }
}

TEST_CASE("meridian length") {
    const TubeMetric m(100.0, smoothstep_bump());
    CHECK(meridian_length(m, 0.0) == doctest::Approx(100.0));
    CHECK(meridian_length(m, m.r0()) == doctest::Approx(0.0));
    CHECK(meridian_length(m, -1.0) == doctest::Approx(100.0 * std::exp(-1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(meridian_length(m, 0.5), DomainError);
    CHECK_THROWS_AS(meridian_length(m, m.r0() - 0.1), DomainError);
}

TEST_CASE("curvature triple is exactly -1 outside the band") {
    for (const auto& bump : {smoothstep_bump(), exp_bump()}) {
        const TubeMetric m(100.0, bump);
        CAPTURE(bump.name);
        for (double r : {-0.9, -0.5, -0.2, 0.0}) {
            const auto t = curvature_triple(m, r);
            CHECK(t.max_dev_from_minus_one() < 1e-12);
        }
        for (double r : {-2.0, -2.5, -3.0, m.r0() + 1e-4}) {
            const auto t = curvature_triple(m, r);
            CHECK(t.max_dev_from_minus_one() < 1e-11);
        }
        CHECK_THROWS_AS(curvature_triple(m, m.r0()), DomainError);
        CHECK_THROWS_AS(curvature_triple(m, 0.5), DomainError);
    }
}

TEST_CASE("closed-form f, g derivatives match finite differences") {
    for (const auto& bump : {smoothstep_bump(), exp_bump()}) {
        const TubeMetric m(100.0, bump);
        CAPTURE(bump.name);
        auto f = [&m](double r) { return m.f(r); };
        auto g = [&m](double r) { return m.g(r); };
        for (int i = 0; i <= 50; ++i) {
            const double r = (m.r0() + 0.01) + i * (-(m.r0() + 0.01)) / 50.0;
            CHECK(m.fp(r) == doctest::Approx(fd1(f, r)).epsilon(1e-6));
            CHECK(m.fpp(r) == doctest::Approx(fd2(f, r)).epsilon(1e-6));
            CHECK(m.gp(r) == doctest::Approx(fd1(g, r)).epsilon(1e-6));
            CHECK(m.gpp(r) == doctest::Approx(fd2(g, r)).epsilon(1e-5));
        }
    }
}

TEST_CASE("f and g are positive where the quotients need them") {
    for (const auto& bump : {smoothstep_bump(), exp_bump()}) {
        const TubeMetric m(std::exp(3.0) * kPi, bump);
        for (int i = 1; i <= 2000; ++i) {
            const double r = m.r0() + i * (-m.r0()) / 2000.0;
            CHECK(m.f(r) > 0.0);
            CHECK(m.g(r) > 0.0);
        }
        CHECK(m.g(m.r0()) > 0.0);
    }
}

TEST_CASE("f, f', f'' have no jump at the band edges") {
    for (const auto& bump : {smoothstep_bump(), exp_bump()}) {
        const TubeMetric m(100.0, bump);
        CAPTURE(bump.name);
        const double eps = 1e-12;  // small enough that f' * 2 eps << 1e-9
        for (double edge : {-2.0, -1.0}) {
            CHECK(std::abs(m.f(edge - eps) - m.f(edge + eps)) < 1e-9);
            CHECK(std::abs(m.fp(edge - eps) - m.fp(edge + eps)) < 1e-9);
            CHECK(std::abs(m.fpp(edge - eps) - m.fpp(edge + eps)) < 1e-9);
            CHECK(std::abs(m.g(edge - eps) - m.g(edge + eps)) < 1e-9);
            CHECK(std::abs(m.gp(edge - eps) - m.gp(edge + eps)) < 1e-9);
            CHECK(std::abs(m.gpp(edge - eps) - m.gpp(edge + eps)) < 1e-9);
        }
    }
}

TEST_CASE("pinching verification") {
    SUBCASE("empirical constant is dominated by the closed-form constant") {
        for (const auto& bump : {smoothstep_bump(), exp_bump()}) {
            for (double l : {std::exp(3.0) * kPi, 100.0, 500.0, 1000.0}) {
                const TubeMetric m(l, bump);
                const auto rep = pinching_verify(m, 20000);
                CAPTURE(bump.name);
                CAPTURE(l);
                CHECK(rep.l_emp > 0.0);
                CHECK(rep.l_formula > 0.0);
                CHECK(rep.l_emp <= rep.l_formula + 1e-9 * l * l);
                CHECK(rep.exact_region_dev < 1e-11);
            }
        }
    }
    SUBCASE("the l^2-normalized deviation is nearly l-independent") {
        for (const auto& bump : {smoothstep_bump(), exp_bump()}) {
            const auto a = pinching_verify(TubeMetric(100.0, bump), 50000);
            const auto b = pinching_verify(TubeMetric(1000.0, bump), 50000);
            CHECK(std::abs(a.l_emp - b.l_emp) / a.l_emp < 0.05);
        }
    }
    SUBCASE("sample floor is enforced") {
        CHECK_THROWS_AS(pinching_verify(TubeMetric(100.0, smoothstep_bump()), 100), InputError);
    }
    SUBCASE("r = -1.5 deviations are within the formula bound pointwise") {
        const TubeMetric m(100.0, smoothstep_bump());
        const auto rep = pinching_verify(m, 2000);
        const auto t = curvature_triple(m, -1.5);
        CHECK(100.0 * 100.0 * t.max_dev_from_minus_one() <= rep.l_formula);
    }
}

TEST_CASE("unknown bump name is rejected") {
    CHECK_THROWS_AS(bump_by_name("box"), InputError);
    CHECK(bump_by_name("exp").name == "exp");
    CHECK(bump_by_name("smoothstep").name == "smoothstep");
}

TEST_CASE("a vanishing transition leaves the unperturbed cusp metric") {
    // phi = 0 everywhere: f = l e^r, g = e^r on the whole tube, curvature
    // exactly -1, so the empirical constant vanishes
    BumpFunction zero;
    zero.name = "zero";
    zero.phi = [](double) { return 0.0; };
    zero.dphi = [](double) { return 0.0; };
    zero.d2phi = [](double) { return 0.0; };
    const TubeMetric m(100.0, zero);
    const auto rep = pinching_verify(m, 5000);
    CHECK(rep.l_emp == 0.0);
    CHECK(rep.exact_region_dev == 0.0);
    for (double r : {-3.0, -1.5, -0.25})
        CHECK(curvature_triple(m, r).max_dev_from_minus_one() == 0.0);
}
