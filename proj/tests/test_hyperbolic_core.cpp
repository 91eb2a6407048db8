#include <random>

#include "doctest.h"
#include "hypgeo/hyperboloid.hpp"
#include "hypgeo/models.hpp"
#include "oracles.hpp"

using namespace hypgeo;

namespace {

Vec vec3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

Vec vec4(double a, double b, double c, double d) {
    Vec v(4);
    v << a, b, c, d;
    return v;
}

}  // namespace

TEST_CASE("minkowski inner product basis values") {
    CHECK(minkowski_inner(vec4(1, 0, 0, 0), vec4(1, 0, 0, 0)) == doctest::Approx(1.0));
    CHECK(minkowski_inner(vec4(0, 0, 0, 1), vec4(0, 0, 0, 1)) == doctest::Approx(-1.0));
    CHECK(minkowski_inner(vec4(1, 0, 0, 1), vec4(1, 0, 0, 1)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(minkowski_inner(vec3(1, 0, 0), vec4(1, 0, 0, 0)), DimensionMismatch);
}

TEST_CASE("minkowski inner product is symmetric and bilinear") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        Vec a(4), b(4), c(4);
        for (int i = 0; i < 4; ++i) {
            a[i] = u(rng);
            b[i] = u(rng);
            c[i] = u(rng);
        }
        const double s = u(rng);
        CHECK(minkowski_inner(a, b) == doctest::Approx(minkowski_inner(b, a)));
        CHECK(minkowski_inner(a + s * b, c) ==
              doctest::Approx(minkowski_inner(a, c) + s * minkowski_inner(b, c)).epsilon(1e-10));
    }
}

TEST_CASE("HPoint constructor renormalizes and validates") {
    const HPoint p(vec3(0.3, -0.2, 2.0));  // timelike but off the sheet
    CHECK(std::abs(minkowski_norm_sq(p.coords()) + 1.0) < kTauPoint);
    CHECK(p.time() > 0.0);
    CHECK_THROWS_AS(HPoint(vec3(1.0, 0.0, 0.5)), InvalidPoint);   // spacelike
    CHECK_THROWS_AS(HPoint(vec3(0.0, 0.0, -1.0)), InvalidPoint);  // lower sheet
}

TEST_CASE("h_distance basics") {
    const HPoint p(vec4(0, 0, 0, 1));
    CHECK(h_distance(p, p) == doctest::Approx(0.0));
    const HPoint q(vec4(std::sinh(1.0), 0, 0, std::cosh(1.0)));
    CHECK(h_distance(p, q) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h_distance(q, p) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("h_distance satisfies the triangle inequality on sampled triples") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const HPoint a(oracle::random_timelike(rng, 3));
        const HPoint b(oracle::random_timelike(rng, 3));
        const HPoint c(oracle::random_timelike(rng, 3));
        CHECK(h_distance(a, c) <= h_distance(a, b) + h_distance(b, c) + 1e-10);
    }
}

TEST_CASE("geodesic_point is unit speed") {
    const GeodesicLine g(HPoint(vec4(0, 0, 0, 1)), vec4(1, 0, 0, 0));
    const HPoint at1 = g.point_at(1.0);
    CHECK((at1.coords() - vec4(std::sinh(1.0), 0, 0, std::cosh(1.0))).norm() < 1e-12);
    CHECK(g.point_at(0.0).coords() == g.base().coords());

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double s = u(rng), t = u(rng);
        CHECK(h_distance(g.point_at(s), g.point_at(t)) ==
              doctest::Approx(std::abs(s - t)).epsilon(1e-10));
        CHECK(h_distance(g.point_at(t), g.base()) == doctest::Approx(std::abs(t)).epsilon(1e-10));
    }
}

TEST_CASE("project_to_tangent") {
    const HPoint p(vec4(0.4, -0.1, 0.2, std::sqrt(1 + 0.16 + 0.01 + 0.04)));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);

    SUBCASE("residual vanishes and projection is idempotent") {
        for (int trial = 0; trial < 50; ++trial) {
            Vec w(4);
            for (int i = 0; i < 4; ++i)
                w[i] = u(rng);
            const HTangent t = project_to_tangent(p, w);
            CHECK(std::abs(minkowski_inner(t.dir, p.coords())) < 1e-12);
            const HTangent tt = project_to_tangent(p, t.dir);
            CHECK((tt.dir - t.dir).norm() < 1e-12);
        }
    }
    SUBCASE("w = p projects to zero") {
        const HTangent t = project_to_tangent(p, p.coords());
        CHECK(t.dir.norm() < 1e-12);
    }
}

TEST_CASE("model conversion round trip and basepoint convention") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> height(0.05, 5.0);

    const HPoint base = uhs_to_hyperboloid(UHSPoint(vec3(0, 0, 1)));
    CHECK((base.coords() - vec4(0, 0, 0, 1)).norm() < 1e-12);

    for (int trial = 0; trial < 200; ++trial) {
        Vec x(3);
        x << u(rng), u(rng), height(rng);
        const UHSPoint p(x);
        const UHSPoint back = hyperboloid_to_uhs(uhs_to_hyperboloid(p));
        CHECK((back.x - p.x).norm() < 1e-10);
    }
    CHECK_THROWS_AS(UHSPoint(vec3(0, 0, -1)), InvalidPoint);
    CHECK_THROWS_AS(UHSPoint(vec3(0, 0, 0)), InvalidPoint);
}

TEST_CASE("model conversion preserves distance") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> height(0.05, 5.0);

    SUBCASE("general pairs against the closed-form oracle") {
        for (int trial = 0; trial < 200; ++trial) {
            Vec x(3), y(3);
            x << u(rng), u(rng), height(rng);
            y << u(rng), u(rng), height(rng);
            const double via_hyperboloid =
                h_distance(uhs_to_hyperboloid(UHSPoint(x)), uhs_to_hyperboloid(UHSPoint(y)));
            CHECK(via_hyperboloid == doctest::Approx(oracle::uhs_distance(x, y)).epsilon(1e-9));
        }
    }
    SUBCASE("vertical segments have length log(h'/h)") {
        const HPoint a = uhs_to_hyperboloid(UHSPoint(vec3(0.0, 0.0, 1.0)));
        const HPoint b = uhs_to_hyperboloid(UHSPoint(vec3(0.0, 0.0, std::exp(1.0))));
        CHECK(h_distance(a, b) == doctest::Approx(1.0).epsilon(1e-10));
        const HPoint c = uhs_to_hyperboloid(UHSPoint(vec3(0.7, -0.3, 0.5)));
        const HPoint d = uhs_to_hyperboloid(UHSPoint(vec3(0.7, -0.3, 2.0)));
        CHECK(h_distance(c, d) == doctest::Approx(std::log(4.0)).epsilon(1e-10));
    }
    SUBCASE("n = 2 works as well") {
        Vec x(2), y(2);
        x << 0.4, 1.3;
        y << -0.2, 0.6;
        const double via_hyperboloid =
            h_distance(uhs_to_hyperboloid(UHSPoint(x)), uhs_to_hyperboloid(UHSPoint(y)));
        CHECK(via_hyperboloid == doctest::Approx(oracle::uhs_distance(x, y)).epsilon(1e-9));
    }
}

TEST_CASE("dual plane distance") {
    SUBCASE("identical planes have distance zero") {
        const DualHyperplane P(vec4(1, 0, 0, 0));
        const auto d = dual_plane_distance(P, P);
        REQUIRE(d.has_value());
        CHECK(*d == doctest::Approx(0.0));
    }
    SUBCASE("orthogonal normals intersect") {
        const DualHyperplane P(vec4(1, 0, 0, 0));
        const DualHyperplane Q(vec4(0, 1, 0, 0));
        CHECK(!dual_plane_distance(P, Q).has_value());
    }
    SUBCASE("planes orthogonal to a geodesic at parameters 0 and t are t apart") {
        const GeodesicLine g(HPoint(vec4(0.2, -0.4, 0.1, std::sqrt(1.21))), vec4(0, 1, 0, 0));
        for (double t : {0.25, 1.0, 2.5, 4.0}) {
            const DualHyperplane P(g.tangent_at(0.0).dir);
            const DualHyperplane Q(g.tangent_at(t).dir);
            const auto d = dual_plane_distance(P, Q);
            REQUIRE(d.has_value());
            CHECK(*d == doctest::Approx(t).epsilon(1e-9));
        }
    }
    SUBCASE("classification agrees with the signature test on 10^4 random pairs") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        for (int n : {2, 3}) {
            int disjoint_seen = 0, intersecting_seen = 0;
            for (int trial = 0; trial < 10000; ++trial) {
                Vec a(n + 1), b(n + 1);
                do {
                    for (int i = 0; i <= n; ++i)
                        a[i] = u(rng);
                } while (minkowski_norm_sq(a) <= 1e-6);
                do {
                    for (int i = 0; i <= n; ++i)
                        b[i] = u(rng);
                } while (minkowski_norm_sq(b) <= 1e-6);
                const DualHyperplane P(a), Q(b);
                const auto d = dual_plane_distance(P, Q);
                const bool sig11 = oracle::span_signature_is_1_1(P.normal(), Q.normal());
                if (d.has_value() && *d > 1e-9) {
                    CHECK(sig11);
                    ++disjoint_seen;
                } else if (!d.has_value()) {
                    CHECK(!sig11);
                    ++intersecting_seen;
                }
            }
            // both branches must actually be exercised
            CHECK(disjoint_seen > 100);
            CHECK(intersecting_seen > 100);
        }
    }
}

TEST_CASE("every operation lands on the hyperboloid sheet") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> height(0.1, 4.0);
    auto on_sheet = [](const HPoint& p) {
        return std::abs(minkowski_norm_sq(p.coords()) + 1.0) < kTauPoint && p.time() > 0.0;
    };
    for (int trial = 0; trial < 100; ++trial) {
        const HPoint a(oracle::random_timelike(rng, 3));
        const HPoint b(oracle::random_timelike(rng, 3));
        CHECK(on_sheet(geodesic_between(a, b).point_at(u(rng))));
        CHECK(on_sheet(geodesic_interpolate(a, b, 0.5 + 0.25 * u(rng))));
        Vec x(3);
        x << u(rng), u(rng), height(rng);
        CHECK(on_sheet(uhs_to_hyperboloid(UHSPoint(x))));
    }
    CHECK(h_distance(HPoint(oracle::random_timelike(rng, 3)),
                     HPoint(oracle::random_timelike(rng, 3))) > 0.0);
}

TEST_CASE("geodesic interpolation matches the line parameterization") {
    std::mt19937_64 rng(31);
    Vec dir(4);
    dir << 1.0, 0.5, -0.25, 0.0;
    const GeodesicLine g(HPoint(oracle::random_timelike(rng, 3)), dir);
    const HPoint a = g.point_at(0.0), b = g.point_at(3.0);
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const HPoint direct = g.point_at(3.0 * s);
        const HPoint interp = geodesic_interpolate(a, b, s);
        CHECK(h_distance(direct, interp) < 1e-10);
    }
    CHECK_THROWS_AS(geodesic_interpolate(a, b, 1.5), InputError);
}

TEST_CASE("horoball membership") {
    const Horoball h(1.0);
    CHECK(h.contains(UHSPoint(vec3(0, 0, 2.0))));
    CHECK(!h.contains(UHSPoint(vec3(0, 0, 0.5))));
    CHECK(h.contains(UHSPoint(vec3(3.0, -2.0, 1.0))));  // boundary included
    CHECK_THROWS_AS(Horoball(0.0), InvalidPoint);
}
