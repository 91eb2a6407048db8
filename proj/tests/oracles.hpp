#pragma once

// Independent oracles used by the test suites. Everything here is computed
// by a different route than the library code it checks.

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "hypgeo/minkowski.hpp"

namespace oracle {

// Closed-form distance in the upper half space:
// cosh d = 1 + |u - v|^2 / (2 u_n v_n).
inline double uhs_distance(const hypgeo::Vec& u, const hypgeo::Vec& v) {
    const double un = u[u.size() - 1], vn = v[v.size() - 1];
    return std::acosh(1.0 + (u - v).squaredNorm() / (2.0 * un * vn));
}

// Signature of the restriction of <,> to span{a, b} via the eigenvalues of
// the Gram matrix; returns true when it is (1,1).
inline bool span_signature_is_1_1(const hypgeo::Vec& a, const hypgeo::Vec& b) {
    Eigen::Matrix2d gram;
    gram(0, 0) = hypgeo::minkowski_inner(a, a);
    gram(0, 1) = gram(1, 0) = hypgeo::minkowski_inner(a, b);
    gram(1, 1) = hypgeo::minkowski_inner(b, b);
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gram);
    return es.eigenvalues()(0) < 0.0 && es.eigenvalues()(1) > 0.0;
}

// Orbit count of the sheet permutation k -> k + lk (mod p): the number of
// components of the lifted curve.
inline long long orbit_count(long long p, long long lk) {
    std::vector<bool> seen(static_cast<std::size_t>(p), false);
    long long orbits = 0;
    const long long step = ((lk % p) + p) % p;
    for (long long start = 0; start < p; ++start) {
        if (seen[static_cast<std::size_t>(start)])
            continue;
        ++orbits;
        long long k = start;
        while (!seen[static_cast<std::size_t>(k)]) {
            seen[static_cast<std::size_t>(k)] = true;
            k = (k + step) % p;
        }
    }
    return orbits;
}

// Random timelike upper-sheet vector (before renormalization).
inline hypgeo::Vec random_timelike(std::mt19937_64& rng, int n, double spread = 1.0) {
    std::uniform_real_distribution<double> u(-spread, spread);
    hypgeo::Vec x(n + 1);
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        x[i] = u(rng);
        s2 += x[i] * x[i];
    }
    x[n] = std::sqrt(1.0 + s2);  // lands exactly on the hyperboloid
    return x;
}

// Distance between hypercycle points at parameter separation s (arc length
// along the curve): cosh D = cosh^2(d) cosh(s / cosh d) - sinh^2(d).
inline double hypercycle_chord(double d, double s) {
    const double cd = std::cosh(d), sd = std::sinh(d);
    return std::acosh(cd * cd * std::cosh(s / cd) - sd * sd);
}

}  // namespace oracle
