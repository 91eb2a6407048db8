#pragma once

#include <Eigen/Dense>

#include "hypgeo/errors.hpp"

namespace hypgeo {

// Ambient coordinates in R^{n,1}. The bilinear form is
//   <u,v> = u_0 v_0 + ... + u_{n-1} v_{n-1} - u_n v_n,
// i.e. the negative direction sits on the LAST coordinate. Vectors have
// n+1 entries with n >= 2.
using Vec = Eigen::VectorXd;

constexpr double kTauPoint = 1e-9;

inline void check_ambient_dim(const Vec& u) {
    if (u.size() < 3)
        throw DimensionMismatch("Minkowski vector needs at least 3 coordinates (n >= 2)");
}

inline double minkowski_inner(const Vec& u, const Vec& v) {
    if (u.size() != v.size())
        throw DimensionMismatch("Minkowski inner product: dimension mismatch");
    check_ambient_dim(u);
    const Eigen::Index n = u.size() - 1;
    return u.head(n).dot(v.head(n)) - u[n] * v[n];
}

inline double minkowski_norm_sq(const Vec& u) { return minkowski_inner(u, u); }

}  // namespace hypgeo
