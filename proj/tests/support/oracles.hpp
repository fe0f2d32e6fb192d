#pragma once

// Independent brute-force oracles for the numerics tests. These share no
// code with the library: means, scatters and ratios are recomputed here
// with plain loops.

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <Eigen/Core>

namespace oracles {

// Exhaustive search over unit directions in the plane for the direction
// maximizing the two-class Fisher ratio, on a grid of the given angular
// step over [0, pi). The returned direction is oriented so the class-a
// projected mean is the larger one.
inline Eigen::Vector2d fisher_grid_search(const Eigen::MatrixXd& points_a,
                                          const Eigen::MatrixXd& points_b,
                                          double step = 1e-4) {
    double mean_a0 = 0.0, mean_a1 = 0.0, mean_b0 = 0.0, mean_b1 = 0.0;
    for (Eigen::Index i = 0; i < points_a.rows(); ++i) {
        mean_a0 += points_a(i, 0);
        mean_a1 += points_a(i, 1);
    }
    for (Eigen::Index i = 0; i < points_b.rows(); ++i) {
        mean_b0 += points_b(i, 0);
        mean_b1 += points_b(i, 1);
    }
    mean_a0 /= static_cast<double>(points_a.rows());
    mean_a1 /= static_cast<double>(points_a.rows());
    mean_b0 /= static_cast<double>(points_b.rows());
    mean_b1 /= static_cast<double>(points_b.rows());

    // Pooled within-class scatter, accumulated entrywise.
    double s00 = 0.0, s01 = 0.0, s11 = 0.0;
    for (Eigen::Index i = 0; i < points_a.rows(); ++i) {
        const double d0 = points_a(i, 0) - mean_a0;
        const double d1 = points_a(i, 1) - mean_a1;
        s00 += d0 * d0;
        s01 += d0 * d1;
        s11 += d1 * d1;
    }
    for (Eigen::Index i = 0; i < points_b.rows(); ++i) {
        const double d0 = points_b(i, 0) - mean_b0;
        const double d1 = points_b(i, 1) - mean_b1;
        s00 += d0 * d0;
        s01 += d0 * d1;
        s11 += d1 * d1;
    }

    const double diff0 = mean_a0 - mean_b0;
    const double diff1 = mean_a1 - mean_b1;

    double best_ratio = -1.0;
    double best_theta = 0.0;
    for (double theta = 0.0; theta < M_PI; theta += step) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const double sep = c * diff0 + s * diff1;
        const double between = sep * sep;
        const double within = c * c * s00 + 2.0 * c * s * s01 + s * s * s11;
        if (within <= 0.0) continue;
        const double ratio = between / within;
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_theta = theta;
        }
    }

    Eigen::Vector2d dir(std::cos(best_theta), std::sin(best_theta));
    if (dir(0) * diff0 + dir(1) * diff1 < 0.0) dir = -dir;
    return dir;
}

// Angle between two unit vectors, in [0, pi].
inline double angle_between(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    const double dot = std::clamp(u.dot(v), -1.0, 1.0);
    return std::acos(dot);
}

} // namespace oracles
