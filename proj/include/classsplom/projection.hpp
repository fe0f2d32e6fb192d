#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "classsplom/dataset.hpp"

namespace classsplom {

/// Principal component model fitted on centered data. Component rows are
/// orthonormal; explained_variance holds the matching sample-covariance
/// eigenvalues in nonincreasing order.
struct PcaModel {
    Eigen::VectorXd mean;               // length D
    Eigen::MatrixXd components;         // k x D, row-orthonormal
    Eigen::VectorXd explained_variance; // length k, nonincreasing
};

/// A unit direction in the ambient feature space.
struct LinearAxis {
    Eigen::VectorXd direction;
};

/// The two orthogonal discriminant axes for one class pair plus the 2-D
/// coordinates of all n points (pair classes and background classes alike).
/// coords.col(j) == features * axis_j. class_a < class_b, and the class_a
/// mean is to the right of the class_b mean on axis1.
struct PairProjection {
    int class_a = 0;
    int class_b = 0;
    LinearAxis axis1;
    LinearAxis axis2;
    Eigen::MatrixXd coords;       // n x 2
    std::vector<int> point_class; // size n
};

// Projects the centered data onto the top-k principal components
// (1 <= k <= min(n-1, D)). Deterministic: each component's
// largest-magnitude entry is made positive.
std::pair<Dataset, PcaModel> pca_reduce(const Dataset& ds, int k);

// Two-class Fisher discriminant direction, proportional to
// (S_w + ridge*tr(S_w)/D * I)^-1 (mean_a - mean_b) with S_w the pooled
// within-class scatter. When S_w vanishes entirely and ridge > 0 the limit
// is the mean difference itself. The sign makes the projected class-a mean
// >= the projected class-b mean. Throws DegenerateError when no
// discriminating direction exists.
LinearAxis fisher_lda_axis(const Eigen::MatrixXd& points_a,
                           const Eigen::MatrixXd& points_b, double ridge);

// Rayleigh quotient (projected between-class over within-class variance)
// of a candidate direction; used by tests and direction comparisons.
double fisher_ratio(const Eigen::MatrixXd& points_a,
                    const Eigen::MatrixXd& points_b,
                    const Eigen::VectorXd& direction);

// Removes each row's component along a unit axis: x - (x.w)w.
Eigen::MatrixXd deflate(const Eigen::MatrixXd& points, const LinearAxis& axis);

// Builds the scatterplot projection for one class pair. axis1 discriminates
// class_a from class_b. axis2 lives in the subspace orthogonal to axis1: the
// discriminant of (class_a u class_b) versus the remaining classes when
// K > 2, or the first principal component of the deflated pair data when
// K == 2. The input order of class_a/class_b does not matter; the pair is
// stored with class_a < class_b.
PairProjection pair_projection(const Dataset& ds, int class_a, int class_b,
                               double ridge);

} // namespace classsplom
