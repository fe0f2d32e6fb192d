#include "classsplom/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "classsplom/errors.hpp"

namespace classsplom {

namespace {

// Largest-magnitude entry made positive; fixes the sign ambiguity of
// SVD/eigen directions so outputs are reproducible.
template <typename Derived>
void canonicalize_sign(Eigen::MatrixBase<Derived>& v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0.0) v.derived() = -v.derived();
}

Eigen::MatrixXd centered_rows(const Eigen::MatrixXd& points) {
    return points.rowwise() - points.colwise().mean();
}

// Pooled within-class scatter: sum of both classes' centered outer products.
Eigen::MatrixXd within_class_scatter(const Eigen::MatrixXd& points_a,
                                     const Eigen::MatrixXd& points_b) {
    const Eigen::MatrixXd ca = centered_rows(points_a);
    const Eigen::MatrixXd cb = centered_rows(points_b);
    return ca.transpose() * ca + cb.transpose() * cb;
}

} // namespace

std::pair<Dataset, PcaModel> pca_reduce(const Dataset& ds, int k) {
    const Eigen::Index n = ds.size();
    const Eigen::Index d = ds.dim();
    const Eigen::Index k_max = std::min<Eigen::Index>(n - 1, d);
    if (k < 1 || k > k_max)
        throw ConfigError("pca target dimension " + std::to_string(k) + " out of range [1, " +
                          std::to_string(k_max) + "]");

    PcaModel model;
    model.mean = ds.features.colwise().mean();
    const Eigen::MatrixXd centered = ds.features.rowwise() - model.mean.transpose();
    if (centered.lpNorm<Eigen::Infinity>() == 0.0)
        throw DegenerateError("zero-variance dataset: all points identical");

    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
    model.components = svd.matrixV().leftCols(k).transpose();
    for (int i = 0; i < k; ++i) {
        auto row = model.components.row(i);
        canonicalize_sign(row);
    }

    model.explained_variance.resize(k);
    for (int i = 0; i < k; ++i) {
        const double sigma = svd.singularValues()(i);
        model.explained_variance(i) = sigma * sigma / static_cast<double>(n - 1);
    }

    Dataset reduced;
    reduced.features = centered * model.components.transpose();
    reduced.labels = ds.labels;
    reduced.class_names = ds.class_names;
    return {std::move(reduced), std::move(model)};
}

LinearAxis fisher_lda_axis(const Eigen::MatrixXd& points_a,
                           const Eigen::MatrixXd& points_b, double ridge) {
    if (points_a.rows() < 1 || points_b.rows() < 1)
        throw ConfigError("fisher_lda_axis needs at least one point per class");
    if (points_a.cols() != points_b.cols())
        throw ConfigError("fisher_lda_axis: dimension mismatch between classes");
    if (ridge < 0.0) throw ConfigError("ridge must be nonnegative");

    const Eigen::Index d = points_a.cols();
    const Eigen::VectorXd mean_a = points_a.colwise().mean();
    const Eigen::VectorXd mean_b = points_b.colwise().mean();
    const Eigen::VectorXd diff = mean_a - mean_b;

    const Eigen::MatrixXd scatter = within_class_scatter(points_a, points_b);
    const double trace = scatter.trace();

    Eigen::VectorXd w;
    if (trace == 0.0) {
        // No within-class spread at all. With a ridge the regularized solve
        // degenerates to the mean difference; without one there is nothing
        // to invert.
        if (ridge == 0.0)
            throw DegenerateError("singular within-class scatter and ridge = 0");
        w = diff;
    } else if (ridge > 0.0) {
        const Eigen::MatrixXd reg =
            scatter + (ridge * trace / static_cast<double>(d)) *
                          Eigen::MatrixXd::Identity(d, d);
        w = reg.ldlt().solve(diff);
    } else {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(scatter);
        if (!lu.isInvertible())
            throw DegenerateError("singular within-class scatter and ridge = 0");
        w = lu.solve(diff);
    }

    if (!w.allFinite())
        throw DegenerateError("within-class scatter solve produced non-finite direction");
    const double norm = w.norm();
    if (norm == 0.0)
        throw DegenerateError("identical class means: no discriminating direction");
    w /= norm;
    if (w.dot(mean_a) < w.dot(mean_b)) w = -w;
    return LinearAxis{std::move(w)};
}

double fisher_ratio(const Eigen::MatrixXd& points_a,
                    const Eigen::MatrixXd& points_b,
                    const Eigen::VectorXd& direction) {
    const Eigen::VectorXd mean_a = points_a.colwise().mean();
    const Eigen::VectorXd mean_b = points_b.colwise().mean();
    const double sep = direction.dot(mean_a - mean_b);
    const double between = sep * sep;
    const double within =
        direction.dot(within_class_scatter(points_a, points_b) * direction);
    if (within <= 0.0)
        return between > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return between / within;
}

Eigen::MatrixXd deflate(const Eigen::MatrixXd& points, const LinearAxis& axis) {
    return points - (points * axis.direction) * axis.direction.transpose();
}

namespace {

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m,
                            const std::vector<Eigen::Index>& rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
    return out;
}

// First principal component of the deflated pair data; the K == 2 stand-in
// for the second discriminant.
Eigen::VectorXd leading_component(const Eigen::MatrixXd& deflated_pair,
                                  double data_scale) {
    const Eigen::MatrixXd centered = centered_rows(deflated_pair);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    if (data_scale == 0.0 || svd.singularValues()(0) <= 1e-10 * data_scale)
        throw DegenerateError("no orthogonal variance for the second axis");
    Eigen::VectorXd v = svd.matrixV().col(0);
    canonicalize_sign(v);
    return v;
}

} // namespace

PairProjection pair_projection(const Dataset& ds, int class_a, int class_b,
                               double ridge) {
    const int k = ds.num_classes();
    if (class_a == class_b) throw ConfigError("pair_projection: classes must differ");
    if (class_a < 0 || class_a >= k || class_b < 0 || class_b >= k)
        throw ConfigError("pair_projection: class index out of range");

    const int lo = std::min(class_a, class_b);
    const int hi = std::max(class_a, class_b);

    const auto by_class = rows_by_class(ds);
    if (by_class[lo].size() < 2 || by_class[hi].size() < 2)
        throw ConfigError("pair_projection: both classes need at least 2 points");

    const Eigen::MatrixXd pts_lo = select_rows(ds.features, by_class[lo]);
    const Eigen::MatrixXd pts_hi = select_rows(ds.features, by_class[hi]);

    PairProjection pp;
    pp.class_a = lo;
    pp.class_b = hi;
    pp.axis1 = fisher_lda_axis(pts_lo, pts_hi, ridge);

    const Eigen::MatrixXd deflated = deflate(ds.features, pp.axis1);

    Eigen::VectorXd w2;
    if (k > 2) {
        std::vector<Eigen::Index> pair_rows;
        std::vector<Eigen::Index> rest_rows;
        for (Eigen::Index i = 0; i < ds.size(); ++i) {
            const int c = ds.labels[static_cast<std::size_t>(i)];
            (c == lo || c == hi ? pair_rows : rest_rows).push_back(i);
        }
        w2 = fisher_lda_axis(select_rows(deflated, pair_rows),
                             select_rows(deflated, rest_rows), ridge)
                 .direction;
    } else {
        // K == 2: the pair is the whole dataset.
        const double scale = centered_rows(ds.features).norm();
        w2 = leading_component(deflated, scale);
    }

    // The solve can leak a floating-point sliver of axis1 back in (the
    // regularizer acts on the full space); project it out.
    w2 -= w2.dot(pp.axis1.direction) * pp.axis1.direction;
    const double norm = w2.norm();
    if (norm < 1e-8)
        throw DegenerateError("second axis collapsed onto the first");
    pp.axis2 = LinearAxis{w2 / norm};

    pp.coords.resize(ds.size(), 2);
    pp.coords.col(0) = ds.features * pp.axis1.direction;
    pp.coords.col(1) = ds.features * pp.axis2.direction;
    pp.point_class = ds.labels;
    return pp;
}

} // namespace classsplom
