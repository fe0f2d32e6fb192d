#include "classsplom/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>

#include "classsplom/errors.hpp"
#include "classsplom/projection.hpp"
#include "classsplom/rng.hpp"

namespace classsplom {

namespace {

void check_binary_labels(std::size_t num_scores, std::size_t num_labels,
                         std::size_t num_pos) {
    if (num_scores != num_labels)
        throw ConfigError("scores and labels differ in length");
    if (num_scores == 0 || num_pos == 0 || num_pos == num_scores)
        throw DataError("ROC needs at least one positive and one negative");
}

} // namespace

RocCurve roc_curve(const std::vector<double>& scores,
                   const std::vector<bool>& is_positive) {
    const std::size_t m = scores.size();
    const std::size_t num_pos =
        static_cast<std::size_t>(std::count(is_positive.begin(), is_positive.end(), true));
    check_binary_labels(m, is_positive.size(), num_pos);
    const std::size_t num_neg = m - num_pos;

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve roc;
    roc.points.push_back({0.0, 0.0});
    std::size_t tp = 0, fp = 0, i = 0;
    while (i < m) {
        // All points sharing one score value cross the threshold together.
        std::size_t j = i;
        while (j < m && scores[order[j]] == scores[order[i]]) {
            if (is_positive[order[j]])
                ++tp;
            else
                ++fp;
            ++j;
        }
        roc.points.push_back({static_cast<double>(fp) / static_cast<double>(num_neg),
                              static_cast<double>(tp) / static_cast<double>(num_pos)});
        i = j;
    }

    double auc = 0.0;
    for (std::size_t p = 1; p < roc.points.size(); ++p) {
        auc += (roc.points[p][0] - roc.points[p - 1][0]) *
               (roc.points[p][1] + roc.points[p - 1][1]) * 0.5;
    }
    roc.auc = auc;
    return roc;
}

double auc_pair_count_oracle(const std::vector<double>& scores,
                             const std::vector<bool>& is_positive) {
    const std::size_t m = scores.size();
    std::size_t num_pos = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (is_positive[i]) ++num_pos;
    check_binary_labels(m, is_positive.size(), num_pos);

    double credit = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (!is_positive[i]) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (is_positive[j]) continue;
            ++pairs;
            if (scores[i] > scores[j])
                credit += 1.0;
            else if (scores[i] == scores[j])
                credit += 0.5;
        }
    }
    return credit / static_cast<double>(pairs);
}

namespace {

struct PairSample {
    Eigen::MatrixXd points_a; // m_a x D
    Eigen::MatrixXd points_b; // m_b x D
};

PairSample extract_pair(const Dataset& ds, int class_a, int class_b) {
    const auto by_class = rows_by_class(ds);
    const auto& rows_a = by_class[class_a];
    const auto& rows_b = by_class[class_b];
    PairSample s;
    s.points_a.resize(static_cast<Eigen::Index>(rows_a.size()), ds.dim());
    s.points_b.resize(static_cast<Eigen::Index>(rows_b.size()), ds.dim());
    for (std::size_t i = 0; i < rows_a.size(); ++i)
        s.points_a.row(static_cast<Eigen::Index>(i)) = ds.features.row(rows_a[i]);
    for (std::size_t i = 0; i < rows_b.size(); ++i)
        s.points_b.row(static_cast<Eigen::Index>(i)) = ds.features.row(rows_b[i]);
    return s;
}

RocCurve score_and_rate(const Eigen::MatrixXd& pos, const Eigen::MatrixXd& neg,
                        const Eigen::VectorXd& axis) {
    std::vector<double> scores;
    std::vector<bool> labels;
    scores.reserve(static_cast<std::size_t>(pos.rows() + neg.rows()));
    const Eigen::VectorXd pos_scores = pos * axis;
    const Eigen::VectorXd neg_scores = neg * axis;
    for (Eigen::Index i = 0; i < pos_scores.size(); ++i) {
        scores.push_back(pos_scores(i));
        labels.push_back(true);
    }
    for (Eigen::Index i = 0; i < neg_scores.size(); ++i) {
        scores.push_back(neg_scores(i));
        labels.push_back(false);
    }
    return roc_curve(scores, labels);
}

constexpr int kMaxRedraws = 100;

// One bootstrap replicate: resample both classes with replacement
// (preserving class sizes), refit the axis, rate the out-of-bag points.
RocCurve bootstrap_replicate(const PairSample& sample, double ridge,
                             std::mt19937_64& eng) {
    const Eigen::Index m_a = sample.points_a.rows();
    const Eigen::Index m_b = sample.points_b.rows();
    const Eigen::Index d = sample.points_a.cols();

    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        Eigen::MatrixXd rep_a(m_a, d), rep_b(m_b, d);
        std::vector<bool> drawn_a(static_cast<std::size_t>(m_a), false);
        std::vector<bool> drawn_b(static_cast<std::size_t>(m_b), false);
        for (Eigen::Index i = 0; i < m_a; ++i) {
            const auto pick = rng::uniform_index(eng, static_cast<std::uint64_t>(m_a));
            rep_a.row(i) = sample.points_a.row(static_cast<Eigen::Index>(pick));
            drawn_a[pick] = true;
        }
        for (Eigen::Index i = 0; i < m_b; ++i) {
            const auto pick = rng::uniform_index(eng, static_cast<std::uint64_t>(m_b));
            rep_b.row(i) = sample.points_b.row(static_cast<Eigen::Index>(pick));
            drawn_b[pick] = true;
        }

        std::vector<Eigen::Index> oob_a, oob_b;
        for (Eigen::Index i = 0; i < m_a; ++i)
            if (!drawn_a[static_cast<std::size_t>(i)]) oob_a.push_back(i);
        for (Eigen::Index i = 0; i < m_b; ++i)
            if (!drawn_b[static_cast<std::size_t>(i)]) oob_b.push_back(i);
        if (oob_a.empty() || oob_b.empty()) continue; // redraw

        const LinearAxis axis = fisher_lda_axis(rep_a, rep_b, ridge);

        Eigen::MatrixXd pos(static_cast<Eigen::Index>(oob_a.size()), d);
        Eigen::MatrixXd neg(static_cast<Eigen::Index>(oob_b.size()), d);
        for (std::size_t i = 0; i < oob_a.size(); ++i)
            pos.row(static_cast<Eigen::Index>(i)) = sample.points_a.row(oob_a[i]);
        for (std::size_t i = 0; i < oob_b.size(); ++i)
            neg.row(static_cast<Eigen::Index>(i)) = sample.points_b.row(oob_b[i]);
        return score_and_rate(pos, neg, axis.direction);
    }
    throw DegenerateError("bootstrap replicate: no out-of-bag points after " +
                          std::to_string(kMaxRedraws) + " redraws");
}

} // namespace

BootstrapRocSummary bootstrap_aucba(const Dataset& ds, int class_a,
                                    int class_b, double ridge, int num_samples,
                                    std::uint64_t seed) {
    const int k = ds.num_classes();
    if (class_a == class_b || class_a < 0 || class_a >= k || class_b < 0 || class_b >= k)
        throw ConfigError("bootstrap_aucba: invalid class pair");
    if (num_samples < 1) throw ConfigError("bootstrap_aucba: need at least one sample");

    const PairSample sample = extract_pair(ds, class_a, class_b);
    if (sample.points_a.rows() < 2 || sample.points_b.rows() < 2)
        throw ConfigError("bootstrap_aucba: both classes need at least 2 points");

    BootstrapRocSummary summary;
    summary.num_samples = num_samples;

    const LinearAxis full_axis = fisher_lda_axis(sample.points_a, sample.points_b, ridge);
    summary.observed = score_and_rate(sample.points_a, sample.points_b, full_axis.direction);

    summary.bootstrap_curves.resize(static_cast<std::size_t>(num_samples));
    std::exception_ptr failure = nullptr;
    int failure_index = num_samples;

#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < num_samples; ++r) {
        try {
            auto eng = rng::make_engine(seed, {static_cast<std::uint64_t>(r)});
            summary.bootstrap_curves[static_cast<std::size_t>(r)] =
                bootstrap_replicate(sample, ridge, eng);
        } catch (...) {
#pragma omp critical(classsplom_bootstrap_failure)
            if (r < failure_index) {
                failure_index = r;
                failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);

    summary.bootstrap_aucs.reserve(static_cast<std::size_t>(num_samples));
    for (const auto& curve : summary.bootstrap_curves)
        summary.bootstrap_aucs.push_back(curve.auc);

    const double b = static_cast<double>(num_samples);
    summary.aucba =
        std::accumulate(summary.bootstrap_aucs.begin(), summary.bootstrap_aucs.end(), 0.0) / b;
    double var = 0.0;
    for (double auc : summary.bootstrap_aucs) {
        const double diff = auc - summary.aucba;
        var += diff * diff;
    }
    summary.aucba_std = std::sqrt(var / b); // population convention
    return summary;
}

ConfusionMatrix confusion_matrix(const std::vector<int>& true_labels,
                                 const std::vector<int>& predicted_labels,
                                 int num_classes) {
    if (true_labels.size() != predicted_labels.size())
        throw ConfigError("confusion_matrix: label sequences differ in length");
    if (num_classes < 1) throw ConfigError("confusion_matrix: need at least one class");

    ConfusionMatrix cm;
    cm.counts.assign(static_cast<std::size_t>(num_classes),
                     std::vector<std::int64_t>(static_cast<std::size_t>(num_classes), 0));
    for (std::size_t i = 0; i < true_labels.size(); ++i) {
        const int t = true_labels[i];
        const int p = predicted_labels[i];
        if (t < 0 || t >= num_classes || p < 0 || p >= num_classes)
            throw DataError("confusion_matrix: label out of range at position " +
                            std::to_string(i));
        ++cm.counts[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
    }

    cm.precision.resize(static_cast<std::size_t>(num_classes), 0.0);
    cm.recall.resize(static_cast<std::size_t>(num_classes), 0.0);
    for (int c = 0; c < num_classes; ++c) {
        std::int64_t row_sum = 0, col_sum = 0;
        for (int j = 0; j < num_classes; ++j) {
            row_sum += cm.counts[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
            col_sum += cm.counts[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
        }
        const auto diag = cm.counts[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
        cm.precision[static_cast<std::size_t>(c)] =
            col_sum > 0 ? static_cast<double>(diag) / static_cast<double>(col_sum) : 0.0;
        cm.recall[static_cast<std::size_t>(c)] =
            row_sum > 0 ? static_cast<double>(diag) / static_cast<double>(row_sum) : 0.0;
    }
    return cm;
}

} // namespace classsplom
