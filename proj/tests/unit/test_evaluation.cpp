#include <doctest.h>

#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "classsplom/dataset.hpp"
#include "classsplom/errors.hpp"
#include "classsplom/evaluation.hpp"
#include "classsplom/rng.hpp"

using namespace classsplom;

namespace {

using Points = std::vector<std::array<double, 2>>;

// The published 5-dialect confusion counts used as a fixture throughout.
const std::vector<std::vector<std::int64_t>> kDialectCounts = {
    {221, 15, 57, 13, 9},
    {45, 121, 82, 12, 5},
    {74, 43, 199, 18, 14},
    {19, 17, 20, 218, 5},
    {80, 21, 66, 22, 166},
};

std::pair<std::vector<int>, std::vector<int>> expand_counts(
    const std::vector<std::vector<std::int64_t>>& counts) {
    std::vector<int> truth, predicted;
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::size_t j = 0; j < counts[i].size(); ++j)
            for (std::int64_t r = 0; r < counts[i][j]; ++r) {
                truth.push_back(static_cast<int>(i));
                predicted.push_back(static_cast<int>(j));
            }
    return {truth, predicted};
}

double trapezoid(const Points& points) {
    double auc = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i)
        auc += (points[i][0] - points[i - 1][0]) * (points[i][1] + points[i - 1][1]) * 0.5;
    return auc;
}

// A margin-separated dataset on a line embedded in the plane: class "lo"
// occupies [0, 2], class "hi" occupies [4, 6] along the direction (1, 2).
Dataset margin_dataset(int per_class) {
    Eigen::Vector2d u(1.0, 2.0);
    u.normalize();
    Dataset ds;
    ds.features.resize(2 * per_class, 2);
    for (int i = 0; i < per_class; ++i) {
        const double t = 2.0 * i / (per_class - 1);
        ds.features.row(i) = (4.0 + t) * u.transpose(); // class 0 on the high side
        ds.features.row(per_class + i) = t * u.transpose();
    }
    ds.labels.assign(static_cast<std::size_t>(2 * per_class), 0);
    for (int i = 0; i < per_class; ++i) ds.labels[static_cast<std::size_t>(per_class + i)] = 1;
    ds.class_names = {"hi", "lo"};
    return ds;
}

} // namespace

TEST_CASE("roc_curve enumerates threshold steps for perfect separation") {
    const RocCurve roc = roc_curve({0.9, 0.8, 0.3, 0.1}, {true, true, false, false});
    const Points expected = {{0, 0}, {0, 0.5}, {0, 1}, {0.5, 1}, {1, 1}};
    CHECK(roc.points == expected);
    CHECK(roc.auc == 1.0);
}

TEST_CASE("roc_curve collapses an all-tied sample to the diagonal") {
    const RocCurve roc = roc_curve({0.4, 0.4, 0.4, 0.4, 0.4}, {true, false, true, false, false});
    const Points expected = {{0, 0}, {1, 1}};
    CHECK(roc.points == expected);
    CHECK(roc.auc == 0.5);
}

TEST_CASE("roc_curve matches the pair-count value on the 3-of-4 example") {
    const std::vector<double> scores{0.8, 0.6, 0.4, 0.2};
    const std::vector<bool> labels{true, false, true, false};
    const RocCurve roc = roc_curve(scores, labels);
    CHECK(roc.auc == 0.75);
    CHECK(auc_pair_count_oracle(scores, labels) == 0.75);
}

TEST_CASE("auc_pair_count_oracle handles the trivial extremes") {
    CHECK(auc_pair_count_oracle({0.9, 0.8, 0.3, 0.1}, {true, true, false, false}) == 1.0);
    CHECK(auc_pair_count_oracle({0.4, 0.4, 0.4, 0.4}, {true, false, true, false}) == 0.5);
}

TEST_CASE("roc_curve agrees with the oracle on random tied instances") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto eng = rng::make_engine(seed, {500});
        const int m = 2 + static_cast<int>(rng::uniform_index(eng, 49));
        std::vector<double> scores(static_cast<std::size_t>(m));
        std::vector<bool> labels(static_cast<std::size_t>(m));
        bool has_pos = false, has_neg = false;
        for (int i = 0; i < m; ++i) {
            // Quantized scores force plenty of ties.
            scores[static_cast<std::size_t>(i)] =
                static_cast<double>(rng::uniform_index(eng, 6)) / 5.0;
            labels[static_cast<std::size_t>(i)] = rng::uniform_index(eng, 2) == 1;
            (labels[static_cast<std::size_t>(i)] ? has_pos : has_neg) = true;
        }
        if (!has_pos) labels[0] = true;
        if (!has_neg) labels[static_cast<std::size_t>(m - 1)] = false;

        const RocCurve roc = roc_curve(scores, labels);
        CHECK(std::fabs(roc.auc - auc_pair_count_oracle(scores, labels)) <= 1e-12);

        // Curve invariants.
        REQUIRE(roc.points.size() >= 2);
        CHECK(roc.points.front() == std::array<double, 2>{0.0, 0.0});
        CHECK(roc.points.back() == std::array<double, 2>{1.0, 1.0});
        for (std::size_t i = 1; i < roc.points.size(); ++i) {
            CHECK(roc.points[i][0] >= roc.points[i - 1][0]);
            CHECK(roc.points[i][1] >= roc.points[i - 1][1]);
        }
        CHECK(std::fabs(roc.auc - trapezoid(roc.points)) <= 1e-12);
    }
}

TEST_CASE("roc_curve is invariant under strictly increasing score transforms") {
    const std::vector<double> scores{0.1, 0.5, 0.5, -2.0, 3.0, 0.0};
    const std::vector<bool> labels{true, false, true, false, true, false};
    const RocCurve base = roc_curve(scores, labels);

    std::vector<double> exp_scores, affine_scores;
    for (double s : scores) {
        exp_scores.push_back(std::exp(s));
        affine_scores.push_back(2.0 * s + 1.0);
    }
    CHECK(roc_curve(exp_scores, labels).points == base.points);
    CHECK(roc_curve(affine_scores, labels).points == base.points);
}

TEST_CASE("roc_curve auc is symmetric under label and score negation") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto eng = rng::make_engine(seed, {600});
        std::vector<double> scores;
        std::vector<bool> labels;
        for (int i = 0; i < 17; ++i) {
            scores.push_back(static_cast<double>(rng::uniform_index(eng, 9)));
            labels.push_back(rng::uniform_index(eng, 2) == 1);
        }
        labels[0] = true;
        labels[1] = false;

        std::vector<double> neg_scores;
        std::vector<bool> neg_labels;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            neg_scores.push_back(-scores[i]);
            neg_labels.push_back(!labels[i]);
        }
        CHECK(std::fabs(roc_curve(scores, labels).auc -
                        roc_curve(neg_scores, neg_labels).auc) <= 1e-12);
    }
}

TEST_CASE("roc_curve rejects single-class inputs") {
    CHECK_THROWS_AS(roc_curve({1.0, 2.0}, {true, true}), DataError);
    CHECK_THROWS_AS(roc_curve({1.0, 2.0}, {false, false}), DataError);
    CHECK_THROWS_AS(auc_pair_count_oracle({1.0, 2.0}, {true, true}), DataError);
    CHECK_THROWS_AS(roc_curve({1.0}, {true, false}), ConfigError);
}

TEST_CASE("bootstrap_aucba produces the requested number of replicates") {
    Eigen::MatrixXd means(2, 2);
    means << 0, 0, 3, 0;
    const Dataset ds = generate_gaussian_blobs(means, {1.0, 1.0}, 25, 4);
    const BootstrapRocSummary summary = bootstrap_aucba(ds, 0, 1, 1e-6, 100, 7);
    CHECK(summary.bootstrap_curves.size() == 100);
    CHECK(summary.bootstrap_aucs.size() == 100);
    CHECK(summary.num_samples == 100);

    // aucba and its std are recomputable from the per-replicate aucs.
    double mean = 0.0;
    for (std::size_t i = 0; i < summary.bootstrap_aucs.size(); ++i) {
        CHECK(summary.bootstrap_aucs[i] == summary.bootstrap_curves[i].auc);
        mean += summary.bootstrap_aucs[i];
    }
    mean /= 100.0;
    double var = 0.0;
    for (double auc : summary.bootstrap_aucs) var += (auc - mean) * (auc - mean);
    CHECK(std::fabs(summary.aucba - mean) <= 1e-12);
    CHECK(std::fabs(summary.aucba_std - std::sqrt(var / 100.0)) <= 1e-12);
}

TEST_CASE("bootstrap_aucba is exact on margin-separated classes") {
    const Dataset ds = margin_dataset(30);
    const BootstrapRocSummary summary = bootstrap_aucba(ds, 0, 1, 1e-6, 100, 11);
    CHECK(summary.observed.auc == 1.0);
    CHECK(summary.aucba == 1.0);
    CHECK(summary.aucba_std == 0.0);
    for (double auc : summary.bootstrap_aucs) CHECK(auc == 1.0);
}

TEST_CASE("bootstrap_aucba is deterministic and thread-count independent") {
    Eigen::MatrixXd means(2, 3);
    means << 0, 0, 0, 1, 1, 0;
    const Dataset ds = generate_gaussian_blobs(means, {1.0, 1.0}, 20, 3);

    const BootstrapRocSummary s1 = bootstrap_aucba(ds, 0, 1, 1e-6, 50, 123);
    const BootstrapRocSummary s2 = bootstrap_aucba(ds, 0, 1, 1e-6, 50, 123);
    CHECK(s1.bootstrap_aucs == s2.bootstrap_aucs);
    CHECK(s1.aucba == s2.aucba);
    CHECK(s1.aucba_std == s2.aucba_std);
    CHECK(s1.observed.points == s2.observed.points);

#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const BootstrapRocSummary serial = bootstrap_aucba(ds, 0, 1, 1e-6, 50, 123);
    omp_set_num_threads(saved);
    CHECK(serial.bootstrap_aucs == s1.bootstrap_aucs);
#endif
}

TEST_CASE("bootstrap_aucba validates classes and sample count") {
    Eigen::MatrixXd means(2, 2);
    means << 0, 0, 3, 0;
    const Dataset ds = generate_gaussian_blobs(means, {1.0, 1.0}, 10, 4);
    CHECK_THROWS_AS(bootstrap_aucba(ds, 0, 0, 1e-6, 10, 0), ConfigError);
    CHECK_THROWS_AS(bootstrap_aucba(ds, 0, 2, 1e-6, 10, 0), ConfigError);
    CHECK_THROWS_AS(bootstrap_aucba(ds, 0, 1, 1e-6, 0, 0), ConfigError);
}

TEST_CASE("confusion_matrix reproduces the dialect fixture scores") {
    const auto [truth, predicted] = expand_counts(kDialectCounts);
    const ConfusionMatrix cm = confusion_matrix(truth, predicted, 5);

    CHECK(cm.counts == kDialectCounts);

    // MSA is class 3: precision 218/283, recall 218/279.
    CHECK(cm.precision[3] == doctest::Approx(0.770).epsilon(1e-3));
    CHECK(cm.precision[3] == 218.0 / 283.0);
    CHECK(cm.recall[3] == 218.0 / 279.0);

    // NOR is class 4: precision 166/199, recall 166/355.
    CHECK(cm.precision[4] == 166.0 / 199.0);
    CHECK(cm.recall[4] == 166.0 / 355.0);

    // Marginals: #True row sums, #Pred column sums.
    const std::vector<std::int64_t> expected_true = {315, 265, 348, 279, 355};
    const std::vector<std::int64_t> expected_pred = {439, 217, 424, 283, 199};
    for (int c = 0; c < 5; ++c) {
        std::int64_t row = 0, col = 0;
        for (int j = 0; j < 5; ++j) {
            row += cm.counts[c][j];
            col += cm.counts[j][c];
        }
        CHECK(row == expected_true[c]);
        CHECK(col == expected_pred[c]);
    }
}

TEST_CASE("confusion_matrix gives perfect scores for perfect predictions") {
    const std::vector<int> truth{0, 1, 2, 0, 1, 2, 2};
    const ConfusionMatrix cm = confusion_matrix(truth, truth, 3);
    for (int c = 0; c < 3; ++c) {
        CHECK(cm.precision[c] == 1.0);
        CHECK(cm.recall[c] == 1.0);
    }
}

TEST_CASE("confusion_matrix handles empty rows and columns") {
    // Class 2 never occurs in truth or prediction.
    const ConfusionMatrix cm = confusion_matrix({0, 1, 0}, {1, 1, 0}, 3);
    CHECK(cm.precision[2] == 0.0);
    CHECK(cm.recall[2] == 0.0);
    CHECK(cm.counts[0][1] == 1);
}

TEST_CASE("confusion_matrix rejects out-of-range labels") {
    CHECK_THROWS_AS(confusion_matrix({0, 3}, {0, 1}, 3), DataError);
    CHECK_THROWS_AS(confusion_matrix({0, 1}, {0, -1}, 3), DataError);
    CHECK_THROWS_AS(confusion_matrix({0, 1}, {0}, 3), ConfigError);
}
