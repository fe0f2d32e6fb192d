#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "classsplom/dataset.hpp"

namespace classsplom {

/// ROC polyline from sweeping a threshold downward over scores. points runs
/// from (0,0) to (1,1) with both coordinates nondecreasing; tied scores move
/// as one block, so ties appear as diagonal segments. auc is the trapezoidal
/// integral of points.
struct RocCurve {
    std::vector<std::array<double, 2>> points; // (fpr, tpr)
    double auc = 0.0;
};

/// Observed ROC plus B bootstrap ROCs with the bootstrap AUC average
/// (AUCBA) and its population standard deviation. bootstrap_aucs mirrors
/// bootstrap_curves[i].auc; a summary re-read from JSON carries only the
/// aucs (curve geometry is not serialized).
struct BootstrapRocSummary {
    RocCurve observed;
    std::vector<RocCurve> bootstrap_curves;
    std::vector<double> bootstrap_aucs;
    double aucba = 0.0;
    double aucba_std = 0.0;
    int num_samples = 0; // B
};

/// K x K contingency counts, rows = true class, columns = predicted class.
/// precision[j] and recall[i] are fractions in [0, 1] (0 when the matching
/// column or row is empty).
struct ConfusionMatrix {
    std::vector<std::vector<std::int64_t>> counts;
    std::vector<double> precision;
    std::vector<double> recall;
};

// ROC by threshold sweep, AUC by trapezoid rule (equals the Mann-Whitney
// statistic with half credit for ties). Requires at least one positive and
// one negative.
RocCurve roc_curve(const std::vector<double>& scores,
                   const std::vector<bool>& is_positive);

// Independent AUC oracle: exhaustive O(#pos * #neg) pair counting of
// (#{pos > neg} + 0.5 * #{pos == neg}) / (#pos * #neg). Shares no code with
// roc_curve.
double auc_pair_count_oracle(const std::vector<double>& scores,
                             const std::vector<bool>& is_positive);

// Bootstrap trustworthiness estimate for the (class_a, class_b) discriminant
// axis. The observed curve scores the full pair sample on the full-sample
// axis (positives = class_a). Each of the B replicates resamples the pair
// with replacement stratified per class, refits the axis, and scores the
// replicate's out-of-bag points; a replicate whose out-of-bag set lacks a
// positive or a negative is redrawn a bounded number of times. Replicate
// RNG streams are keyed by (seed, replicate index), so results are
// independent of evaluation order.
BootstrapRocSummary bootstrap_aucba(const Dataset& ds, int class_a,
                                    int class_b, double ridge, int num_samples,
                                    std::uint64_t seed);

// Contingency counts of true vs predicted labels with per-class precision
// and recall.
ConfusionMatrix confusion_matrix(const std::vector<int>& true_labels,
                                 const std::vector<int>& predicted_labels,
                                 int num_classes);

} // namespace classsplom
