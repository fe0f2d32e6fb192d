#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace classsplom {

/// Labeled point set: n rows of D features plus a class index per row.
/// Class indices are dense in [0, K) and class_names[k] is the display name
/// of class k.
struct Dataset {
    Eigen::MatrixXd features;             // n x D
    std::vector<int> labels;              // size n, values in [0, K)
    std::vector<std::string> class_names; // size K, unique

    Eigen::Index size() const { return features.rows(); }
    Eigen::Index dim() const { return features.cols(); }
    int num_classes() const { return static_cast<int>(class_names.size()); }
};

// Throws DataError unless: n >= 1, D >= 2, K >= 2, every label in range,
// every class has at least two rows, all values finite, class names unique.
void validate(const Dataset& ds);

// Row indices of each class, in original row order.
std::vector<std::vector<Eigen::Index>> rows_by_class(const Dataset& ds);

// Loads a comma-separated file. One row per point, every column numeric
// except the label column. label_column is a header name or a 0-based column
// index given as text; a header row is auto-detected (first row counts as a
// header when any of its non-label cells is not a number). Labels are
// factorized in first-appearance order.
Dataset load_csv(const std::string& path, const std::string& label_column);

// Inverse of load_csv up to float formatting; doubles are written with
// round-trip precision so load_csv(write_csv(ds)) == ds exactly.
void write_csv(const Dataset& ds, const std::string& path,
               const std::string& label_column_name = "label");

// Reads one predicted class name per line (a lone header line equal to
// column_hint is skipped) and maps names through ds.class_names.
std::vector<int> load_predictions(const std::string& path, const Dataset& ds);

// Keeps min(per_class, class size) points of every class, drawn uniformly
// without replacement; kept rows stay in their original order. Deterministic
// in (ds, per_class, seed).
Dataset stratified_subsample(const Dataset& ds, int per_class, std::uint64_t seed);

// Synthetic K-class test data: class k is per_class draws of
// means.row(k) + scales[k] * z with z standard normal per coordinate.
Dataset generate_gaussian_blobs(const Eigen::MatrixXd& means,
                                const std::vector<double>& scales,
                                int per_class, std::uint64_t seed);

} // namespace classsplom
