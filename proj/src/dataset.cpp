#include "classsplom/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "classsplom/errors.hpp"
#include "classsplom/rng.hpp"

namespace classsplom {

namespace {

bool parse_double(const std::string& cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !cell.empty();
}

bool parse_index(const std::string& text, std::size_t& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !text.empty();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double x) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        double back = 0.0;
        if (parse_double(buf, back) && back == x) break;
    }
    return buf;
}

} // namespace

void validate(const Dataset& ds) {
    const Eigen::Index n = ds.size();
    const Eigen::Index d = ds.dim();
    const int k = ds.num_classes();
    if (n < 1) throw DataError("dataset is empty");
    if (d < 2) throw DataError("dataset needs at least 2 feature columns, got " + std::to_string(d));
    if (k < 2) throw DataError("dataset needs at least 2 classes, got " + std::to_string(k));
    if (static_cast<Eigen::Index>(ds.labels.size()) != n)
        throw DataError("label count does not match row count");
    std::vector<Eigen::Index> class_counts(k, 0);
    for (int label : ds.labels) {
        if (label < 0 || label >= k)
            throw DataError("label " + std::to_string(label) + " out of range [0, " +
                            std::to_string(k) + ")");
        ++class_counts[label];
    }
    for (int c = 0; c < k; ++c) {
        if (class_counts[c] < 2)
            throw DataError("class '" + ds.class_names[c] + "' has " +
                            std::to_string(class_counts[c]) + " rows; need at least 2");
    }
    if (!ds.features.allFinite()) throw DataError("dataset contains a non-finite feature value");
    std::unordered_set<std::string> names(ds.class_names.begin(), ds.class_names.end());
    if (static_cast<int>(names.size()) != k) throw DataError("class names are not unique");
}

std::vector<std::vector<Eigen::Index>> rows_by_class(const Dataset& ds) {
    std::vector<std::vector<Eigen::Index>> rows(ds.num_classes());
    for (Eigen::Index i = 0; i < ds.size(); ++i) rows[ds.labels[i]].push_back(i);
    return rows;
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty() && in.peek() == std::ifstream::traits_type::eof()) break;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw DataError("'" + path + "' has no rows");

    const std::size_t arity = rows.front().size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != arity)
            throw DataError(path + ": row " + std::to_string(r + 1) + " has " +
                            std::to_string(rows[r].size()) + " cells, expected " +
                            std::to_string(arity));
    }
    if (arity < 3)
        throw DataError(path + ": need at least 2 feature columns plus a label column");

    // Resolve the label column, then decide whether row 1 is a header: in
    // name mode it must be; in index mode it is one iff some non-label cell
    // of row 1 is not a number.
    std::size_t label_idx = 0;
    bool has_header = false;
    if (parse_index(label_column, label_idx)) {
        if (label_idx >= arity)
            throw DataError(path + ": label column index " + label_column + " out of range; file has " +
                            std::to_string(arity) + " columns");
        for (std::size_t c = 0; c < arity && !has_header; ++c) {
            double v;
            if (c != label_idx && !parse_double(rows[0][c], v)) has_header = true;
        }
    } else {
        const auto& header = rows.front();
        auto it = std::find(header.begin(), header.end(), label_column);
        if (it == header.end())
            throw DataError(path + ": no column named '" + label_column + "' in header");
        label_idx = static_cast<std::size_t>(it - header.begin());
        has_header = true;
    }

    const std::size_t first_data = has_header ? 1 : 0;
    const std::size_t n = rows.size() - first_data;
    if (n == 0) throw DataError(path + ": no data rows");

    Dataset ds;
    ds.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(arity - 1));
    ds.labels.resize(n);
    std::unordered_map<std::string, int> label_ids;

    for (std::size_t r = 0; r < n; ++r) {
        const auto& cells = rows[first_data + r];
        Eigen::Index feature_col = 0;
        for (std::size_t c = 0; c < arity; ++c) {
            if (c == label_idx) {
                auto [it, inserted] =
                    label_ids.try_emplace(cells[c], static_cast<int>(ds.class_names.size()));
                if (inserted) ds.class_names.push_back(cells[c]);
                ds.labels[r] = it->second;
                continue;
            }
            double value = 0.0;
            if (!parse_double(cells[c], value) || !std::isfinite(value))
                throw DataError(path + ": row " + std::to_string(first_data + r + 1) + ", column " +
                                std::to_string(c + 1) + ": cannot parse '" + cells[c] +
                                "' as a finite number");
            ds.features(static_cast<Eigen::Index>(r), feature_col++) = value;
        }
    }

    validate(ds);
    return ds;
}

void write_csv(const Dataset& ds, const std::string& path,
               const std::string& label_column_name) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    for (Eigen::Index c = 0; c < ds.dim(); ++c) out << "f" << c << ",";
    out << label_column_name << "\n";
    for (Eigen::Index r = 0; r < ds.size(); ++r) {
        for (Eigen::Index c = 0; c < ds.dim(); ++c) out << format_double(ds.features(r, c)) << ",";
        out << ds.class_names[ds.labels[r]] << "\n";
    }
    if (!out) throw DataError("write to '" + path + "' failed");
}

std::vector<int> load_predictions(const std::string& path, const Dataset& ds) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty() && in.peek() == std::ifstream::traits_type::eof()) break;
        lines.push_back(line);
    }
    std::unordered_map<std::string, int> ids;
    for (int c = 0; c < ds.num_classes(); ++c) ids.emplace(ds.class_names[c], c);

    const std::size_t n = static_cast<std::size_t>(ds.size());
    std::size_t first = 0;
    if (lines.size() == n + 1 && !ids.count(lines[0])) first = 1; // header line
    if (lines.size() - first != n)
        throw DataError(path + ": expected " + std::to_string(n) + " predictions, got " +
                        std::to_string(lines.size() - first));

    std::vector<int> predicted(n);
    for (std::size_t i = first; i < lines.size(); ++i) {
        auto it = ids.find(lines[i]);
        if (it == ids.end())
            throw DataError(path + ": line " + std::to_string(i + 1) + ": unknown class '" +
                            lines[i] + "'");
        predicted[i - first] = it->second;
    }
    return predicted;
}

Dataset stratified_subsample(const Dataset& ds, int per_class, std::uint64_t seed) {
    validate(ds);
    if (per_class < 2) throw ConfigError("per_class must be >= 2, got " + std::to_string(per_class));

    std::vector<Eigen::Index> kept;
    const auto by_class = rows_by_class(ds);
    for (std::size_t k = 0; k < by_class.size(); ++k) {
        auto rows = by_class[k];
        const std::size_t quota = static_cast<std::size_t>(per_class);
        if (rows.size() > quota) {
            // Partial Fisher-Yates, then restore original order among kept rows.
            auto eng = rng::make_engine(seed, {static_cast<std::uint64_t>(k)});
            for (std::size_t i = 0; i < quota; ++i) {
                const std::size_t j = i + rng::uniform_index(eng, rows.size() - i);
                std::swap(rows[i], rows[j]);
            }
            rows.resize(quota);
            std::sort(rows.begin(), rows.end());
        }
        kept.insert(kept.end(), rows.begin(), rows.end());
    }
    std::sort(kept.begin(), kept.end());

    Dataset out;
    out.class_names = ds.class_names;
    out.features.resize(static_cast<Eigen::Index>(kept.size()), ds.dim());
    out.labels.resize(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        out.features.row(static_cast<Eigen::Index>(i)) = ds.features.row(kept[i]);
        out.labels[i] = ds.labels[kept[i]];
    }
    return out;
}

Dataset generate_gaussian_blobs(const Eigen::MatrixXd& means,
                                const std::vector<double>& scales,
                                int per_class, std::uint64_t seed) {
    const int k = static_cast<int>(means.rows());
    const Eigen::Index d = means.cols();
    if (k < 2) throw ConfigError("need at least 2 classes, got " + std::to_string(k));
    if (d < 2) throw ConfigError("need at least 2 dimensions, got " + std::to_string(d));
    if (per_class < 2) throw ConfigError("per_class must be >= 2, got " + std::to_string(per_class));
    if (static_cast<int>(scales.size()) != k)
        throw ConfigError("expected one scale per class");
    for (double s : scales)
        if (!(s > 0.0)) throw ConfigError("scales must be positive");

    Dataset ds;
    ds.features.resize(static_cast<Eigen::Index>(k) * per_class, d);
    ds.labels.resize(static_cast<std::size_t>(k) * per_class);
    for (int c = 0; c < k; ++c) {
        ds.class_names.push_back("class" + std::to_string(c));
        rng::NormalSampler normal(rng::make_engine(seed, {static_cast<std::uint64_t>(c)}));
        for (int i = 0; i < per_class; ++i) {
            const Eigen::Index row = static_cast<Eigen::Index>(c) * per_class + i;
            for (Eigen::Index j = 0; j < d; ++j)
                ds.features(row, j) = means(c, j) + scales[c] * normal();
            ds.labels[static_cast<std::size_t>(row)] = c;
        }
    }
    return ds;
}

} // namespace classsplom
