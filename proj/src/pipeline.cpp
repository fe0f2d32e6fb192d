#include "classsplom/pipeline.hpp"

#include <exception>
#include <fstream>
#include <iostream>
#include <utility>

#include <json.hpp>

#include "classsplom/errors.hpp"
#include "classsplom/rng.hpp"

namespace classsplom {

namespace {

std::vector<std::pair<int, int>> enumerate_pairs(int num_classes) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < num_classes; ++a)
        for (int b = a + 1; b < num_classes; ++b) pairs.emplace_back(a, b);
    return pairs;
}

PairCell compute_one_pair(const Dataset& ds, int a, int b, double ridge,
                          int num_samples, std::uint64_t seed) {
    PairCell cell;
    cell.projection = pair_projection(ds, a, b, ridge);
    const std::uint64_t pair_seed =
        rng::derive_seed(seed, {static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)});
    cell.summary = bootstrap_aucba(ds, a, b, ridge, num_samples, pair_seed);
    return cell;
}

} // namespace

std::vector<PairCell> compute_pairs_serial(const Dataset& ds, double ridge,
                                           int num_samples, std::uint64_t seed) {
    std::vector<PairCell> cells;
    for (const auto& [a, b] : enumerate_pairs(ds.num_classes()))
        cells.push_back(compute_one_pair(ds, a, b, ridge, num_samples, seed));
    return cells;
}

std::vector<PairCell> compute_pairs_parallel(const Dataset& ds, double ridge,
                                             int num_samples, std::uint64_t seed) {
    const auto pairs = enumerate_pairs(ds.num_classes());
    std::vector<PairCell> cells(pairs.size());
    std::exception_ptr failure = nullptr;
    int failure_index = static_cast<int>(pairs.size());

#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < static_cast<int>(pairs.size()); ++p) {
        try {
            cells[static_cast<std::size_t>(p)] = compute_one_pair(
                ds, pairs[static_cast<std::size_t>(p)].first,
                pairs[static_cast<std::size_t>(p)].second, ridge, num_samples, seed);
        } catch (...) {
#pragma omp critical(classsplom_pair_failure)
            if (p < failure_index) {
                failure_index = p;
                failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    return cells;
}

namespace {

void check_config(const RunConfig& config) {
    if (config.input_path.empty()) throw ConfigError("input path is required");
    if (config.bootstrap_samples < 1) throw ConfigError("bootstrap sample count must be >= 1");
    if (config.per_class != 0 && config.per_class < 2)
        throw ConfigError("per_class must be 0 (off) or >= 2");
    if (config.pca_dims != 0 && config.pca_dims < 2)
        throw ConfigError("pca_dims must be 0 (off) or >= 2");
    if (config.ridge < 0.0) throw ConfigError("ridge must be nonnegative");
    if (config.cell_size <= 0.0) throw ConfigError("cell_size must be positive");
}

} // namespace

ClassSplomModel build_model(const RunConfig& config) {
    check_config(config);

    Dataset ds = load_csv(config.input_path, config.label_column);

    ClassSplomModel model;
    model.class_names = ds.class_names;
    model.palette = default_palette(ds.num_classes());

    // The confusion matrix comes from an external classifier's predictions
    // over the full input, before any subsampling.
    if (!config.predictions_path.empty()) {
        const std::vector<int> predicted = load_predictions(config.predictions_path, ds);
        model.confusion = confusion_matrix(ds.labels, predicted, ds.num_classes());
    }

    if (config.per_class > 0) ds = stratified_subsample(ds, config.per_class, config.seed);
    if (config.pca_dims > 0) {
        if (config.pca_dims > ds.dim())
            throw ConfigError("pca_dims exceeds the data dimensionality");
        ds = pca_reduce(ds, config.pca_dims).first;
    }

    model.pairs = config.parallel
                      ? compute_pairs_parallel(ds, config.ridge, config.bootstrap_samples,
                                               config.seed)
                      : compute_pairs_serial(ds, config.ridge, config.bootstrap_samples,
                                             config.seed);
    return model;
}

namespace {

using nlohmann::ordered_json;

ordered_json roc_to_json(const RocCurve& curve) {
    ordered_json j;
    j["points"] = ordered_json::array();
    for (const auto& p : curve.points) j["points"].push_back({p[0], p[1]});
    j["auc"] = curve.auc;
    return j;
}

RocCurve roc_from_json(const ordered_json& j) {
    RocCurve curve;
    for (const auto& p : j.at("points"))
        curve.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    curve.auc = j.at("auc").get<double>();
    return curve;
}

ordered_json config_to_json(const RunConfig& config) {
    ordered_json j;
    j["input"] = config.input_path;
    j["label_column"] = config.label_column;
    j["predictions"] = config.predictions_path;
    j["per_class"] = config.per_class;
    j["pca_dims"] = config.pca_dims;
    j["ridge"] = config.ridge;
    j["bootstrap_samples"] = config.bootstrap_samples;
    j["seed"] = config.seed;
    j["svg"] = config.svg_path;
    j["json"] = config.json_path;
    j["cell_size"] = config.cell_size;
    j["annotate_auc"] = config.annotate_auc;
    return j;
}

} // namespace

void export_model_json(const ClassSplomModel& model, const RunConfig& config,
                       const std::string& path) {
    ordered_json j;
    j["classes"] = model.class_names;
    j["palette"] = model.palette;
    j["pairs"] = ordered_json::array();
    for (const auto& cell : model.pairs) {
        const auto& pp = cell.projection;
        ordered_json p;
        p["class_a"] = pp.class_a;
        p["class_b"] = pp.class_b;
        p["axis1"] = std::vector<double>(pp.axis1.direction.begin(), pp.axis1.direction.end());
        p["axis2"] = std::vector<double>(pp.axis2.direction.begin(), pp.axis2.direction.end());
        p["coords"] = ordered_json::array();
        for (Eigen::Index i = 0; i < pp.coords.rows(); ++i)
            p["coords"].push_back({pp.coords(i, 0), pp.coords(i, 1)});
        p["point_class"] = pp.point_class;
        p["observed_roc"] = roc_to_json(cell.summary.observed);
        p["bootstrap_aucs"] = cell.summary.bootstrap_aucs;
        p["aucba"] = cell.summary.aucba;
        p["aucba_std"] = cell.summary.aucba_std;
        j["pairs"].push_back(std::move(p));
    }
    if (model.confusion) {
        ordered_json c;
        c["counts"] = model.confusion->counts;
        c["precision"] = model.confusion->precision;
        c["recall"] = model.confusion->recall;
        j["confusion"] = std::move(c);
    }
    j["config"] = config_to_json(config);

    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
    if (!out) throw DataError("write to '" + path + "' failed");
}

ClassSplomModel import_model_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DataError("'" + path + "': invalid JSON: " + e.what());
    }

    try {
        ClassSplomModel model;
        model.class_names = j.at("classes").get<std::vector<std::string>>();
        model.palette = j.at("palette").get<std::vector<std::string>>();
        for (const auto& p : j.at("pairs")) {
            PairCell cell;
            auto& pp = cell.projection;
            pp.class_a = p.at("class_a").get<int>();
            pp.class_b = p.at("class_b").get<int>();
            const auto axis1 = p.at("axis1").get<std::vector<double>>();
            const auto axis2 = p.at("axis2").get<std::vector<double>>();
            pp.axis1.direction = Eigen::Map<const Eigen::VectorXd>(
                axis1.data(), static_cast<Eigen::Index>(axis1.size()));
            pp.axis2.direction = Eigen::Map<const Eigen::VectorXd>(
                axis2.data(), static_cast<Eigen::Index>(axis2.size()));
            const auto& coords = p.at("coords");
            pp.coords.resize(static_cast<Eigen::Index>(coords.size()), 2);
            for (std::size_t i = 0; i < coords.size(); ++i) {
                pp.coords(static_cast<Eigen::Index>(i), 0) = coords[i].at(0).get<double>();
                pp.coords(static_cast<Eigen::Index>(i), 1) = coords[i].at(1).get<double>();
            }
            pp.point_class = p.at("point_class").get<std::vector<int>>();
            cell.summary.observed = roc_from_json(p.at("observed_roc"));
            cell.summary.bootstrap_aucs = p.at("bootstrap_aucs").get<std::vector<double>>();
            cell.summary.aucba = p.at("aucba").get<double>();
            cell.summary.aucba_std = p.at("aucba_std").get<double>();
            cell.summary.num_samples = static_cast<int>(cell.summary.bootstrap_aucs.size());
            model.pairs.push_back(std::move(cell));
        }
        if (j.contains("confusion")) {
            ConfusionMatrix cm;
            cm.counts = j["confusion"].at("counts").get<std::vector<std::vector<std::int64_t>>>();
            cm.precision = j["confusion"].at("precision").get<std::vector<double>>();
            cm.recall = j["confusion"].at("recall").get<std::vector<double>>();
            model.confusion = std::move(cm);
        }
        return model;
    } catch (const ordered_json::exception& e) {
        throw DataError("'" + path + "': unexpected model schema: " + e.what());
    }
}

int run(const RunConfig& config) {
    try {
        const ClassSplomModel model = build_model(config);
        if (!config.svg_path.empty()) {
            RenderOptions opts;
            opts.cell_size = config.cell_size;
            opts.annotate_auc = config.annotate_auc;
            const SvgDocument doc = render_classsplom(model, opts);
            std::ofstream out(config.svg_path);
            if (!out) throw DataError("cannot write '" + config.svg_path + "'");
            out << doc.text;
            if (!out) throw DataError("write to '" + config.svg_path + "' failed");
        }
        if (!config.json_path.empty()) export_model_json(model, config, config.json_path);
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "classsplom: config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DegenerateError& e) {
        std::cerr << "classsplom: degenerate data: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const DataError& e) {
        std::cerr << "classsplom: data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "classsplom: error: " << e.what() << "\n";
        return kExitData;
    }
}

} // namespace classsplom
