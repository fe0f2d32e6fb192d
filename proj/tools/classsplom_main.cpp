#include <charconv>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "classsplom/dataset.hpp"
#include "classsplom/errors.hpp"
#include "classsplom/pipeline.hpp"

namespace {

// CLASSSPLOM_SEED, when set, wins over --seed.
bool apply_seed_override(std::uint64_t& seed) {
    const char* env = std::getenv("CLASSSPLOM_SEED");
    if (!env) return true;
    const std::string text(env);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        std::cerr << "classsplom: config error: CLASSSPLOM_SEED='" << text
                  << "' is not an unsigned integer\n";
        return false;
    }
    seed = value;
    return true;
}

int generate_fixture(int num_classes, int dims, int per_class, double separation,
                     double scale, std::uint64_t seed, const std::string& output) {
    try {
        // Axis-aligned means: class k sits at separation*(1 + k/dims) along
        // coordinate k mod dims, so any two classes are at least
        // `separation` apart.
        Eigen::MatrixXd means = Eigen::MatrixXd::Zero(num_classes, dims);
        for (int k = 0; k < num_classes; ++k)
            means(k, k % dims) = separation * (1.0 + static_cast<double>(k / dims));
        const std::vector<double> scales(static_cast<std::size_t>(num_classes), scale);
        const classsplom::Dataset ds =
            classsplom::generate_gaussian_blobs(means, scales, per_class, seed);
        classsplom::write_csv(ds, output);
        return classsplom::kExitOk;
    } catch (const classsplom::ConfigError& e) {
        std::cerr << "classsplom: config error: " << e.what() << "\n";
        return classsplom::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "classsplom: error: " << e.what() << "\n";
        return classsplom::kExitData;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pairwise class-separation views: LDA scatterplots, bootstrap "
                 "ROC/AUCBA trustworthiness and confusion statistics, rendered "
                 "as a ClassSPLOM figure (SVG) plus a JSON model."};
    app.require_subcommand(1);

    classsplom::RunConfig cfg;
    int threads = 0;
    auto* run_cmd = app.add_subcommand("run", "Run the full pipeline on a CSV file");
    run_cmd->add_option("-i,--input", cfg.input_path, "Input CSV file")->required();
    run_cmd->add_option("-l,--label-column", cfg.label_column,
                        "Label column name or 0-based index (default: label)");
    run_cmd->add_option("-p,--predictions", cfg.predictions_path,
                        "Predicted class name per input row; enables the confusion matrix");
    run_cmd->add_option("--per-class", cfg.per_class,
                        "Stratified subsample size per class (0 = keep all)");
    run_cmd->add_option("--pca-dims", cfg.pca_dims, "PCA target dimension (0 = no PCA)");
    run_cmd->add_option("--ridge", cfg.ridge, "Within-class scatter ridge (default 1e-6)");
    run_cmd->add_option("-B,--bootstrap", cfg.bootstrap_samples,
                        "Bootstrap samples per pair (default 100)");
    run_cmd->add_option("-s,--seed", cfg.seed, "RNG seed (default 0)");
    run_cmd->add_option("--svg", cfg.svg_path, "Output SVG path");
    run_cmd->add_option("--json", cfg.json_path, "Output JSON model path");
    run_cmd->add_option("--cell-size", cfg.cell_size, "Cell size in px (default 160)");
    run_cmd->add_flag("--no-annotations", [&cfg](std::int64_t) { cfg.annotate_auc = false; },
                      "Drop the AUC/AUCBA text inside ROC cells");
    run_cmd->add_flag("--serial", [&cfg](std::int64_t) { cfg.parallel = false; },
                      "Use the serial reference pair sweep");
    run_cmd->add_option("-j,--threads", threads, "OpenMP thread count (0 = runtime default)");

    int gen_classes = 5, gen_dims = 10, gen_per_class = 100;
    double gen_separation = 6.0, gen_scale = 1.0;
    std::uint64_t gen_seed = 0;
    std::string gen_output;
    auto* gen_cmd =
        app.add_subcommand("generate", "Write a synthetic Gaussian-blob CSV fixture");
    gen_cmd->add_option("-k,--classes", gen_classes, "Class count (default 5)");
    gen_cmd->add_option("-d,--dims", gen_dims, "Feature dimension (default 10)");
    gen_cmd->add_option("-n,--per-class", gen_per_class, "Points per class (default 100)");
    gen_cmd->add_option("--separation", gen_separation,
                        "Distance scale between class means (default 6)");
    gen_cmd->add_option("--scale", gen_scale, "Per-coordinate standard deviation (default 1)");
    gen_cmd->add_option("-s,--seed", gen_seed, "RNG seed (default 0)");
    gen_cmd->add_option("-o,--output", gen_output, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? classsplom::kExitOk : classsplom::kExitUsage;
    }

    if (gen_cmd->parsed()) {
        if (!apply_seed_override(gen_seed)) return classsplom::kExitUsage;
        return generate_fixture(gen_classes, gen_dims, gen_per_class, gen_separation,
                                gen_scale, gen_seed, gen_output);
    }

    if (!apply_seed_override(cfg.seed)) return classsplom::kExitUsage;
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif
    return classsplom::run(cfg);
}
