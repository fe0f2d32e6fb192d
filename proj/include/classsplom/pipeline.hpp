#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "classsplom/render.hpp"

namespace classsplom {

/// Exit codes used by run() and the CLI.
enum ExitStatus : int {
    kExitOk = 0,
    kExitUsage = 1,      // bad configuration / flags
    kExitData = 2,       // I/O or parse or validation failure
    kExitDegenerate = 3, // numerical degeneracy (no discriminating direction)
};

/// Full pipeline configuration. (input bytes, config) determine all output
/// bytes.
struct RunConfig {
    std::string input_path;
    std::string label_column = "label";
    std::string predictions_path; // optional; empty = no confusion matrix
    int per_class = 0;            // stratified subsample size; 0 = keep all
    int pca_dims = 0;             // 0 = no PCA
    double ridge = 1e-6;
    int bootstrap_samples = 100;
    std::uint64_t seed = 0;
    std::string svg_path;  // empty = no SVG written
    std::string json_path; // empty = no JSON written
    double cell_size = 160.0;
    bool annotate_auc = true;
    bool parallel = true; // OpenMP pair sweep; results identical either way
};

// The data-parallel stage: projection + bootstrap summary for every
// unordered class pair, in (a,b) lexicographic order. The serial variant is
// the reference implementation; the parallel variant fans out across pairs
// with OpenMP. Per-pair seeds are derived from (seed, a, b), so both
// variants produce identical results.
std::vector<PairCell> compute_pairs_serial(const Dataset& ds, double ridge,
                                           int num_samples, std::uint64_t seed);
std::vector<PairCell> compute_pairs_parallel(const Dataset& ds, double ridge,
                                             int num_samples, std::uint64_t seed);

// Ingest -> subsample -> PCA -> pair sweep -> model assembly. Throws on
// failure; does not touch the filesystem outputs.
ClassSplomModel build_model(const RunConfig& config);

// Model JSON: classes, palette, pairs (class_a, class_b, axis1, axis2,
// coords, observed_roc, bootstrap_aucs, aucba, aucba_std), optional
// confusion block, config echo. Doubles keep full precision.
void export_model_json(const ClassSplomModel& model, const RunConfig& config,
                       const std::string& path);

// Reads a model back. Bootstrap curve geometry is not part of the JSON
// schema, so re-imported summaries carry bootstrap_aucs but empty
// bootstrap_curves.
ClassSplomModel import_model_json(const std::string& path);

// Executes the full pipeline and writes the configured outputs. Returns an
// ExitStatus and prints a one-line diagnostic to stderr on failure.
int run(const RunConfig& config);

} // namespace classsplom
