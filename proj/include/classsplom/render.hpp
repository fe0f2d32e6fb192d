#pragma once

#include <optional>
#include <string>
#include <vector>

#include "classsplom/evaluation.hpp"
#include "classsplom/projection.hpp"

namespace classsplom {

/// One ClassSPLOM cell pair: the scatter projection and its ROC summary.
struct PairCell {
    PairProjection projection;
    BootstrapRocSummary summary;
};

/// Everything the figure needs: K classes with their colors, one entry per
/// unordered class pair, and optionally the confusion matrix from an
/// external classifier.
struct ClassSplomModel {
    std::vector<std::string> class_names;
    std::vector<std::string> palette; // K distinct "#rrggbb" values
    std::vector<PairCell> pairs;      // K(K-1)/2 entries, (a,b) with a < b
    std::optional<ConfusionMatrix> confusion;
};

/// Standalone SVG 1.1 document text.
struct SvgDocument {
    std::string text;
};

struct RenderOptions {
    double cell_size = 160.0;   // px per grid cell
    double point_radius = 2.0;  // px
    bool annotate_auc = true;   // AUC/AUCBA text inside each ROC cell
};

// First 10 entries come from a fixed qualitative list (see kPalette10);
// further entries are golden-angle spaced hues. All entries distinct.
std::vector<std::string> default_palette(int num_classes);

extern const char* const kBackgroundGrey; // 75% lightness neutral
extern const std::vector<std::string> kPalette10;

// One scatter cell: background classes first in grey, then class_b, then
// class_a in their palette colors. Both axes share a single scale (aspect
// ratio 1), centered on the pooled mean of all displayed coordinates and
// scaled so the pair classes fit with 5% padding; anything outside the
// square box is clipped, never rescaled per axis.
std::string render_scatter_cell(const PairProjection& pp,
                                const std::vector<std::string>& palette,
                                const RenderOptions& opts);

// One ROC cell: B translucent red bootstrap polylines under one opaque blue
// observed polyline, annotated "AUC=x.xx  AUCBA=y.yy±z.zz".
std::string render_roc_cell(const BootstrapRocSummary& summary, int class_a,
                            int class_b, const RenderOptions& opts);

// The full K x K figure: discs with class names on the diagonal, scatter
// cells below it, ROC cells mirrored above it (cell (i,j) and (j,i) describe
// the same pair). Output is deterministic: rendering the same model twice
// yields byte-identical text.
SvgDocument render_classsplom(const ClassSplomModel& model,
                              const RenderOptions& opts);

} // namespace classsplom
