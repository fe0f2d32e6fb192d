#include "classsplom/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>

#include "classsplom/errors.hpp"

namespace classsplom {

const char* const kBackgroundGrey = "#bfbfbf";

const std::vector<std::string> kPalette10 = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

namespace {

constexpr const char* kBootstrapRed = "#d62728";
constexpr const char* kObservedBlue = "#1f77b4";

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string two_decimals(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string hsv_to_hex(double hue_deg, double saturation, double value) {
    const double c = value * saturation;
    const double hp = hue_deg / 60.0;
    const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1) { r = c; g = x; }
    else if (hp < 2) { r = x; g = c; }
    else if (hp < 3) { g = c; b = x; }
    else if (hp < 4) { g = x; b = c; }
    else if (hp < 5) { r = x; b = c; }
    else { r = c; b = x; }
    const double m = value - c;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(std::lround((r + m) * 255)),
                  static_cast<int>(std::lround((g + m) * 255)),
                  static_cast<int>(std::lround((b + m) * 255)));
    return buf;
}

std::string pair_id(int class_a, int class_b) {
    return std::to_string(class_a) + "-" + std::to_string(class_b);
}

} // namespace

std::vector<std::string> default_palette(int num_classes) {
    std::vector<std::string> palette;
    std::set<std::string> used;
    for (int i = 0; i < num_classes; ++i) {
        std::string color;
        if (i < static_cast<int>(kPalette10.size())) {
            color = kPalette10[static_cast<std::size_t>(i)];
        } else {
            double value = 0.80;
            const double hue = std::fmod(137.508 * i, 360.0);
            color = hsv_to_hex(hue, 0.62, value);
            while (used.count(color) || color == kBackgroundGrey) {
                value = value > 0.15 ? value - 0.07 : 0.95;
                color = hsv_to_hex(hue, 0.62, value);
            }
        }
        used.insert(color);
        palette.push_back(std::move(color));
    }
    return palette;
}

std::string render_scatter_cell(const PairProjection& pp,
                                const std::vector<std::string>& palette,
                                const RenderOptions& opts) {
    if (opts.cell_size <= 0.0) throw ConfigError("cell_size must be positive");
    const double cell = opts.cell_size;
    const double half = cell / 2.0;
    const double usable_half = half - 0.05 * cell; // 5% padding per side

    const double mx = pp.coords.col(0).mean();
    const double my = pp.coords.col(1).mean();

    // One shared scale for both axes, sized so the pair classes fit.
    double pair_extent = 0.0;
    for (Eigen::Index i = 0; i < pp.coords.rows(); ++i) {
        const int c = pp.point_class[static_cast<std::size_t>(i)];
        if (c != pp.class_a && c != pp.class_b) continue;
        pair_extent = std::max(pair_extent, std::fabs(pp.coords(i, 0) - mx));
        pair_extent = std::max(pair_extent, std::fabs(pp.coords(i, 1) - my));
    }
    const double scale = pair_extent > 0.0 ? usable_half / pair_extent : 1.0;

    const std::string id = pair_id(pp.class_a, pp.class_b);
    std::ostringstream svg;
    svg << "<g class=\"scatter-cell\" data-pair=\"" << id << "\">\n";
    svg << "  <defs><clipPath id=\"clip-scatter-" << id << "\"><rect x=\"0\" y=\"0\" width=\""
        << px(cell) << "\" height=\"" << px(cell) << "\"/></clipPath></defs>\n";
    svg << "  <rect class=\"border\" x=\"0.5\" y=\"0.5\" width=\"" << px(cell - 1.0)
        << "\" height=\"" << px(cell - 1.0)
        << "\" fill=\"#ffffff\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    svg << "  <g clip-path=\"url(#clip-scatter-" << id << ")\">\n";

    // Background grey first, then class_b, then class_a on top.
    const int draw_order[3] = {-1, pp.class_b, pp.class_a};
    for (int pass = 0; pass < 3; ++pass) {
        for (Eigen::Index i = 0; i < pp.coords.rows(); ++i) {
            const int c = pp.point_class[static_cast<std::size_t>(i)];
            const bool is_background = c != pp.class_a && c != pp.class_b;
            if (pass == 0 ? !is_background : c != draw_order[pass]) continue;
            const double sx = half + (pp.coords(i, 0) - mx) * scale;
            const double sy = half - (pp.coords(i, 1) - my) * scale;
            const std::string& fill =
                pass == 0 ? kBackgroundGrey : palette[static_cast<std::size_t>(c)];
            svg << "    <circle class=\"pt\" cx=\"" << px(sx) << "\" cy=\"" << px(sy)
                << "\" r=\"" << px(opts.point_radius) << "\" fill=\"" << fill << "\"/>\n";
        }
    }
    svg << "  </g>\n</g>\n";
    return svg.str();
}

std::string render_roc_cell(const BootstrapRocSummary& summary, int class_a,
                            int class_b, const RenderOptions& opts) {
    if (opts.cell_size <= 0.0) throw ConfigError("cell_size must be positive");
    const double cell = opts.cell_size;
    const double x0 = 0.08 * cell;
    const double y0 = 0.08 * cell;
    const double w = 0.84 * cell;
    const double h = opts.annotate_auc ? 0.76 * cell : 0.84 * cell;

    const auto polyline = [&](const RocCurve& curve) {
        std::string points;
        for (const auto& p : curve.points) {
            if (!points.empty()) points += ' ';
            points += px(x0 + p[0] * w) + "," + px(y0 + (1.0 - p[1]) * h);
        }
        return points;
    };

    std::ostringstream svg;
    svg << "<g class=\"roc-cell\" data-pair=\"" << pair_id(class_a, class_b) << "\">\n";
    svg << "  <rect class=\"border\" x=\"0.5\" y=\"0.5\" width=\"" << px(cell - 1.0)
        << "\" height=\"" << px(cell - 1.0)
        << "\" fill=\"#ffffff\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    svg << "  <rect class=\"plotbox\" x=\"" << px(x0) << "\" y=\"" << px(y0) << "\" width=\""
        << px(w) << "\" height=\"" << px(h)
        << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    for (const auto& curve : summary.bootstrap_curves) {
        svg << "  <polyline class=\"roc-boot\" fill=\"none\" stroke=\"" << kBootstrapRed
            << "\" stroke-opacity=\"0.1\" stroke-width=\"1\" points=\"" << polyline(curve)
            << "\"/>\n";
    }
    svg << "  <polyline class=\"roc-observed\" fill=\"none\" stroke=\"" << kObservedBlue
        << "\" stroke-width=\"1.5\" points=\"" << polyline(summary.observed) << "\"/>\n";
    if (opts.annotate_auc) {
        svg << "  <text class=\"roc-annotation\" x=\"" << px(cell / 2.0) << "\" y=\""
            << px(0.95 * cell) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\""
            << px(0.07 * cell) << "\">AUC=" << two_decimals(summary.observed.auc)
            << "  AUCBA=" << two_decimals(summary.aucba) << "±"
            << two_decimals(summary.aucba_std) << "</text>\n";
    }
    svg << "</g>\n";
    return svg.str();
}

SvgDocument render_classsplom(const ClassSplomModel& model,
                              const RenderOptions& opts) {
    const int k = static_cast<int>(model.class_names.size());
    if (k < 2) throw ConfigError("model needs at least 2 classes");
    if (static_cast<int>(model.palette.size()) != k)
        throw ConfigError("palette size does not match class count");
    if (std::set<std::string>(model.palette.begin(), model.palette.end()).size() !=
        static_cast<std::size_t>(k))
        throw ConfigError("palette entries must be distinct");

    // Exactly one entry per unordered pair.
    std::vector<const PairCell*> cell_of_pair(static_cast<std::size_t>(k) * k, nullptr);
    if (model.pairs.size() != static_cast<std::size_t>(k) * (k - 1) / 2)
        throw ConfigError("model must hold one entry per unordered class pair");
    for (const auto& pair : model.pairs) {
        const int a = pair.projection.class_a;
        const int b = pair.projection.class_b;
        if (a < 0 || b < 0 || a >= k || b >= k || a >= b)
            throw ConfigError("pair entry with invalid class indices");
        auto& slot = cell_of_pair[static_cast<std::size_t>(a) * k + b];
        if (slot) throw ConfigError("duplicate pair entry");
        slot = &pair;
    }

    const double cell = opts.cell_size;
    const double size = cell * k;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << px(size)
        << "\" height=\"" << px(size) << "\" viewBox=\"0 0 " << px(size) << " " << px(size)
        << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << px(size) << "\" height=\"" << px(size)
        << "\" fill=\"#ffffff\"/>\n";

    const auto indent = [](const std::string& fragment) {
        std::string out;
        std::istringstream lines(fragment);
        std::string line;
        while (std::getline(lines, line)) out += "  " + line + "\n";
        return out;
    };

    for (int row = 0; row < k; ++row) {
        for (int col = 0; col < k; ++col) {
            svg << "<g class=\"cell\" data-row=\"" << row << "\" data-col=\"" << col
                << "\" transform=\"translate(" << px(col * cell) << "," << px(row * cell)
                << ")\">\n";
            if (row == col) {
                // In-situ legend: one colored disc per class on the diagonal.
                svg << "  <g class=\"disc-cell\" data-class=\"" << row << "\">\n";
                svg << "    <rect class=\"border\" x=\"0.5\" y=\"0.5\" width=\"" << px(cell - 1.0)
                    << "\" height=\"" << px(cell - 1.0)
                    << "\" fill=\"#ffffff\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
                svg << "    <circle class=\"disc\" cx=\"" << px(cell / 2.0) << "\" cy=\""
                    << px(cell / 2.0) << "\" r=\"" << px(0.42 * cell) << "\" fill=\""
                    << model.palette[static_cast<std::size_t>(row)] << "\"/>\n";
                svg << "    <text class=\"disc-label\" x=\"" << px(cell / 2.0) << "\" y=\""
                    << px(cell / 2.0)
                    << "\" text-anchor=\"middle\" dominant-baseline=\"central\""
                    << " font-family=\"sans-serif\" font-size=\"" << px(0.12 * cell)
                    << "\" fill=\"#ffffff\">"
                    << xml_escape(model.class_names[static_cast<std::size_t>(row)])
                    << "</text>\n";
                svg << "  </g>\n";
            } else {
                const int a = std::min(row, col);
                const int b = std::max(row, col);
                const PairCell* pair = cell_of_pair[static_cast<std::size_t>(a) * k + b];
                if (row > col) {
                    svg << indent(render_scatter_cell(pair->projection, model.palette, opts));
                } else {
                    svg << indent(render_roc_cell(pair->summary, a, b, opts));
                }
            }
            svg << "</g>\n";
        }
    }
    svg << "</svg>\n";
    return SvgDocument{svg.str()};
}

} // namespace classsplom
