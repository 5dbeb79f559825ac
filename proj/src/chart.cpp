#include "interrater/chart.hpp"

#include <algorithm>
#include <cstdio>

namespace interrater {

namespace {

// Canvas geometry, pixels.
constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kBoxLeft = 56.0;
constexpr double kBoxTop = 16.0;
constexpr double kBoxRight = kWidth - 16.0;
constexpr double kBoxBottom = kHeight - 44.0;

// Marker palette; the classes are contractual, the colors are not.
constexpr const char* kPointColor = "#1f77b4";
constexpr const char* kHighlightColor = "#000000";
constexpr const char* kAverageColor = "#ff7f0e";
constexpr const char* kBandColor = "#2ca02c";

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
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

double slot_width(std::size_t rater_count) {
    return (kBoxRight - kBoxLeft) / static_cast<double>(rater_count);
}

double slot_center(std::size_t user, std::size_t rater_count) {
    return kBoxLeft + (static_cast<double>(user) + 0.5) * slot_width(rater_count);
}

// Pair points sit in the left part of the user's slot, spread by partner
// rank; the average marker sits right of center.
double point_x(const PlotSpec& spec, std::size_t user, std::size_t point_rank,
               std::size_t points_in_slot) {
    const double width = slot_width(spec.rater_count);
    const double anchor = slot_center(user, spec.rater_count) - 0.18 * width;
    if (points_in_slot <= 1) return anchor;
    const double spread = 0.4 * width;
    const double step = spread / static_cast<double>(points_in_slot - 1);
    return anchor - spread / 2.0 + static_cast<double>(point_rank) * step;
}

double average_x(const PlotSpec& spec, std::size_t user) {
    return slot_center(user, spec.rater_count) + 0.28 * slot_width(spec.rater_count);
}

bool is_highlighted(const PlotSpec& spec, const PlotPoint& pt) {
    if (!spec.highlight) return false;
    const auto [a, b] = *spec.highlight;
    return (pt.user == a && pt.partner == b) || (pt.user == b && pt.partner == a);
}

void append_triangle(std::string& svg, const char* css_class, double cx,
                     double cy, double half, const char* color) {
    svg += "  <polygon class=\"" + std::string(css_class) + "\" points=\"" +
           num(cx) + "," + num(cy - half) + " " + num(cx - half) + "," +
           num(cy + half) + " " + num(cx + half) + "," + num(cy + half) +
           "\" fill=\"" + std::string(color) + "\"/>\n";
}

void append_error_bar(std::string& svg, const char* css_class, double x,
                      double y_a, double y_b, double cap_half_width,
                      const char* color) {
    svg += "  <path class=\"" + std::string(css_class) + "\" d=\"M " + num(x) +
           " " + num(y_a) + " L " + num(x) + " " + num(y_b);
    svg += " M " + num(x - cap_half_width) + " " + num(y_a) + " L " +
           num(x + cap_half_width) + " " + num(y_a);
    svg += " M " + num(x - cap_half_width) + " " + num(y_b) + " L " +
           num(x + cap_half_width) + " " + num(y_b);
    svg += "\" stroke=\"" + std::string(color) +
           "\" fill=\"none\" stroke-width=\"1.2\"/>\n";
}

}  // namespace

PlotSpec build_plot_spec(const AnalysisReport& r, double y_min, double y_max,
                         std::optional<std::pair<std::size_t, std::size_t>> highlight,
                         bool show_pair_bars) {
    if (!(y_min < y_max)) {
        throw ConfigError("y-axis minimum must be below the maximum");
    }
    PlotSpec spec;
    spec.y_min = y_min;
    spec.y_max = y_max;
    spec.rater_count = r.rater_count;
    spec.show_pair_bars = show_pair_bars;

    if (highlight) {
        const auto [a, b] = *highlight;
        if (a == b || a >= r.rater_count || b >= r.rater_count) {
            throw ConfigError("highlight pair (" + std::to_string(a) + "," +
                              std::to_string(b) + ") is not a valid rater pair");
        }
        spec.highlight = std::make_pair(std::min(a, b), std::max(a, b));
    }

    for (std::size_t x = 0; x < r.table.rater_count; ++x) {
        for (std::size_t y = 0; y < r.table.rater_count; ++y) {
            if (x == y) continue;
            const PairCell& cell = r.table.at(x, y);
            if (!cell.defined()) continue;
            spec.points.push_back({x, y, cell.estimate->kappa, cell.estimate->se});
        }
    }

    for (const UserSummary& user : r.users) {
        if (!user.average) continue;
        spec.averages.push_back({user.user, user.average->kappa,
                                 user.average->ci_low, user.average->ci_high});
    }

    if (r.group.fleiss) {
        spec.group_band = PlotBand{r.group.fleiss->ci_low, r.group.fleiss->ci_high};
    }
    return spec;
}

double plot_y_pixel(const PlotSpec& spec, double value) {
    // Out-of-range values clip to the axis box instead of disappearing.
    const double clipped = std::clamp(value, spec.y_min, spec.y_max);
    const double unit = (spec.y_max - clipped) / (spec.y_max - spec.y_min);
    return kBoxTop + unit * (kBoxBottom - kBoxTop);
}

std::string emit_svg(const PlotSpec& spec,
                     const std::vector<std::string>& user_labels) {
    if (user_labels.size() != spec.rater_count) {
        throw std::invalid_argument("emit_svg: one label per rater required");
    }

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           num(kWidth) + "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " +
           num(kWidth) + " " + num(kHeight) + "\">\n";
    svg += "  <rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" fill=\"white\"/>\n";

    // Axis frame and y ticks.
    svg += "  <rect class=\"plot-frame\" x=\"" + num(kBoxLeft) + "\" y=\"" +
           num(kBoxTop) + "\" width=\"" + num(kBoxRight - kBoxLeft) +
           "\" height=\"" + num(kBoxBottom - kBoxTop) +
           "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    const int tick_count = 5;
    for (int t = 0; t < tick_count; ++t) {
        const double value =
            spec.y_min + (spec.y_max - spec.y_min) * t / (tick_count - 1);
        const double y = plot_y_pixel(spec, value);
        svg += "  <line class=\"y-tick\" x1=\"" + num(kBoxLeft - 4.0) + "\" y1=\"" +
               num(y) + "\" x2=\"" + num(kBoxLeft) + "\" y2=\"" + num(y) +
               "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        svg += "  <text class=\"y-label\" x=\"" + num(kBoxLeft - 8.0) + "\" y=\"" +
               num(y + 4.0) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
               num(value) + "</text>\n";
    }

    // X labels, one per user slot.
    for (std::size_t u = 0; u < spec.rater_count; ++u) {
        svg += "  <text class=\"x-label\" x=\"" +
               num(slot_center(u, spec.rater_count)) + "\" y=\"" +
               num(kBoxBottom + 20.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
               xml_escape(user_labels[u]) + "</text>\n";
    }

    // Group CI band: two dashed horizontal lines spanning the plot width.
    if (spec.group_band) {
        for (const double value : {spec.group_band->low, spec.group_band->high}) {
            const double y = plot_y_pixel(spec, value);
            svg += "  <line class=\"band-line\" x1=\"" + num(kBoxLeft) + "\" y1=\"" +
                   num(y) + "\" x2=\"" + num(kBoxRight) + "\" y2=\"" + num(y) +
                   "\" stroke=\"" + std::string(kBandColor) +
                   "\" stroke-width=\"1.5\" stroke-dasharray=\"7 4\"/>\n";
        }
    }

    // Points are already partner-ascending within each user; rank them per
    // slot so partners spread deterministically.
    std::vector<std::size_t> slot_sizes(spec.rater_count, 0);
    for (const PlotPoint& pt : spec.points) ++slot_sizes[pt.user];
    std::vector<std::size_t> slot_rank(spec.rater_count, 0);

    // Per-pair bars are drawn at the two-sided 95% half-width.
    const double z95 = normal_quantile(0.975);

    for (const PlotPoint& pt : spec.points) {
        const double x =
            point_x(spec, pt.user, slot_rank[pt.user]++, slot_sizes[pt.user]);
        const double y = plot_y_pixel(spec, pt.kappa);
        const bool highlighted = is_highlighted(spec, pt);

        if (spec.show_pair_bars) {
            const double y_low = plot_y_pixel(spec, pt.kappa - z95 * pt.se);
            const double y_high = plot_y_pixel(spec, pt.kappa + z95 * pt.se);
            append_error_bar(svg, "pair-ci-bar", x, y_low, y_high, 3.0,
                             highlighted ? kHighlightColor : kPointColor);
        }
        append_triangle(svg, highlighted ? "pair-point highlighted" : "pair-point",
                        x, y, 5.0, highlighted ? kHighlightColor : kPointColor);
    }

    for (const PlotAverage& avg : spec.averages) {
        const double x = average_x(spec, avg.user);
        const double y_low = plot_y_pixel(spec, avg.ci_low);
        const double y_high = plot_y_pixel(spec, avg.ci_high);
        append_error_bar(svg, "avg-ci-bar", x, y_low, y_high, 4.0, kAverageColor);
        svg += "  <circle class=\"avg-marker\" cx=\"" + num(x) + "\" cy=\"" +
               num(plot_y_pixel(spec, avg.value)) + "\" r=\"5\" fill=\"" +
               std::string(kAverageColor) + "\"/>\n";
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace interrater
