#include "sff/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace sff {

namespace {

constexpr std::array<std::string_view, 7> kMetricNames = {"mse", "psnr", "ncc", "ad", "sc", "md", "nae"};

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

} // namespace

bool is_metric_name(std::string_view name) {
    return std::find(kMetricNames.begin(), kMetricNames.end(), name) != kMetricNames.end();
}

double metric_ideal_value(std::string_view name) {
    if (name == "psnr")
        return std::numeric_limits<double>::infinity();
    if (name == "ncc" || name == "sc")
        return 1.0;
    if (is_metric_name(name))
        return 0.0;
    throw std::invalid_argument("unknown metric '" + std::string(name) +
                                "' (valid: mse, psnr, ncc, ad, sc, md, nae)");
}

double metric_value(const MetricReport& r, std::string_view name) {
    if (name == "mse") return r.mse;
    if (name == "psnr") return r.psnr;
    if (name == "ncc") return r.ncc;
    if (name == "ad") return r.ad;
    if (name == "sc") return r.sc;
    if (name == "md") return r.md;
    if (name == "nae") return r.nae;
    throw std::invalid_argument("unknown metric '" + std::string(name) +
                                "' (valid: mse, psnr, ncc, ad, sc, md, nae)");
}

std::string render_metric_chart(const std::vector<MetricReport>& rows, std::string_view metric) {
    double ideal = metric_ideal_value(metric); // validates the name

    std::vector<std::pair<std::string, double>> bars;
    for (const MetricReport& r : rows)
        if (r.method != "ideal")
            bars.emplace_back(r.method, metric_value(r, metric));

    // Vertical scale over the finite data plus the baseline and ideal line.
    double lo = 0.0, hi = 0.0;
    if (std::isfinite(ideal)) {
        lo = std::min(lo, ideal);
        hi = std::max(hi, ideal);
    }
    for (const auto& [name, v] : bars)
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (hi == lo)
        hi = lo + 1.0;
    double pad = 0.08 * (hi - lo);
    hi += pad;
    if (lo < 0.0)
        lo -= pad;

    const double width = 640.0, height = 400.0;
    const double left = 70.0, right = 20.0, top = 40.0, bottom = 50.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    auto y_of = [&](double v) { return top + (hi - v) * plot_h / (hi - lo); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width, "%.0f") +
           "\" height=\"" + fmt(height, "%.0f") + "\" viewBox=\"0 0 " + fmt(width, "%.0f") + " " +
           fmt(height, "%.0f") + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(width / 2) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
           "text-anchor=\"middle\">" + std::string(metric) + " by operator</text>\n";

    // Axes and scale labels.
    svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(top) + "\" x2=\"" + fmt(left) + "\" y2=\"" +
           fmt(top + plot_h) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(y_of(std::max(lo, std::min(0.0, hi)))) +
           "\" x2=\"" + fmt(left + plot_w) + "\" y2=\"" + fmt(y_of(std::max(lo, std::min(0.0, hi)))) +
           "\" stroke=\"black\"/>\n";
    for (double v : {lo, hi}) {
        svg += "<text x=\"" + fmt(left - 6) + "\" y=\"" + fmt(y_of(v) + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
               metric_value_token(v) + "</text>\n";
    }

    if (std::isfinite(ideal)) {
        svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(y_of(ideal)) + "\" x2=\"" +
               fmt(left + plot_w) + "\" y2=\"" + fmt(y_of(ideal)) +
               "\" stroke=\"#2a7f2a\" stroke-dasharray=\"6,4\"/>\n";
        svg += "<text x=\"" + fmt(left + plot_w) + "\" y=\"" + fmt(y_of(ideal) - 5) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\" fill=\"#2a7f2a\">ideal " +
               metric_value_token(ideal) + "</text>\n";
    } else {
        svg += "<text x=\"" + fmt(left + plot_w) + "\" y=\"" + fmt(top - 6) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\" fill=\"#2a7f2a\">ideal " +
               metric_value_token(ideal) + "</text>\n";
    }

    if (!bars.empty()) {
        double slot = plot_w / static_cast<double>(bars.size());
        double bar_w = slot * 0.6;
        double baseline = std::clamp(0.0, lo, hi);
        for (std::size_t i = 0; i < bars.size(); ++i) {
            const auto& [name, v] = bars[i];
            double cx = left + (static_cast<double>(i) + 0.5) * slot;
            if (std::isfinite(v)) {
                double y0 = y_of(std::max(v, baseline));
                double bar_h = std::fabs(y_of(baseline) - y_of(v));
                svg += "<rect x=\"" + fmt(cx - bar_w / 2) + "\" y=\"" + fmt(y0) + "\" width=\"" +
                       fmt(bar_w) + "\" height=\"" + fmt(bar_h) + "\" fill=\"#4878a8\"/>\n";
                svg += "<text x=\"" + fmt(cx) + "\" y=\"" + fmt(y0 - 4) +
                       "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" +
                       metric_value_token(v) + "</text>\n";
            } else {
                // No bar for Inf/nan; annotate the slot instead.
                svg += "<text x=\"" + fmt(cx) + "\" y=\"" + fmt(top + 14) +
                       "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" "
                       "fill=\"#a05050\">" + metric_value_token(v) + "</text>\n";
            }
            svg += "<text x=\"" + fmt(cx) + "\" y=\"" + fmt(top + plot_h + 16) +
                   "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" + name +
                   "</text>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace sff
