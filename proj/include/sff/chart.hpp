#pragma once

#include <string>
#include <vector>

#include "sff/metrics.hpp"

namespace sff {

// Names accepted by render_metric_chart and the plot subcommand.
bool is_metric_name(std::string_view name);
double metric_ideal_value(std::string_view name);
double metric_value(const MetricReport& report, std::string_view name);

// Static SVG bar chart: one bar per non-ideal row, the metric's ideal value
// drawn as a dashed reference line. Non-finite values render as a text label
// instead of a bar. Byte-deterministic for fixed input.
std::string render_metric_chart(const std::vector<MetricReport>& rows, std::string_view metric);

} // namespace sff
