#include "sff/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sff/error.hpp"

namespace sff {

namespace {

void require_same_size(const Image& a, const Image& b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("image dimensions differ: " + std::to_string(a.width) + "x" +
                                    std::to_string(a.height) + " vs " + std::to_string(b.width) +
                                    "x" + std::to_string(b.height));
    if (a.width <= 0 || a.height <= 0)
        throw std::invalid_argument("metrics need non-empty images");
}

} // namespace

double mse(const Image& a, const Image& b) {
    require_same_size(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        double d = a.pixels[i] - b.pixels[i];
        sum += d * d;
    }
    return sum / static_cast<double>(a.pixels.size());
}

double psnr(const Image& a, const Image& b) {
    double e = mse(a, b);
    if (e == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / e);
}

double sc(const Image& a, const Image& b) {
    require_same_size(a, b);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        num += a.pixels[i] * a.pixels[i];
        den += b.pixels[i] * b.pixels[i];
    }
    if (den == 0.0)
        throw std::domain_error("sc undefined: processed image has zero energy");
    return num / den;
}

double ncc(const Image& a, const Image& b) {
    require_same_size(a, b);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        num += a.pixels[i] * b.pixels[i];
        den += a.pixels[i] * a.pixels[i];
    }
    if (den == 0.0)
        throw std::domain_error("ncc undefined: reference image has zero energy");
    return num / den;
}

double md(const Image& a, const Image& b) {
    require_same_size(a, b);
    double max = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        double d = std::fabs(a.pixels[i] - b.pixels[i]);
        if (d > max)
            max = d;
    }
    return max;
}

double nae(const Image& a, const Image& b) {
    require_same_size(a, b);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        num += std::fabs(a.pixels[i] - b.pixels[i]);
        den += a.pixels[i];
    }
    if (den == 0.0)
        throw std::domain_error("nae undefined: reference image sums to zero");
    return num / den;
}

double ad(const Image& a, const Image& b) {
    require_same_size(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i)
        sum += a.pixels[i] - b.pixels[i];
    return sum / static_cast<double>(a.pixels.size());
}

MetricReport evaluate_all(const Image& a, const Image& b, const std::string& method) {
    require_same_size(a, b);
    MetricReport report;
    report.method = method;
    report.mse = mse(a, b);
    report.psnr = psnr(a, b);
    auto guarded = [&](double (*metric)(const Image&, const Image&)) {
        try {
            return metric(a, b);
        } catch (const std::domain_error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    report.ncc = guarded(ncc);
    report.ad = ad(a, b);
    report.sc = guarded(sc);
    report.md = md(a, b);
    report.nae = guarded(nae);
    return report;
}

MetricReport ideal_report(const std::string& method) {
    MetricReport report;
    report.method = method;
    report.mse = 0.0;
    report.psnr = std::numeric_limits<double>::infinity();
    report.ncc = 1.0;
    report.ad = 0.0;
    report.sc = 1.0;
    report.md = 0.0;
    report.nae = 0.0;
    return report;
}

std::string metrics_csv_header() {
    return "method,mse,psnr,ncc,ad,sc,md,nae";
}

std::string metric_value_token(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "Inf" : "-Inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string metrics_csv_row(const MetricReport& r) {
    return r.method + "," + metric_value_token(r.mse) + "," + metric_value_token(r.psnr) + "," +
           metric_value_token(r.ncc) + "," + metric_value_token(r.ad) + "," +
           metric_value_token(r.sc) + "," + metric_value_token(r.md) + "," +
           metric_value_token(r.nae);
}

std::string metrics_csv(const std::vector<MetricReport>& rows) {
    std::string out = metrics_csv_header() + "\n";
    for (const MetricReport& r : rows)
        out += metrics_csv_row(r) + "\n";
    return out;
}

namespace {

double parse_metric_token(const std::string& token) {
    if (token == "nan" || token == "-nan")
        return std::numeric_limits<double>::quiet_NaN();
    if (token == "Inf" || token == "inf")
        return std::numeric_limits<double>::infinity();
    if (token == "-Inf" || token == "-inf")
        return -std::numeric_limits<double>::infinity();
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &consumed);
    } catch (const std::exception&) {
        throw FormatError("bad numeric token '" + token + "' in metrics CSV");
    }
    if (consumed != token.size())
        throw FormatError("bad numeric token '" + token + "' in metrics CSV");
    return v;
}

} // namespace

std::vector<MetricReport> parse_metrics_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != metrics_csv_header())
        throw FormatError("metrics CSV header mismatch");
    std::vector<MetricReport> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        if (fields.size() != 8)
            throw FormatError("metrics CSV row needs 8 fields, got " + std::to_string(fields.size()));
        MetricReport r;
        r.method = fields[0];
        r.mse = parse_metric_token(fields[1]);
        r.psnr = parse_metric_token(fields[2]);
        r.ncc = parse_metric_token(fields[3]);
        r.ad = parse_metric_token(fields[4]);
        r.sc = parse_metric_token(fields[5]);
        r.md = parse_metric_token(fields[6]);
        r.nae = parse_metric_token(fields[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace sff
