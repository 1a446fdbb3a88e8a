#pragma once

#include <string>
#include <vector>

#include "sff/image.hpp"

namespace sff {

// Full-reference metrics. A is the reference, B the processed image.
// All accumulate row-major in a single pass for bitwise determinism.
double mse(const Image& a, const Image& b);
double psnr(const Image& a, const Image& b); // +infinity when mse == 0
double sc(const Image& a, const Image& b);   // throws domain_error when sum(B^2) == 0
double ncc(const Image& a, const Image& b);  // throws domain_error when sum(A^2) == 0
double md(const Image& a, const Image& b);
double nae(const Image& a, const Image& b);  // throws domain_error when sum(A) == 0
double ad(const Image& a, const Image& b);

struct MetricReport {
    std::string method;
    double mse = 0, psnr = 0, ncc = 0, ad = 0, sc = 0, md = 0, nae = 0;
};

// One report row; metrics with an undefined denominator come back as NaN
// instead of aborting the row. Dimension mismatch still throws.
MetricReport evaluate_all(const Image& a, const Image& b, const std::string& method);

// The Table-style ideal row: 0, Inf, 1, 0, 1, 0, 0.
MetricReport ideal_report(const std::string& method = "ideal");

// CSV with header "method,mse,psnr,ncc,ad,sc,md,nae"; reals carry 4 decimals,
// +infinity prints "Inf", undefined prints "nan".
std::string metrics_csv_header();
std::string metric_value_token(double v);
std::string metrics_csv_row(const MetricReport& report);
std::string metrics_csv(const std::vector<MetricReport>& rows);

// Parses CSV produced by metrics_csv (accepts "Inf"/"nan" tokens).
std::vector<MetricReport> parse_metrics_csv(const std::string& text);

} // namespace sff
