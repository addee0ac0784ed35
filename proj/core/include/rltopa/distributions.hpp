#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rltopa {

enum class DistributionKind { Cdf, Ccdf };

/// Exact empirical distribution: one (value, probability) pair per distinct
/// sample value, no binning. CDF uses P(X <= x) = rank / n; CCDF = 1 - CDF.
struct DistributionSeries {
    DistributionKind kind = DistributionKind::Cdf;
    std::vector<std::pair<double, double>> points;
};

/// Throws std::invalid_argument on empty input.
DistributionSeries empirical_distribution(std::span<const double> samples, DistributionKind kind);

/// Probability of the series at a sample value (exact match of the stored
/// support); used by tests.
double series_at(const DistributionSeries& series, double value);

/// Deterministic double formatting shared by every CSV writer.
std::string fmt_double(double v);

/// Renders "value,probability" rows under a two-column header.
std::string distribution_csv(const DistributionSeries& series, const std::string& value_column);

} // namespace rltopa
