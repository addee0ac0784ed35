#include "rltopa/distributions.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace rltopa {

DistributionSeries empirical_distribution(std::span<const double> samples,
                                          DistributionKind kind) {
    if (samples.empty()) {
        throw std::invalid_argument("empirical_distribution: no samples");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    DistributionSeries series;
    series.kind = kind;
    const auto n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        // Duplicates collapse onto the highest rank of the value.
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        const double cdf = static_cast<double>(i + 1) / n;
        series.points.emplace_back(sorted[i], kind == DistributionKind::Cdf ? cdf : 1.0 - cdf);
    }
    return series;
}

double series_at(const DistributionSeries& series, double value) {
    for (const auto& [v, p] : series.points) {
        if (v == value) return p;
    }
    throw std::invalid_argument("series_at: value not in the support");
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string distribution_csv(const DistributionSeries& series, const std::string& value_column) {
    std::string out = value_column;
    out += series.kind == DistributionKind::Cdf ? ",cdf\n" : ",ccdf\n";
    for (const auto& [v, p] : series.points) {
        out += fmt_double(v);
        out += ',';
        out += fmt_double(p);
        out += '\n';
    }
    return out;
}

} // namespace rltopa
