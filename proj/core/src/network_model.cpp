#include "rltopa/network_model.hpp"

#include <limits>
#include <stdexcept>

namespace rltopa {

double per_link_rate(const Vec3& uav, const UserEquipment& ue, const Venue& venue,
                     const RadioConfig& radio, const McsTable& table,
                     const NlosEnvironment& env) {
    const LinkBudget lb = link_budget(uav, ue.position, venue, radio, env);
    const auto entry = select_mcs(lb.snr_db, table);
    return entry ? entry->phy_rate_bps : 0.0;
}

AirtimeAllocation airtime_allocation(std::span<const double> rates_bps,
                                     std::span<const double> demands_bps) {
    if (rates_bps.size() != demands_bps.size()) {
        throw std::invalid_argument("airtime_allocation: rates/demands size mismatch");
    }
    AirtimeAllocation alloc;
    alloc.airtime.reserve(rates_bps.size());
    alloc.phy_rate_bps.assign(rates_bps.begin(), rates_bps.end());
    alloc.achieved_bps.resize(rates_bps.size(), 0.0);

    for (std::size_t i = 0; i < rates_bps.size(); ++i) {
        if (!(demands_bps[i] > 0.0)) {
            throw std::invalid_argument("airtime_allocation: demands must be positive");
        }
        if (rates_bps[i] > 0.0) {
            const double a = demands_bps[i] / rates_bps[i];
            alloc.airtime.push_back(a);
            alloc.total_airtime += a;
        } else {
            alloc.airtime.push_back(std::numeric_limits<double>::infinity());
        }
    }
    alloc.saturated = alloc.total_airtime > 1.0;
    for (std::size_t i = 0; i < rates_bps.size(); ++i) {
        if (rates_bps[i] <= 0.0) continue;
        alloc.achieved_bps[i] =
            alloc.saturated ? demands_bps[i] / alloc.total_airtime : demands_bps[i];
    }
    return alloc;
}

double mean_delay(const AirtimeAllocation& allocation, double packet_bits, double delay_cap_s) {
    if (allocation.airtime.empty()) {
        throw std::invalid_argument("mean_delay: empty allocation");
    }
    const double total = allocation.total_airtime;
    double sum = 0.0;
    for (std::size_t i = 0; i < allocation.airtime.size(); ++i) {
        const double r = allocation.phy_rate_bps[i];
        if (r > 0.0 && total < 1.0) {
            sum += (packet_bits / r) / (1.0 - total);
        } else {
            sum += delay_cap_s;
        }
    }
    return sum / static_cast<double>(allocation.airtime.size());
}

double jain_fairness(std::span<const double> achieved_bps, std::span<const double> demands_bps) {
    if (achieved_bps.empty() || achieved_bps.size() != demands_bps.size()) {
        throw std::invalid_argument("jain_fairness: bad input sizes");
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < achieved_bps.size(); ++i) {
        const double u = achieved_bps[i] / demands_bps[i];
        sum += u;
        sum_sq += u * u;
    }
    if (sum_sq == 0.0) return 0.0;
    return sum * sum / (static_cast<double>(achieved_bps.size()) * sum_sq);
}

double c_max_bps(const McsTable& table, std::size_t n_ue) {
    return table.top_rate_bps() * static_cast<double>(n_ue);
}

NetworkMetrics network_metrics(const Vec3& uav, std::span<const UserEquipment> ues,
                               const Venue& venue, const RadioConfig& radio,
                               const McsTable& table, const NlosEnvironment& env,
                               double packet_bits, double delay_cap_s) {
    if (ues.empty()) throw std::invalid_argument("network_metrics: empty UE list");
    std::vector<double> rates;
    std::vector<double> demands;
    rates.reserve(ues.size());
    demands.reserve(ues.size());
    for (const UserEquipment& ue : ues) {
        rates.push_back(per_link_rate(uav, ue, venue, radio, table, env));
        demands.push_back(ue.demand_bps);
    }
    const AirtimeAllocation alloc = airtime_allocation(rates, demands);

    NetworkMetrics metrics;
    metrics.per_ue_rate_bps = alloc.achieved_bps;
    for (double r : alloc.achieved_bps) metrics.aggregate_throughput_bps += r;
    metrics.mean_delay_s = mean_delay(alloc, packet_bits, delay_cap_s);
    metrics.jain_fairness = jain_fairness(alloc.achieved_bps, demands);
    metrics.saturated = alloc.saturated;
    return metrics;
}

} // namespace rltopa
