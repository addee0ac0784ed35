#pragma once

#include "rltopa/feasibility.hpp"
#include "rltopa/geometry.hpp"
#include "rltopa/propagation.hpp"

#include <span>
#include <vector>

namespace rltopa {

/// 1400-byte packets, the default payload of the delay surrogate.
inline constexpr double kDefaultPacketBits = 11200.0;
/// Sentinel delay assigned to saturated or dead links so means stay finite.
inline constexpr double kDefaultDelayCapS = 1.0;

/// Result of sharing the medium between competing uplinks. airtime[i] is
/// demand/rate (infinity for a dead link); total_airtime sums the live
/// links. When the total stays within one second per second every live
/// demand is met; beyond that, every live link is scaled by the same factor.
struct AirtimeAllocation {
    std::vector<double> airtime;
    std::vector<double> phy_rate_bps;
    std::vector<double> achieved_bps;
    double total_airtime = 0.0;
    bool saturated = false;
};

/// Aggregate surrogate metrics at one candidate position.
struct NetworkMetrics {
    std::vector<double> per_ue_rate_bps;
    double aggregate_throughput_bps = 0.0;
    double mean_delay_s = 0.0;
    double jain_fairness = 0.0;
    bool saturated = false;
};

/// PHY rate the link sustains: the rate of the best MCS at the link budget's
/// SNR, or 0 when no entry is sustainable.
double per_link_rate(const Vec3& uav, const UserEquipment& ue, const Venue& venue,
                     const RadioConfig& radio, const McsTable& table,
                     const NlosEnvironment& env = {});

/// Proportional airtime share: a_i = B_i / r_i, A = sum over live links;
/// R_i = B_i when A <= 1, B_i / A otherwise, 0 for dead links.
AirtimeAllocation airtime_allocation(std::span<const double> rates_bps,
                                     std::span<const double> demands_bps);

/// Mean per-packet delay: (packet_bits / r_i) / (1 - A) per live link while
/// A < 1; the cap for saturated or dead links. Mean over all UE.
double mean_delay(const AirtimeAllocation& allocation, double packet_bits = kDefaultPacketBits,
                  double delay_cap_s = kDefaultDelayCapS);

/// Jain index over demand-normalized service u_i = R_i / B_i. Returns 0 when
/// every rate is zero; 1 when all demands are equally satisfied.
double jain_fairness(std::span<const double> achieved_bps, std::span<const double> demands_bps);

/// Upper bound on the aggregate: every UE at the top table rate.
double c_max_bps(const McsTable& table, std::size_t n_ue);

/// Full surrogate evaluation at one UAV position.
NetworkMetrics network_metrics(const Vec3& uav, std::span<const UserEquipment> ues,
                               const Venue& venue, const RadioConfig& radio,
                               const McsTable& table, const NlosEnvironment& env = {},
                               double packet_bits = kDefaultPacketBits,
                               double delay_cap_s = kDefaultDelayCapS);

} // namespace rltopa
