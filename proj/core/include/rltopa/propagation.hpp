#pragma once

#include "rltopa/geometry.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rltopa {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

/// Radio parameters shared by every link. tx_power_dbm is the per-UE
/// transmit power; antenna_gain_dbi is the combined gain of both link ends.
struct RadioConfig {
    double frequency_hz = 5250e6;
    double tx_power_dbm = 20.0;
    double noise_floor_dbm = -85.0;
    double bandwidth_mhz = 20.0;
    double guard_interval_ns = 800.0;
    double antenna_gain_dbi = 0.0;

    void validate() const;
    double wavelength_m() const { return kSpeedOfLight / frequency_hz; }
};

/// One MCS index with the minimum SNR that sustains it and its PHY rate.
struct McsEntry {
    int index = 0;
    double min_snr_db = 0.0;
    double phy_rate_bps = 0.0;
};

/// Ordered MCS ladder. min_snr_db and phy_rate_bps must both be strictly
/// increasing with the index.
struct McsTable {
    std::string label;
    std::vector<McsEntry> entries;

    void validate() const;
    const McsEntry* find(int index) const;
    double top_rate_bps() const;
};

/// Built-in tables: "vht160-gi800-1ss" (reproduces the 58.5/117/175.5/234
/// Mbit/s demand ladder) and "vht20-gi800-1ss". Throws on unknown labels.
McsTable builtin_mcs_table(std::string_view label);
std::vector<std::string> builtin_mcs_table_labels();

/// Street-geometry parameters of the NLoS over-rooftop model. Defaults are
/// read off the canonical 3x3 building grid: 20 m x-gaps, 30 m footprint
/// pitch, mean rooftop of the 20 m and 15 m buildings.
struct NlosEnvironment {
    double rooftop_height_m = 17.5;
    double street_width_m = 20.0;
    double building_separation_m = 30.0;
    double street_orientation_deg = 45.0;
    bool large_city = true;

    void validate() const;
};

/// Per-link SNR result. snr_db == tx_power - path_loss + gains - noise_floor.
struct LinkBudget {
    double distance_m = 0.0;
    double path_loss_db = 0.0;
    double snr_db = 0.0;
    bool los = true;
};

/// Free-space SNR at distance d (meters):
///   P_T - 20log10(d) - 20log10(f) - 20log10(4*pi/c) - P_N.
/// Throws std::invalid_argument for d <= 0.
double friis_snr(double distance_m, const RadioConfig& radio);

/// Exact inverse of friis_snr: the distance at which the free-space SNR
/// equals snr_min_db. May exceed any venue; callers clip via the zone.
double friis_max_distance(double snr_min_db, const RadioConfig& radio);

/// Median LoS loss of the below-rooftop two-slope model:
///   L_bp = |20log10(lambda^2 / (8*pi*h_uav*h_ue))|,  R_bp = 4*h_uav*h_ue/lambda
///   loss = L_bp + 6 + 20log10(d/R_bp)   for d <= R_bp
///   loss = L_bp + 6 + 40log10(d/R_bp)   for d >  R_bp
/// Throws std::invalid_argument for non-positive inputs.
double itu1411_los_loss(double distance_m, const RadioConfig& radio, double h_uav_m,
                        double h_ue_m);

/// NLoS over-rooftop loss: free-space term plus rooftop-to-street and
/// multi-screen diffraction, clamped from below by the LoS loss at the same
/// distance so the NLoS >= LoS ordering always holds. The lower station must
/// sit below the rooftop level. Throws std::invalid_argument otherwise.
double itu1411_nlos_rooftop_loss(double distance_m, const RadioConfig& radio,
                                 const NlosEnvironment& env, double h_uav_m, double h_ue_m);

/// Full link evaluation: distance, LoS via the venue's buildings, the
/// matching loss curve, and the resulting SNR.
LinkBudget link_budget(const Vec3& uav, const Vec3& ue_pos, const Venue& venue,
                       const RadioConfig& radio, const NlosEnvironment& env = {});

/// Highest-index entry whose min_snr_db <= snr_db (inclusive boundary), or
/// nullopt when even the lowest index is unsustainable.
std::optional<McsEntry> select_mcs(double snr_db, const McsTable& table);

} // namespace rltopa
