#include "rltopa/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rltopa {

namespace {

constexpr double kDefaultMinSnrDb[] = {5.0, 8.0, 12.0, 15.0, 19.0, 23.0, 25.0, 27.0, 30.0};

McsTable make_table(std::string label, std::initializer_list<double> rates_mbps) {
    McsTable t;
    t.label = std::move(label);
    int idx = 0;
    for (double r : rates_mbps) {
        t.entries.push_back({idx, kDefaultMinSnrDb[idx], r * 1e6});
        ++idx;
    }
    return t;
}

} // namespace

void RadioConfig::validate() const {
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz)) {
        throw std::invalid_argument("radio: frequency_hz must be positive");
    }
    if (!std::isfinite(tx_power_dbm) || !std::isfinite(noise_floor_dbm) ||
        !std::isfinite(antenna_gain_dbi)) {
        throw std::invalid_argument("radio: non-finite power figure");
    }
    if (bandwidth_mhz != 20.0 && bandwidth_mhz != 40.0 && bandwidth_mhz != 80.0 &&
        bandwidth_mhz != 160.0) {
        throw std::invalid_argument("radio: bandwidth_mhz must be one of 20/40/80/160");
    }
    if (!(guard_interval_ns > 0.0)) {
        throw std::invalid_argument("radio: guard_interval_ns must be positive");
    }
}

void McsTable::validate() const {
    if (entries.empty()) throw std::invalid_argument("mcs_table: empty");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const McsEntry& e = entries[i];
        if (e.index < 0) throw std::invalid_argument("mcs_table: negative index");
        if (!(e.phy_rate_bps > 0.0)) {
            throw std::invalid_argument("mcs_table: phy_rate_bps must be positive");
        }
        if (i > 0) {
            if (e.index <= entries[i - 1].index) {
                throw std::invalid_argument("mcs_table: indices must be strictly increasing");
            }
            if (e.min_snr_db <= entries[i - 1].min_snr_db) {
                throw std::invalid_argument("mcs_table: min_snr_db must be strictly increasing");
            }
            if (e.phy_rate_bps <= entries[i - 1].phy_rate_bps) {
                throw std::invalid_argument("mcs_table: phy_rate_bps must be strictly increasing");
            }
        }
    }
}

const McsEntry* McsTable::find(int index) const {
    for (const McsEntry& e : entries) {
        if (e.index == index) return &e;
    }
    return nullptr;
}

double McsTable::top_rate_bps() const {
    return entries.empty() ? 0.0 : entries.back().phy_rate_bps;
}

McsTable builtin_mcs_table(std::string_view label) {
    // 802.11ac single stream, long guard interval. The 160 MHz ladder carries
    // the 58.5/117/175.5/234 Mbit/s demand rates.
    if (label == "vht160-gi800-1ss") {
        return make_table("vht160-gi800-1ss",
                          {58.5, 117.0, 175.5, 234.0, 351.0, 468.0, 526.5, 585.0, 702.0});
    }
    if (label == "vht20-gi800-1ss") {
        return make_table("vht20-gi800-1ss",
                          {6.5, 13.0, 19.5, 26.0, 39.0, 52.0, 58.5, 65.0, 78.0});
    }
    throw std::invalid_argument("unknown MCS table label: " + std::string(label));
}

std::vector<std::string> builtin_mcs_table_labels() {
    return {"vht160-gi800-1ss", "vht20-gi800-1ss"};
}

void NlosEnvironment::validate() const {
    if (!(rooftop_height_m > 0.0) || !(street_width_m > 0.0) ||
        !(building_separation_m > 0.0)) {
        throw std::invalid_argument("nlos_env: lengths must be positive");
    }
    if (street_orientation_deg < 0.0 || street_orientation_deg > 90.0) {
        throw std::invalid_argument("nlos_env: street orientation must be in [0, 90] degrees");
    }
}

double friis_snr(double distance_m, const RadioConfig& radio) {
    if (!(distance_m > 0.0)) {
        throw std::invalid_argument("friis_snr: distance must be positive");
    }
    return radio.tx_power_dbm - 20.0 * std::log10(distance_m) -
           20.0 * std::log10(radio.frequency_hz) -
           20.0 * std::log10(4.0 * std::numbers::pi / kSpeedOfLight) - radio.noise_floor_dbm;
}

double friis_max_distance(double snr_min_db, const RadioConfig& radio) {
    const double k = -20.0 * std::log10(radio.frequency_hz) -
                     20.0 * std::log10(4.0 * std::numbers::pi / kSpeedOfLight) -
                     radio.noise_floor_dbm;
    return std::pow(10.0, (k + radio.tx_power_dbm - snr_min_db) / 20.0);
}

double itu1411_los_loss(double distance_m, const RadioConfig& radio, double h_uav_m,
                        double h_ue_m) {
    if (!(distance_m > 0.0)) {
        throw std::invalid_argument("itu1411_los_loss: distance must be positive");
    }
    if (!(h_uav_m > 0.0) || !(h_ue_m > 0.0)) {
        throw std::invalid_argument("itu1411_los_loss: heights must be positive");
    }
    const double lambda = radio.wavelength_m();
    const double l_bp =
        std::abs(20.0 * std::log10(lambda * lambda / (8.0 * std::numbers::pi * h_uav_m * h_ue_m)));
    const double r_bp = 4.0 * h_uav_m * h_ue_m / lambda;
    const double slope = distance_m <= r_bp ? 20.0 : 40.0;
    return l_bp + 6.0 + slope * std::log10(distance_m / r_bp);
}

double itu1411_nlos_rooftop_loss(double distance_m, const RadioConfig& radio,
                                 const NlosEnvironment& env, double h_uav_m, double h_ue_m) {
    if (!(distance_m > 0.0)) {
        throw std::invalid_argument("itu1411_nlos_rooftop_loss: distance must be positive");
    }
    if (!(h_uav_m > 0.0) || !(h_ue_m > 0.0)) {
        throw std::invalid_argument("itu1411_nlos_rooftop_loss: heights must be positive");
    }
    env.validate();

    const double f_mhz = radio.frequency_hz / 1e6;
    const double h_high = std::max(h_uav_m, h_ue_m);
    const double h_low = std::min(h_uav_m, h_ue_m);
    if (h_low >= env.rooftop_height_m) {
        throw std::invalid_argument(
            "itu1411_nlos_rooftop_loss: lower station must be below rooftop level");
    }

    const double phi = env.street_orientation_deg;
    double l_ori;
    if (phi < 35.0) {
        l_ori = -10.0 + 0.354 * phi;
    } else if (phi < 55.0) {
        l_ori = 2.5 + 0.075 * (phi - 35.0);
    } else {
        l_ori = 4.0 - 0.114 * (phi - 55.0);
    }

    // Rooftop-to-street diffraction.
    const double l_rts = -8.2 - 10.0 * std::log10(env.street_width_m) +
                         10.0 * std::log10(f_mhz) +
                         20.0 * std::log10(env.rooftop_height_m - h_low) + l_ori;

    // Multi-screen diffraction.
    double l_bsh;
    double ka;
    double kd;
    if (h_high > env.rooftop_height_m) {
        l_bsh = -18.0 * std::log10(1.0 + h_high - env.rooftop_height_m);
        ka = 54.0;
        kd = 18.0;
    } else {
        l_bsh = 0.0;
        kd = 18.0 - 15.0 * (h_high - env.rooftop_height_m) / env.rooftop_height_m;
        ka = distance_m >= 500.0 ? 54.0 - 0.8 * (h_high - env.rooftop_height_m)
                                 : 54.0 - 1.6 * (h_high - env.rooftop_height_m) * distance_m / 1000.0;
    }
    const double kf = -4.0 + (env.large_city ? 1.5 : 0.7) * (f_mhz / 925.0 - 1.0);
    const double l_msd = l_bsh + ka + kd * std::log10(distance_m / 1000.0) +
                         kf * std::log10(f_mhz) - 9.0 * std::log10(env.building_separation_m);

    const double l_free = 32.4 + 20.0 * std::log10(distance_m / 1000.0) + 20.0 * std::log10(f_mhz);
    const double diffraction = l_rts + l_msd;
    const double loss = diffraction > 0.0 ? l_free + diffraction : l_free;

    // Keep the physically required ordering even in parameter corners where
    // the diffraction terms vanish.
    return std::max(loss, itu1411_los_loss(distance_m, radio, h_uav_m, h_ue_m));
}

LinkBudget link_budget(const Vec3& uav, const Vec3& ue_pos, const Venue& venue,
                       const RadioConfig& radio, const NlosEnvironment& env) {
    if (uav == ue_pos) throw std::invalid_argument("link_budget: identical endpoints");
    LinkBudget lb;
    lb.distance_m = uav.distance_to(ue_pos);
    lb.los = line_of_sight(uav, ue_pos, venue);
    lb.path_loss_db = lb.los
                          ? itu1411_los_loss(lb.distance_m, radio, uav.z, ue_pos.z)
                          : itu1411_nlos_rooftop_loss(lb.distance_m, radio, env, uav.z, ue_pos.z);
    lb.snr_db =
        radio.tx_power_dbm - lb.path_loss_db + radio.antenna_gain_dbi - radio.noise_floor_dbm;
    return lb;
}

std::optional<McsEntry> select_mcs(double snr_db, const McsTable& table) {
    const McsEntry* best = nullptr;
    for (const McsEntry& e : table.entries) {
        if (e.min_snr_db <= snr_db) best = &e;
    }
    if (best == nullptr) return std::nullopt;
    return *best;
}

} // namespace rltopa
