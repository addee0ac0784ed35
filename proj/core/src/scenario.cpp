#include "rltopa/scenario.hpp"

#include "rltopa/rng.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace rltopa {

using json = nlohmann::ordered_json;

void EpisodeConfig::validate() const {
    if (!(decision_interval_s > 0.0)) {
        throw ScenarioError("episode.decision_interval_s must be positive");
    }
    if (warmup_s < 0.0) throw ScenarioError("episode.warmup_s must be non-negative");
    if (!(duration_s > warmup_s)) {
        throw ScenarioError("episode.duration_s must exceed episode.warmup_s");
    }
    if (total_steps() < 1) throw ScenarioError("episode: no decision steps in the duration");
}

int EpisodeConfig::total_steps() const {
    return static_cast<int>(std::floor((duration_s - warmup_s) / decision_interval_s + 1e-9));
}

int EpisodeConfig::warmup_steps() const {
    return static_cast<int>(std::floor(warmup_s / decision_interval_s + 1e-9));
}

void EpsilonSchedule::validate() const {
    if (!(end >= 0.0) || !(start >= end) || !(start <= 1.0)) {
        throw ScenarioError("train.epsilon: need 0 <= end <= start <= 1");
    }
    if (!(power > 0.0)) throw ScenarioError("train.epsilon.power must be positive");
    if (horizon_steps < 0) throw ScenarioError("train.epsilon.horizon_steps must be >= 0");
}

double EpsilonSchedule::value(long step) const {
    if (step <= 0) return start;
    if (horizon_steps <= 0 || step >= horizon_steps) return end;
    const double remaining = 1.0 - static_cast<double>(step) / static_cast<double>(horizon_steps);
    return end + (start - end) * std::pow(remaining, power);
}

void TrainConfig::validate() const {
    if (episodes < 1) throw ScenarioError("train.episodes must be >= 1");
    if (!(learning_rate > 0.0)) throw ScenarioError("train.learning_rate must be positive");
    if (!(gamma > 0.0) || gamma > 1.0) throw ScenarioError("train.gamma must be in (0, 1]");
    if (target_sync_steps < 1) throw ScenarioError("train.target_sync_steps must be >= 1");
    if (batch_size < 1) throw ScenarioError("train.batch_size must be >= 1");
    if (buffer_capacity < static_cast<std::size_t>(batch_size)) {
        throw ScenarioError("train.buffer_capacity must be >= batch_size");
    }
    epsilon.validate();
}

void Scenario::validate() const {
    try {
        venue.validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("venue.") + e.what());
    }
    try {
        radio.validate();
        mcs.validate();
        nlos_env.validate();
        zone.validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
    }
    episode.validate();
    train.validate();

    if (ues.empty()) throw ScenarioError("ue: at least one UE is required");
    const double half = venue.side_length / 2.0;
    std::vector<int> seen_ids;
    for (std::size_t i = 0; i < ues.size(); ++i) {
        const std::string path = "ue[" + std::to_string(i) + "]";
        const UserEquipment& ue = ues[i];
        if (!ue.position.finite()) throw ScenarioError(path + ".p_i: non-finite position");
        if (ue.position.x < -half || ue.position.x > half || ue.position.y < -half ||
            ue.position.y > half) {
            throw ScenarioError(path + ".p_i: outside the venue");
        }
        if (ue.position.z < 0.0) throw ScenarioError(path + ".p_i: below ground");
        for (std::size_t b = 0; b < venue.buildings.size(); ++b) {
            if (venue.buildings[b].interior_contains(ue.position)) {
                throw ScenarioError(path + ".p_i: inside buildings[" + std::to_string(b) + "]");
            }
        }
        if (!(ue.demand_bps > 0.0)) throw ScenarioError(path + ".b_i: demand must be positive");
        if (mcs.find(ue.demanded_mcs) == nullptr) {
            throw ScenarioError(path + ".mcs_i: index " + std::to_string(ue.demanded_mcs) +
                                " is not in table '" + mcs.label + "'");
        }
        for (int id : seen_ids) {
            if (id == ue.id) throw ScenarioError(path + ".id: duplicate id");
        }
        seen_ids.push_back(ue.id);
    }
    if (baseline_position && !baseline_position->finite()) {
        throw ScenarioError("baseline_position: non-finite");
    }
    if (!(offset_distance_m > 0.0)) {
        throw ScenarioError("offset_distance_m must be positive");
    }
}

namespace {

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ScenarioError(path + ": missing field '" + key + "'");
    return *it;
}

double as_double(const json& v, const std::string& path) {
    if (!v.is_number()) throw ScenarioError(path + ": expected a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ScenarioError(path + ": expected an integer");
    return v.get<int>();
}

Vec3 as_vec3(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3) throw ScenarioError(path + ": expected [x, y, z]");
    return {as_double(v[0], path), as_double(v[1], path), as_double(v[2], path)};
}

Building parse_building(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 9) {
        throw ScenarioError(path +
                            ": expected the 9-tuple [x_min, x_max, y_min, y_max, z_min, z_max, "
                            "floors, x_rooms, y_rooms]");
    }
    Building b;
    b.x_min = as_double(v[0], path);
    b.x_max = as_double(v[1], path);
    b.y_min = as_double(v[2], path);
    b.y_max = as_double(v[3], path);
    b.z_min = as_double(v[4], path);
    b.z_max = as_double(v[5], path);
    b.floors = as_int(v[6], path);
    b.x_rooms = as_int(v[7], path);
    b.y_rooms = as_int(v[8], path);
    return b;
}

McsTable parse_mcs_table(const json& v) {
    if (v.is_string()) return builtin_mcs_table(v.get<std::string>());
    if (!v.is_object()) throw ScenarioError("mcs_table: expected a label or an inline table");
    McsTable t;
    t.label = require(v, "label", "mcs_table").get<std::string>();
    const json& entries = require(v, "entries", "mcs_table");
    if (!entries.is_array() || entries.empty()) {
        throw ScenarioError("mcs_table.entries: expected a non-empty array");
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string path = "mcs_table.entries[" + std::to_string(i) + "]";
        const json& e = entries[i];
        McsEntry entry;
        entry.index = as_int(require(e, "index", path), path + ".index");
        entry.min_snr_db = as_double(require(e, "min_snr_db", path), path + ".min_snr_db");
        entry.phy_rate_bps = as_double(require(e, "phy_rate_bps", path), path + ".phy_rate_bps");
        t.entries.push_back(entry);
    }
    try {
        t.validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
    }
    return t;
}

std::vector<UserEquipment> expand_random_ues(const json& v, const Venue& venue,
                                             const std::string& path) {
    const int count = as_int(require(v, "count", path), path + ".count");
    if (count < 1) throw ScenarioError(path + ".count: must be >= 1");
    const auto seed =
        static_cast<std::uint64_t>(as_int(require(v, "seed", path), path + ".seed"));
    const double height = v.contains("height") ? as_double(v["height"], path + ".height") : 1.5;
    const json& demands = require(v, "demands", path);
    if (!demands.is_array() || demands.empty()) {
        throw ScenarioError(path + ".demands: expected a non-empty array");
    }

    Rng rng(derive_seed(seed, 0xB1ACEDULL));
    const double half = venue.side_length / 2.0;
    std::vector<UserEquipment> ues;
    for (int i = 0; i < count; ++i) {
        Vec3 p;
        bool placed = false;
        // Rejection sampling keeps every UE in a street, outside all
        // footprints.
        for (int attempt = 0; attempt < 100000; ++attempt) {
            p = {rng.uniform_range(-half, half), rng.uniform_range(-half, half), height};
            bool in_footprint = false;
            for (const Building& b : venue.buildings) {
                if (b.footprint_contains(p.x, p.y)) {
                    in_footprint = true;
                    break;
                }
            }
            if (!in_footprint) {
                placed = true;
                break;
            }
        }
        if (!placed) {
            throw ScenarioError(path + ": could not place UE " + std::to_string(i) +
                                " outside the building footprints");
        }
        const json& d = demands[static_cast<std::size_t>(i) % demands.size()];
        const std::string dpath = path + ".demands[" + std::to_string(i % demands.size()) + "]";
        UserEquipment ue;
        ue.id = i;
        ue.position = p;
        ue.demand_bps = as_double(require(d, "b_i", dpath), dpath + ".b_i");
        ue.demanded_mcs = as_int(require(d, "mcs_i", dpath), dpath + ".mcs_i");
        ues.push_back(ue);
    }
    return ues;
}

Scenario parse_scenario_json(const json& doc) {
    if (!doc.is_object()) throw ScenarioError("scenario: expected a JSON object");
    const int schema = as_int(require(doc, "schema", "scenario"), "schema");
    if (schema != 1) {
        throw ScenarioError("schema: unsupported version " + std::to_string(schema));
    }

    Scenario sc;
    sc.name = doc.contains("name") ? doc["name"].get<std::string>() : "unnamed";

    const json& venue = require(doc, "venue", "scenario");
    sc.venue.side_length = as_double(require(venue, "s_venue", "venue"), "venue.s_venue");
    const json& buildings = require(venue, "buildings", "venue");
    if (!buildings.is_array()) throw ScenarioError("venue.buildings: expected an array");
    for (std::size_t i = 0; i < buildings.size(); ++i) {
        sc.venue.buildings.push_back(
            parse_building(buildings[i], "venue.buildings[" + std::to_string(i) + "]"));
    }

    if (doc.contains("radio")) {
        const json& radio = doc["radio"];
        if (radio.contains("f_mhz")) {
            sc.radio.frequency_hz = as_double(radio["f_mhz"], "radio.f_mhz") * 1e6;
        }
        if (radio.contains("tx_power_dbm")) {
            sc.radio.tx_power_dbm = as_double(radio["tx_power_dbm"], "radio.tx_power_dbm");
        }
        if (radio.contains("noise_floor_dbm")) {
            sc.radio.noise_floor_dbm =
                as_double(radio["noise_floor_dbm"], "radio.noise_floor_dbm");
        }
        if (radio.contains("bandwidth_mhz")) {
            sc.radio.bandwidth_mhz = as_double(radio["bandwidth_mhz"], "radio.bandwidth_mhz");
        }
        if (radio.contains("guard_interval_ns")) {
            sc.radio.guard_interval_ns =
                as_double(radio["guard_interval_ns"], "radio.guard_interval_ns");
        }
        if (radio.contains("antenna_gain_dbi")) {
            sc.radio.antenna_gain_dbi =
                as_double(radio["antenna_gain_dbi"], "radio.antenna_gain_dbi");
        }
    }

    sc.mcs = doc.contains("mcs_table") ? parse_mcs_table(doc["mcs_table"])
                                       : builtin_mcs_table("vht160-gi800-1ss");

    const json& zone = require(doc, "z_p", "scenario");
    sc.zone.min_corner = as_vec3(require(zone, "min", "z_p"), "z_p.min");
    sc.zone.max_corner = as_vec3(require(zone, "max", "z_p"), "z_p.max");
    sc.zone.grid_size = as_double(require(zone, "grid_size", "z_p"), "z_p.grid_size");

    if (doc.contains("ue") && doc.contains("ue_random")) {
        throw ScenarioError("scenario: 'ue' and 'ue_random' are mutually exclusive");
    }
    if (doc.contains("ue")) {
        const json& ue_list = doc["ue"];
        if (!ue_list.is_array()) throw ScenarioError("ue: expected an array");
        for (std::size_t i = 0; i < ue_list.size(); ++i) {
            const std::string path = "ue[" + std::to_string(i) + "]";
            const json& u = ue_list[i];
            UserEquipment ue;
            ue.id = u.contains("id") ? as_int(u["id"], path + ".id") : static_cast<int>(i);
            ue.position = as_vec3(require(u, "p_i", path), path + ".p_i");
            ue.demand_bps = as_double(require(u, "b_i", path), path + ".b_i");
            ue.demanded_mcs = as_int(require(u, "mcs_i", path), path + ".mcs_i");
            sc.ues.push_back(ue);
        }
    } else if (doc.contains("ue_random")) {
        sc.ues = expand_random_ues(doc["ue_random"], sc.venue, "ue_random");
    } else {
        throw ScenarioError("scenario: one of 'ue' or 'ue_random' is required");
    }

    if (doc.contains("baseline_position")) {
        sc.baseline_position = as_vec3(doc["baseline_position"], "baseline_position");
    }
    if (doc.contains("offset_distance_m")) {
        sc.offset_distance_m = as_double(doc["offset_distance_m"], "offset_distance_m");
    }

    if (doc.contains("nlos_env")) {
        const json& env = doc["nlos_env"];
        if (env.contains("rooftop_height_m")) {
            sc.nlos_env.rooftop_height_m =
                as_double(env["rooftop_height_m"], "nlos_env.rooftop_height_m");
        }
        if (env.contains("street_width_m")) {
            sc.nlos_env.street_width_m =
                as_double(env["street_width_m"], "nlos_env.street_width_m");
        }
        if (env.contains("building_separation_m")) {
            sc.nlos_env.building_separation_m =
                as_double(env["building_separation_m"], "nlos_env.building_separation_m");
        }
        if (env.contains("street_orientation_deg")) {
            sc.nlos_env.street_orientation_deg =
                as_double(env["street_orientation_deg"], "nlos_env.street_orientation_deg");
        }
        if (env.contains("large_city")) {
            sc.nlos_env.large_city = env["large_city"].get<bool>();
        }
    }

    if (doc.contains("episode")) {
        const json& ep = doc["episode"];
        if (ep.contains("duration_s")) {
            sc.episode.duration_s = as_double(ep["duration_s"], "episode.duration_s");
        }
        if (ep.contains("decision_interval_s")) {
            sc.episode.decision_interval_s =
                as_double(ep["decision_interval_s"], "episode.decision_interval_s");
        }
        if (ep.contains("warmup_s")) {
            sc.episode.warmup_s = as_double(ep["warmup_s"], "episode.warmup_s");
        }
    }

    if (doc.contains("train")) {
        const json& tr = doc["train"];
        if (tr.contains("episodes")) sc.train.episodes = as_int(tr["episodes"], "train.episodes");
        if (tr.contains("learning_rate")) {
            sc.train.learning_rate = as_double(tr["learning_rate"], "train.learning_rate");
        }
        if (tr.contains("gamma")) sc.train.gamma = as_double(tr["gamma"], "train.gamma");
        if (tr.contains("target_sync_steps")) {
            sc.train.target_sync_steps = as_int(tr["target_sync_steps"], "train.target_sync_steps");
        }
        if (tr.contains("buffer_capacity")) {
            sc.train.buffer_capacity = static_cast<std::size_t>(
                tr["buffer_capacity"].get<std::uint64_t>());
        }
        if (tr.contains("batch_size")) {
            sc.train.batch_size = as_int(tr["batch_size"], "train.batch_size");
        }
        if (tr.contains("epsilon")) {
            const json& e = tr["epsilon"];
            if (e.contains("start")) sc.train.epsilon.start = as_double(e["start"], "train.epsilon.start");
            if (e.contains("end")) sc.train.epsilon.end = as_double(e["end"], "train.epsilon.end");
            if (e.contains("power")) sc.train.epsilon.power = as_double(e["power"], "train.epsilon.power");
            if (e.contains("horizon_steps")) {
                sc.train.epsilon.horizon_steps = e["horizon_steps"].get<long>();
            }
        }
    }

    sc.validate();
    return sc;
}

} // namespace

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

Scenario parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario: invalid JSON: ") + e.what());
    }
    return parse_scenario_json(doc);
}

std::string emit_scenario(const Scenario& sc) {
    json doc;
    doc["schema"] = 1;
    doc["name"] = sc.name;
    doc["venue"]["s_venue"] = sc.venue.side_length;
    json buildings = json::array();
    for (const Building& b : sc.venue.buildings) {
        buildings.push_back(json::array(
            {b.x_min, b.x_max, b.y_min, b.y_max, b.z_min, b.z_max, b.floors, b.x_rooms, b.y_rooms}));
    }
    doc["venue"]["buildings"] = std::move(buildings);
    doc["radio"] = {{"f_mhz", sc.radio.frequency_hz / 1e6},
                    {"tx_power_dbm", sc.radio.tx_power_dbm},
                    {"noise_floor_dbm", sc.radio.noise_floor_dbm},
                    {"bandwidth_mhz", sc.radio.bandwidth_mhz},
                    {"guard_interval_ns", sc.radio.guard_interval_ns},
                    {"antenna_gain_dbi", sc.radio.antenna_gain_dbi}};

    bool is_builtin = false;
    for (const std::string& label : builtin_mcs_table_labels()) {
        if (label != sc.mcs.label) continue;
        const McsTable built = builtin_mcs_table(label);
        if (built.entries.size() != sc.mcs.entries.size()) break;
        bool same = true;
        for (std::size_t i = 0; i < built.entries.size(); ++i) {
            same = same && built.entries[i].index == sc.mcs.entries[i].index &&
                   built.entries[i].min_snr_db == sc.mcs.entries[i].min_snr_db &&
                   built.entries[i].phy_rate_bps == sc.mcs.entries[i].phy_rate_bps;
        }
        is_builtin = same;
        break;
    }
    if (is_builtin) {
        doc["mcs_table"] = sc.mcs.label;
    } else {
        json entries = json::array();
        for (const McsEntry& e : sc.mcs.entries) {
            entries.push_back({{"index", e.index},
                               {"min_snr_db", e.min_snr_db},
                               {"phy_rate_bps", e.phy_rate_bps}});
        }
        doc["mcs_table"] = {{"label", sc.mcs.label}, {"entries", std::move(entries)}};
    }

    doc["z_p"] = {{"min", {sc.zone.min_corner.x, sc.zone.min_corner.y, sc.zone.min_corner.z}},
                  {"max", {sc.zone.max_corner.x, sc.zone.max_corner.y, sc.zone.max_corner.z}},
                  {"grid_size", sc.zone.grid_size}};

    json ues = json::array();
    for (const UserEquipment& ue : sc.ues) {
        ues.push_back({{"id", ue.id},
                       {"p_i", {ue.position.x, ue.position.y, ue.position.z}},
                       {"b_i", ue.demand_bps},
                       {"mcs_i", ue.demanded_mcs}});
    }
    doc["ue"] = std::move(ues);

    if (sc.baseline_position) {
        doc["baseline_position"] = {sc.baseline_position->x, sc.baseline_position->y,
                                    sc.baseline_position->z};
    }
    doc["offset_distance_m"] = sc.offset_distance_m;
    doc["nlos_env"] = {{"rooftop_height_m", sc.nlos_env.rooftop_height_m},
                       {"street_width_m", sc.nlos_env.street_width_m},
                       {"building_separation_m", sc.nlos_env.building_separation_m},
                       {"street_orientation_deg", sc.nlos_env.street_orientation_deg},
                       {"large_city", sc.nlos_env.large_city}};
    doc["episode"] = {{"duration_s", sc.episode.duration_s},
                      {"decision_interval_s", sc.episode.decision_interval_s},
                      {"warmup_s", sc.episode.warmup_s}};
    doc["train"] = {{"episodes", sc.train.episodes},
                    {"learning_rate", sc.train.learning_rate},
                    {"gamma", sc.train.gamma},
                    {"target_sync_steps", sc.train.target_sync_steps},
                    {"buffer_capacity", sc.train.buffer_capacity},
                    {"batch_size", sc.train.batch_size},
                    {"epsilon",
                     {{"start", sc.train.epsilon.start},
                      {"end", sc.train.epsilon.end},
                      {"power", sc.train.epsilon.power},
                      {"horizon_steps", sc.train.epsilon.horizon_steps}}}};
    return doc.dump(2) + "\n";
}

} // namespace rltopa
