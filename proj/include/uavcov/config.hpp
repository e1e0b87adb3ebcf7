// SPDX-License-Identifier: Apache-2.0
//
// uavcov: 3D coverage analysis for cellular-connected UAVs
// Copyright (C) 2026 The uavcov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// JSON scenario configuration. Every section and key is optional and falls
// back to the defaults below; unknown keys are rejected.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavcov/antenna.hpp"
#include "uavcov/channel.hpp"
#include "uavcov/coverage.hpp"
#include "uavcov/csv.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/geometry.hpp"
#include "uavcov/units.hpp"

namespace uavcov {

struct LayoutConfig {
    double inter_cell_distance_m = 500.0;
    std::optional<double> network_radius_m; // default 10 D
    double gbs_height_m = 20.0;
    int reuse_factor = 3;
    std::string sites_csv;                  // explicit layout, resolved path

    double network_radius() const { return network_radius_m.value_or(10.0 * inter_cell_distance_m); }
};

struct ChannelConfig {
    std::string model = "parametric"; // "parametric" | "table"
    std::string table_path;           // resolved path for "table"
    double nlos_excess_db = 3.0;
    std::optional<double> beta_los_db;
    std::optional<double> beta_nlos_db;
    ParametricAirGroundModel::Params params; // beta_* filled by resolve()
};

struct RadioConfig {
    double carrier_hz = 2e9;
    double noise_w = dbm_to_watt(-124.0);
    double gbs_power_w = 0.1;
    double uav_power_w = dbm_to_watt(-20.0);

    double beta0() const { return uav_power_w / noise_w; }
    double alpha0() const { return noise_w / gbs_power_w; }
};

struct ThresholdConfig {
    double uplink = db_to_linear(12.0);  // linear
    double downlink = db_to_linear(2.0); // linear
};

struct MapConfig {
    SamplingRegion region;
    double altitude_m = 100.0;
};

enum class SweepKind { kAltitude, kThreshold };

struct SweepConfig {
    SweepKind kind = SweepKind::kAltitude;
    Link link = Link::kUplink;
    double altitude_min_m = 30.0;
    double altitude_max_m = 200.0;
    int altitude_points = 18;
    double altitude_m = 100.0;     // threshold sweeps
    double threshold_min_db = -5.0;
    double threshold_max_db = 20.0;
    int threshold_points = 11;
};

struct ProbeConfig {
    double x_m = 150.0;
    double y_m = 50.0;
    double altitude_m = 100.0;
    std::optional<int> serving_gbs;     // default: largest LoS gain
    std::vector<double> omegas{0.05, 0.5, 0.95};
};

struct ValidateConfig {
    double kolmogorov_tol = 0.01;
    double mc_kolmogorov_tol = 0.005;
    double pmf_tol = 1e-12;
    std::size_t mc_samples = 1000000;
    double enumeration_cap = kDefaultEnumerationCap;
    std::vector<double> ga_ordering_omegas{0.05, 0.95};
};

struct ScenarioConfig {
    LayoutConfig layout;
    UlaPattern gbs_antenna;
    UavAntenna uav_antenna;
    ChannelConfig channel;
    RadioConfig radio;
    ThresholdConfig thresholds;
    DownlinkLoading loading;
    DownlinkOptions algorithm;
    double enumeration_cap = kDefaultEnumerationCap;
    MapConfig maps;
    SweepConfig sweep;
    ProbeConfig probe;
    ValidateConfig validate;

    nlohmann::json document; // as parsed, after overrides
};

namespace detail {

// Reads one JSON object, remembering which keys were consumed.
class Section {
public:
    Section(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(where("") + "must be an object");
    }

    bool has(const std::string& key) {
        if (!j_.contains(key)) return false;
        used_.insert(key);
        return true;
    }

    const nlohmann::json& raw(const std::string& key) {
        used_.insert(key);
        return j_.at(key);
    }

    const nlohmann::json& object() const { return j_; }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void number(const std::string& key, double& out) {
        if (!has(key)) return;
        const auto& v = j_.at(key);
        if (!v.is_number()) throw ConfigError(where(key) + "expected a number");
        out = v.get<double>();
    }
    void number_opt(const std::string& key, std::optional<double>& out) {
        if (!has(key)) return;
        double v = 0.0;
        number(key, v);
        out = v;
    }
    void db(const std::string& key, double& linear, double offset_db = 0.0) {
        if (!has(key)) return;
        double v = 0.0;
        number(key, v);
        linear = db_to_linear(v + offset_db);
    }
    void integer(const std::string& key, int& out) {
        if (!has(key)) return;
        const auto& v = j_.at(key);
        if (!v.is_number_integer()) throw ConfigError(where(key) + "expected an integer");
        out = v.get<int>();
    }
    void text(const std::string& key, std::string& out) {
        if (!has(key)) return;
        const auto& v = j_.at(key);
        if (!v.is_string()) throw ConfigError(where(key) + "expected a string");
        out = v.get<std::string>();
    }
    void numbers(const std::string& key, std::vector<double>& out) {
        if (!has(key)) return;
        const auto& v = j_.at(key);
        if (!v.is_array()) throw ConfigError(where(key) + "expected an array of numbers");
        out.clear();
        for (const auto& e : v) {
            if (!e.is_number()) throw ConfigError(where(key) + "expected an array of numbers");
            out.push_back(e.get<double>());
        }
    }

    template <class Fn>
    void subsection(const std::string& key, Fn&& fn) {
        if (!has(key)) return;
        Section s(j_.at(key), field(key));
        fn(s);
        s.finish();
    }

    void finish() const {
        for (const auto& [k, v] : j_.items()) {
            if (!used_.count(k)) throw ConfigError("config: unknown key '" + field(k) + "'");
        }
    }

    std::string where(const std::string& key) const {
        return "config: " + (key.empty() ? (path_.empty() ? std::string("<root>") : path_) : field(key)) + ": ";
    }

private:
    const nlohmann::json& j_;
    std::string path_;
    std::set<std::string> used_;
};

inline void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ConfigError("config: " + field + ": " + what);
}

inline Link parse_link(const std::string& s, const std::string& field) {
    if (s == "uplink") return Link::kUplink;
    if (s == "downlink") return Link::kDownlink;
    throw ConfigError("config: " + field + ": expected 'uplink' or 'downlink', got '" + s + "'");
}

inline RegionKind parse_region(const std::string& s, const std::string& field) {
    if (s == "triangle") return RegionKind::kTriangle;
    if (s == "hexagon") return RegionKind::kHexagon;
    if (s == "polygon") return RegionKind::kPolygon;
    throw ConfigError("config: " + field + ": expected 'triangle', 'hexagon' or 'polygon', got '" + s + "'");
}

inline std::string resolve_path(const std::string& p, const std::filesystem::path& base) {
    if (p.empty()) return p;
    const std::filesystem::path q(p);
    return q.is_absolute() ? p : (base / q).lexically_normal().string();
}

} // namespace detail

// Parses and validates a configuration document. Relative paths inside it are
// resolved against `base_dir`.
inline ScenarioConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = ".") {
    using detail::require;
    ScenarioConfig c;
    c.document = doc;
    detail::Section root(doc, "");

    root.subsection("layout", [&](detail::Section& s) {
        auto& l = c.layout;
        s.number("inter_cell_distance_m", l.inter_cell_distance_m);
        s.number_opt("network_radius_m", l.network_radius_m);
        s.number("gbs_height_m", l.gbs_height_m);
        s.integer("reuse_factor", l.reuse_factor);
        s.text("sites_csv", l.sites_csv);
        l.sites_csv = detail::resolve_path(l.sites_csv, base_dir);
        require(l.inter_cell_distance_m > 0.0, "layout.inter_cell_distance_m", "must be positive");
        require(l.network_radius() >= 0.0, "layout.network_radius_m", "must be non-negative");
        require(l.gbs_height_m > 0.0, "layout.gbs_height_m", "must be positive");
        require(l.reuse_factor == 1 || l.reuse_factor == 3 || l.reuse_factor == 4 || l.reuse_factor == 7,
                "layout.reuse_factor", "must be one of 1, 3, 4, 7");
    });

    root.subsection("gbs_antenna", [&](detail::Section& s) {
        auto& a = c.gbs_antenna;
        s.integer("elements", a.elements);
        s.number("spacing_wavelengths", a.spacing_wavelengths);
        s.number("downtilt_deg", a.downtilt_deg);
        s.db("element_peak_gain_dbi", a.element_peak_gain);
        if (s.has("element_peak_gain")) {
            require(!s.has("element_peak_gain_dbi"), s.field("element_peak_gain"),
                    "give either element_peak_gain or element_peak_gain_dbi");
            s.number("element_peak_gain", a.element_peak_gain);
        }
    });
    try {
        c.gbs_antenna.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: gbs_antenna: ") + e.what());
    }

    root.subsection("uav_antenna", [&](detail::Section& s) {
        auto& a = c.uav_antenna;
        s.number("half_beamwidth_deg", a.half_beamwidth_deg);
        s.number("mainlobe_constant", a.mainlobe_constant);
        s.number("backlobe_gain", a.backlobe_gain);
    });
    try {
        c.uav_antenna.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: uav_antenna: ") + e.what());
    }

    root.subsection("radio", [&](detail::Section& s) {
        auto& r = c.radio;
        s.number("carrier_hz", r.carrier_hz);
        s.db("noise_dbm", r.noise_w, -30.0);
        s.number("gbs_power_w", r.gbs_power_w);
        s.db("uav_power_dbm", r.uav_power_w, -30.0);
        require(r.carrier_hz > 0.0, "radio.carrier_hz", "must be positive");
        require(r.gbs_power_w > 0.0, "radio.gbs_power_w", "must be positive");
    });

    root.subsection("channel", [&](detail::Section& s) {
        auto& ch = c.channel;
        s.text("model", ch.model);
        require(ch.model == "parametric" || ch.model == "table", "channel.model",
                "expected 'parametric' or 'table', got '" + ch.model + "'");
        if (ch.model == "table") {
            s.text("table", ch.table_path);
            require(!ch.table_path.empty(), "channel.table", "required when channel.model is 'table'");
            ch.table_path = detail::resolve_path(ch.table_path, base_dir);
            return;
        }
        s.number("alpha_los", ch.params.alpha_los);
        s.number("alpha_nlos", ch.params.alpha_nlos);
        s.number("nlos_excess_db", ch.nlos_excess_db);
        s.number_opt("beta_los_db", ch.beta_los_db);
        s.number_opt("beta_nlos_db", ch.beta_nlos_db);
        s.number("los_a", ch.params.los_a);
        s.number("los_b_per_deg", ch.params.los_b_per_deg);
        s.number("los_midpoint_deg", ch.params.los_midpoint_deg);
    });
    if (c.channel.model == "parametric") {
        const auto d = ParametricAirGroundModel::defaults_for_carrier(c.radio.carrier_hz, c.channel.nlos_excess_db);
        c.channel.params.beta_los = c.channel.beta_los_db ? db_to_linear(*c.channel.beta_los_db) : d.beta_los;
        c.channel.params.beta_nlos = c.channel.beta_nlos_db
                                         ? db_to_linear(*c.channel.beta_nlos_db)
                                         : c.channel.params.beta_los * db_to_linear(-c.channel.nlos_excess_db);
        try {
            ParametricAirGroundModel check(c.channel.params);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("config: channel: ") + e.what());
        }
    }

    root.subsection("thresholds", [&](detail::Section& s) {
        s.db("uplink_db", c.thresholds.uplink);
        s.db("downlink_db", c.thresholds.downlink);
    });

    root.subsection("loading", [&](detail::Section& s) {
        s.number("omega", c.loading.omega);
        s.subsection("per_gbs", [&](detail::Section& p) {
            for (const auto& [k, v] : p.object().items()) {
                int id = 0;
                std::size_t pos = 0;
                try {
                    id = std::stoi(k, &pos);
                } catch (const std::exception&) {
                    pos = 0;
                }
                require(pos == k.size() && !k.empty(), p.field(k), "keys must be GBS ids");
                double w = 0.0;
                p.number(k, w);
                c.loading.per_gbs[id] = w;
            }
        });
    });
    try {
        c.loading.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: loading: ") + e.what());
    }

    root.subsection("algorithm", [&](detail::Section& s) {
        auto& a = c.algorithm;
        s.number("truncation", a.eps);
        s.number("lattice_scale", a.c0);
        s.number("enumeration_cap", c.enumeration_cap);
        std::string mode = "renormalize";
        s.text("truncation_mode", mode);
        require(mode == "renormalize" || mode == "drop", "algorithm.truncation_mode",
                "expected 'renormalize' or 'drop', got '" + mode + "'");
        a.mode = mode == "drop" ? TruncationMode::kDrop : TruncationMode::kRenormalize;
        require(a.eps >= 0.0 && a.eps < 1.0, "algorithm.truncation", "must lie in [0, 1)");
        require(a.c0 >= 1.0, "algorithm.lattice_scale", "must be >= 1");
        require(c.enumeration_cap >= 1.0, "algorithm.enumeration_cap", "must be >= 1");
    });
    c.validate.enumeration_cap = c.enumeration_cap;

    root.subsection("maps", [&](detail::Section& s) {
        auto& m = c.maps;
        std::string region = "triangle";
        s.text("region", region);
        m.region.kind = detail::parse_region(region, "maps.region");
        s.integer("resolution", m.region.resolution);
        s.number("altitude_m", m.altitude_m);
        if (s.has("polygon")) {
            const auto& p = s.raw("polygon");
            require(p.is_array(), "maps.polygon", "expected an array of [x, y] pairs");
            for (const auto& v : p) {
                require(v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number(), "maps.polygon",
                        "expected an array of [x, y] pairs");
                m.region.polygon.push_back({v[0].get<double>(), v[1].get<double>()});
            }
        }
        require(m.region.resolution >= 1, "maps.resolution", "must be >= 1");
        require(m.region.kind != RegionKind::kPolygon || m.region.polygon.size() >= 3, "maps.polygon",
                "needs at least 3 vertices");
    });

    root.subsection("sweep", [&](detail::Section& s) {
        auto& w = c.sweep;
        std::string kind = "altitude", link = "uplink";
        s.text("kind", kind);
        require(kind == "altitude" || kind == "threshold", "sweep.kind",
                "expected 'altitude' or 'threshold', got '" + kind + "'");
        w.kind = kind == "altitude" ? SweepKind::kAltitude : SweepKind::kThreshold;
        s.text("link", link);
        w.link = detail::parse_link(link, "sweep.link");
        s.number("altitude_min_m", w.altitude_min_m);
        s.number("altitude_max_m", w.altitude_max_m);
        s.integer("altitude_points", w.altitude_points);
        s.number("altitude_m", w.altitude_m);
        s.number("threshold_min_db", w.threshold_min_db);
        s.number("threshold_max_db", w.threshold_max_db);
        s.integer("threshold_points", w.threshold_points);
        require(w.altitude_max_m >= w.altitude_min_m, "sweep.altitude_max_m", "must be >= altitude_min_m");
        require(w.threshold_max_db >= w.threshold_min_db, "sweep.threshold_max_db", "must be >= threshold_min_db");
        require(w.altitude_points >= 1, "sweep.altitude_points", "must be >= 1");
        require(w.threshold_points >= 1, "sweep.threshold_points", "must be >= 1");
    });

    root.subsection("probe", [&](detail::Section& s) {
        auto& p = c.probe;
        s.number("x_m", p.x_m);
        s.number("y_m", p.y_m);
        s.number("altitude_m", p.altitude_m);
        if (s.has("serving_gbs")) {
            int id = 0;
            s.integer("serving_gbs", id);
            p.serving_gbs = id;
        }
        s.numbers("omegas", p.omegas);
        require(!p.omegas.empty(), "probe.omegas", "needs at least one value");
        for (double w : p.omegas) require(w >= 0.0 && w <= 1.0, "probe.omegas", "values must lie in [0, 1]");
    });

    root.subsection("validate", [&](detail::Section& s) {
        auto& v = c.validate;
        s.number("kolmogorov_tol", v.kolmogorov_tol);
        s.number("mc_kolmogorov_tol", v.mc_kolmogorov_tol);
        s.number("pmf_tol", v.pmf_tol);
        if (s.has("mc_samples")) {
            const auto& n = s.raw("mc_samples");
            require(n.is_number_integer() && n.get<long long>() >= 1, "validate.mc_samples",
                    "expected a positive integer");
            v.mc_samples = n.get<std::size_t>();
        }
        s.numbers("ga_ordering_omegas", v.ga_ordering_omegas);
    });

    root.finish();
    return c;
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

inline ScenarioConfig load_config(const std::string& path) {
    const auto base = std::filesystem::path(path).parent_path();
    return parse_config(read_json_file(path), base.empty() ? "." : base);
}

// FNV-1a 64 of the canonical (sorted-key) serialization.
inline std::string config_hash(const nlohmann::json& doc) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : doc.dump()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string config_hash(const ScenarioConfig& c) { return config_hash(c.document); }

inline NetworkLayout build_layout(const ScenarioConfig& c) {
    const auto& l = c.layout;
    if (!l.sites_csv.empty()) {
        return make_explicit_layout(csv::read_layout(l.sites_csv), l.inter_cell_distance_m, l.gbs_height_m,
                                    l.reuse_factor);
    }
    return build_hex_layout(l.inter_cell_distance_m, l.network_radius(), l.gbs_height_m, l.reuse_factor);
}

inline std::shared_ptr<const ChannelModel> build_channel(const ScenarioConfig& c) {
    if (c.channel.model == "table") return load_table_channel_model(c.channel.table_path);
    return std::make_shared<ParametricAirGroundModel>(c.channel.params);
}

inline Scenario to_scenario(const ScenarioConfig& c) {
    Scenario s;
    s.layout = build_layout(c);
    s.gbs_antenna = c.gbs_antenna;
    s.uav_antenna = c.uav_antenna;
    s.channel = build_channel(c);
    s.beta0 = c.radio.beta0();
    s.alpha0 = c.radio.alpha0();
    s.loading = c.loading;
    s.algorithm = c.algorithm;
    return s;
}

} // namespace uavcov
