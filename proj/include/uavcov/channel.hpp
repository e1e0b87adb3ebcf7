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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavcov/antenna.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/geometry.hpp"
#include "uavcov/units.hpp"

namespace uavcov {

enum class LinkState { kLos, kNlos };

struct LinkGeometry {
    double distance_m;      // 3D UAV-GBS distance
    double horizontal_m;    // horizontal distance
    double elevation_deg;   // elevation of the UAV seen from the GBS
};

inline LinkGeometry link_geometry(const UavPosition& u, const GbsSite& w, double gbs_height) {
    return {link_distance(u, w, gbs_height), horizontal_distance(u, w), elevation_angle(u, w, gbs_height)};
}

// Two-state air-ground channel: LoS probability plus LoS and NLoS power gains.
// Implementations must keep 0 <= p_L <= 1 and los_gain > nlos_gain > 0.
class ChannelModel {
public:
    virtual ~ChannelModel() = default;
    virtual double los_probability(const LinkGeometry& g) const = 0;
    virtual double los_gain(const LinkGeometry& g) const = 0;
    virtual double nlos_gain(const LinkGeometry& g) const = 0;

    double gain(const LinkGeometry& g, LinkState s) const { return s == LinkState::kLos ? los_gain(g) : nlos_gain(g); }
};

// Log-distance pathloss h = beta * d^-alpha on the 3D distance (clamped at
// 1 m), with a logistic LoS probability in the elevation angle:
//   p_L(theta) = 1 / (1 + a * exp(-b * (theta - theta0)))     theta in degrees
class ParametricAirGroundModel final : public ChannelModel {
public:
    struct Params {
        double alpha_los = 2.2;
        double alpha_nlos = 3.0;
        double beta_los = 0.0;  // linear gain at 1 m
        double beta_nlos = 0.0; // linear gain at 1 m
        double los_a = 9.6;
        double los_b_per_deg = 0.28;
        double los_midpoint_deg = 0.0;
    };

    explicit ParametricAirGroundModel(Params p) : p_(p) {
        if (!(p_.alpha_los > 0.0) || !(p_.alpha_nlos >= p_.alpha_los)) {
            throw ConfigError("pathloss exponents must satisfy alpha_nlos >= alpha_los > 0");
        }
        if (!(p_.beta_los > 0.0) || !(p_.beta_nlos > 0.0) || !(p_.beta_nlos < p_.beta_los)) {
            throw ConfigError("reference gains must satisfy beta_los > beta_nlos > 0");
        }
        if (!(p_.los_a > 0.0) || !(p_.los_b_per_deg > 0.0)) {
            throw ConfigError("LoS-probability coefficients a and b must be positive");
        }
    }

    // Free-space reference gain (lambda / 4 pi)^2 at 1 m for LoS; NLoS sits
    // `nlos_excess_db` below it.
    static Params defaults_for_carrier(double carrier_hz, double nlos_excess_db = 3.0) {
        if (!(carrier_hz > 0.0)) throw ConfigError("carrier frequency must be positive");
        Params p;
        const double lambda = kSpeedOfLight / carrier_hz;
        p.beta_los = std::pow(lambda / (4.0 * std::numbers::pi), 2);
        p.beta_nlos = p.beta_los * db_to_linear(-nlos_excess_db);
        return p;
    }

    double los_probability(const LinkGeometry& g) const override {
        return 1.0 / (1.0 + p_.los_a * std::exp(-p_.los_b_per_deg * (g.elevation_deg - p_.los_midpoint_deg)));
    }
    double los_gain(const LinkGeometry& g) const override {
        return p_.beta_los * std::pow(std::max(1.0, g.distance_m), -p_.alpha_los);
    }
    double nlos_gain(const LinkGeometry& g) const override {
        return p_.beta_nlos * std::pow(std::max(1.0, g.distance_m), -p_.alpha_nlos);
    }

    const Params& params() const { return p_; }

private:
    Params p_;
};

// Same pathloss law as the parametric model, but the LoS probability is a
// user-supplied table over elevation, linearly interpolated and clamped at
// the ends. Loaded from a JSON coefficient file:
//   { "alpha_los": 2.2, "alpha_nlos": 3.0, "beta_los_db": -38.5, "beta_nlos_db": -41.5,
//     "los_probability": { "elevation_deg": [...], "p_los": [...] } }
class TableChannelModel final : public ChannelModel {
public:
    TableChannelModel(double alpha_los, double alpha_nlos, double beta_los, double beta_nlos,
                      std::vector<double> elevation_deg, std::vector<double> p_los)
        : alpha_los_(alpha_los),
          alpha_nlos_(alpha_nlos),
          beta_los_(beta_los),
          beta_nlos_(beta_nlos),
          elev_(std::move(elevation_deg)),
          plos_(std::move(p_los)) {
        if (!(alpha_los_ > 0.0) || !(alpha_nlos_ >= alpha_los_)) {
            throw ConfigError("pathloss exponents must satisfy alpha_nlos >= alpha_los > 0");
        }
        if (!(beta_los_ > 0.0) || !(beta_nlos_ > 0.0) || !(beta_nlos_ < beta_los_)) {
            throw ConfigError("reference gains must satisfy beta_los > beta_nlos > 0");
        }
        if (elev_.size() < 2 || elev_.size() != plos_.size()) {
            throw ConfigError("los_probability table needs >= 2 rows and equal-length columns");
        }
        for (std::size_t i = 0; i < elev_.size(); ++i) {
            if (i > 0 && !(elev_[i] > elev_[i - 1])) {
                throw ConfigError("los_probability.elevation_deg must be strictly ascending");
            }
            if (!(plos_[i] >= 0.0 && plos_[i] <= 1.0)) {
                throw ConfigError("los_probability.p_los entries must lie in [0, 1]");
            }
        }
    }

    double los_probability(const LinkGeometry& g) const override {
        const double t = g.elevation_deg;
        if (t <= elev_.front()) return plos_.front();
        if (t >= elev_.back()) return plos_.back();
        const auto it = std::upper_bound(elev_.begin(), elev_.end(), t);
        const auto hi = static_cast<std::size_t>(it - elev_.begin());
        const double w = (t - elev_[hi - 1]) / (elev_[hi] - elev_[hi - 1]);
        return plos_[hi - 1] + w * (plos_[hi] - plos_[hi - 1]);
    }
    double los_gain(const LinkGeometry& g) const override {
        return beta_los_ * std::pow(std::max(1.0, g.distance_m), -alpha_los_);
    }
    double nlos_gain(const LinkGeometry& g) const override {
        return beta_nlos_ * std::pow(std::max(1.0, g.distance_m), -alpha_nlos_);
    }

private:
    double alpha_los_, alpha_nlos_, beta_los_, beta_nlos_;
    std::vector<double> elev_, plos_;
};

inline std::shared_ptr<const TableChannelModel> parse_table_channel_model(const std::string& text,
                                                                         const std::string& origin = "<string>") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(origin + ": top level must be an object");
    static const std::set<std::string> allowed{"alpha_los", "alpha_nlos", "beta_los_db", "beta_nlos_db",
                                               "los_probability"};
    for (const auto& [k, v] : j.items()) {
        if (!allowed.count(k)) throw ConfigError(origin + ": unknown key '" + k + "'");
    }
    auto number = [&](const nlohmann::json& obj, const char* key, const std::string& path) {
        if (!obj.contains(key)) throw ConfigError(origin + ": missing '" + path + "'");
        if (!obj.at(key).is_number()) throw ConfigError(origin + ": '" + path + "' must be a number");
        return obj.at(key).get<double>();
    };
    const double al = number(j, "alpha_los", "alpha_los");
    const double anl = number(j, "alpha_nlos", "alpha_nlos");
    const double bl = db_to_linear(number(j, "beta_los_db", "beta_los_db"));
    const double bnl = db_to_linear(number(j, "beta_nlos_db", "beta_nlos_db"));
    if (!j.contains("los_probability") || !j.at("los_probability").is_object()) {
        throw ConfigError(origin + ": missing object 'los_probability'");
    }
    const auto& t = j.at("los_probability");
    for (const auto& [k, v] : t.items()) {
        if (k != "elevation_deg" && k != "p_los") {
            throw ConfigError(origin + ": unknown key 'los_probability." + k + "'");
        }
    }
    auto column = [&](const char* key) {
        if (!t.contains(key) || !t.at(key).is_array()) {
            throw ConfigError(origin + ": 'los_probability." + std::string(key) + "' must be an array");
        }
        std::vector<double> out;
        for (const auto& v : t.at(key)) {
            if (!v.is_number()) throw ConfigError(origin + ": non-numeric entry in 'los_probability." + key + "'");
            out.push_back(v.get<double>());
        }
        return out;
    };
    try {
        return std::make_shared<TableChannelModel>(al, anl, bl, bnl, column("elevation_deg"), column("p_los"));
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

inline std::shared_ptr<const TableChannelModel> load_table_channel_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open channel coefficient file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_table_channel_model(ss.str(), path);
}

// ---------------------------------------------------------------------------
// Combined gains and the per-position link table

inline double los_probability(const ChannelModel& m, const UavPosition& u, const GbsSite& w, double gbs_height) {
    return m.los_probability(link_geometry(u, w, gbs_height));
}

// UAV antenna gain x GBS antenna gain x channel gain in the given state.
inline double combined_gain(const UavPosition& u, const GbsSite& w, double gbs_height, LinkState state,
                            const GbsPattern& gbs, const UavAntenna& uav, const ChannelModel& m) {
    const double gu = uav_gain_toward(uav, u, w, gbs_height);
    if (gu == 0.0) return 0.0;
    const auto g = link_geometry(u, w, gbs_height);
    return gu * gbs(g.elevation_deg) * m.gain(g, state);
}

struct LinkRow {
    int id = 0;
    double c_los = 0.0;
    double c_nlos = 0.0;
    double p_los = 0.0;
    int band = 0;
};

// Rows sorted by c_los descending, ties by ascending id. Rows with zero gain
// (GBS outside the UAV mainlobe) stay at the tail.
struct LinkTable {
    UavPosition uav;
    std::vector<LinkRow> rows;

    const LinkRow& row(int id) const {
        auto it = std::find_if(rows.begin(), rows.end(), [id](const LinkRow& r) { return r.id == id; });
        if (it == rows.end()) throw std::out_of_range("no link row for GBS " + std::to_string(id));
        return *it;
    }
};

inline void sort_link_rows(std::vector<LinkRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const LinkRow& a, const LinkRow& b) {
        if (a.c_los != b.c_los) return a.c_los > b.c_los;
        return a.id < b.id;
    });
}

inline LinkTable build_link_table(const UavPosition& u, const NetworkLayout& layout, const GbsPattern& gbs,
                                  const UavAntenna& uav, const ChannelModel& m) {
    if (layout.sites.empty()) throw std::invalid_argument("layout has no sites");
    require_above_gbs(u, layout.gbs_height);
    LinkTable t;
    t.uav = u;
    t.rows.reserve(layout.sites.size());
    for (const auto& s : layout.sites) {
        const auto g = link_geometry(u, s, layout.gbs_height);
        const double p = m.los_probability(g);
        const double gu = uav_gain_toward(uav, u, s, layout.gbs_height);
        LinkRow r{s.id, 0.0, 0.0, p, s.band};
        if (gu > 0.0) {
            const double common = gu * gbs(g.elevation_deg);
            r.c_los = common * m.los_gain(g);
            r.c_nlos = common * m.nlos_gain(g);
        }
        t.rows.push_back(r);
    }
    sort_link_rows(t.rows);
    return t;
}

} // namespace uavcov
