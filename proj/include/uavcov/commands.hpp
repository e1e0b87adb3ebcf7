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

// Subcommand implementations behind the uavcov executable. Each writes its
// CSV files under `out_dir` and returns the process exit status.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uavcov/config.hpp"
#include "uavcov/coverage.hpp"
#include "uavcov/csv.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/gpm.hpp"
#include "uavcov/oracle.hpp"

namespace uavcov::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitConfigError = 2;

struct Options {
    std::string out_dir = ".";
    int workers = 0;
    std::optional<std::uint64_t> seed;
    std::optional<double> altitude;
    std::string mode;           // validate
    std::string method = "la";  // interference-cdf
    std::ostream* log = &std::cout;
};

namespace detail {

inline std::string out_path(const Options& o, const std::string& name) {
    std::filesystem::create_directories(o.out_dir);
    return (std::filesystem::path(o.out_dir) / name).string();
}

inline std::string omega_tag(double w) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", w);
    return buf;
}

// Rows ordered by (x, y) so the file does not depend on grid construction.
inline void write_raster(const std::string& path, const CoverageResult& r, const std::string& hash) {
    std::vector<std::size_t> order(r.points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (r.points[a].x != r.points[b].x) return r.points[a].x < r.points[b].x;
        return r.points[a].y < r.points[b].y;
    });
    csv::Writer w(path, hash, {"x_m", "y_m", "non_outage_prob"});
    for (std::size_t i : order) w.row({r.points[i].x, r.points[i].y, r.non_outage[i]});
    w.close();
}

inline void write_cdf(const std::string& path, const SteppedCdf& cdf, const std::string& hash) {
    csv::Writer w(path, hash, {"x", "F"});
    const auto& x = cdf.jump_points();
    const auto& f = cdf.cumulative();
    for (std::size_t i = 0; i < x.size(); ++i) w.row({x[i], f[i]});
    w.close();
}

} // namespace detail

// Aggregate downlink interference at the probe position: every other GBS in
// the serving GBS's band, none of them conditioned on the association.
struct ProbeInterference {
    LinkTable table;
    int serving_id = -1;
    std::vector<int> interferers;

    GpmSpec spec(double omega) const {
        AssociationEvent e;
        e.serving_id = serving_id;
        DownlinkLoading load;
        load.omega = omega;
        return conditional_interference_spec(e, table, interferers, load);
    }
};

inline ProbeInterference probe_interference(const ScenarioConfig& c, const Scenario& s) {
    ProbeInterference p;
    p.table = s.link_table({c.probe.x_m, c.probe.y_m, c.probe.altitude_m});
    p.serving_id = c.probe.serving_gbs.value_or(p.table.rows.front().id);
    (void)s.layout.site(p.serving_id);
    p.interferers = co_channel_interferers(p.table, p.serving_id);
    return p;
}

inline int cmd_layout(const ScenarioConfig& c, const Options& o) {
    const auto layout = build_layout(c);
    const auto hash = config_hash(c);
    csv::write_layout(detail::out_path(o, "layout.csv"), layout, hash);

    csv::Writer w(detail::out_path(o, "gbs_pattern.csv"), hash, {"theta_deg", "gain_linear", "gain_dBi"});
    for (const auto& p : pattern_sweep(make_gbs_pattern(c.gbs_antenna), -89.5, 90.0, 0.5)) {
        w.row({p.theta_deg, p.gain_linear, p.gain_dbi});
    }
    w.close();
    *o.log << "layout: " << layout.sites.size() << " GBSs, reuse factor " << layout.reuse_factor << '\n';
    return kExitOk;
}

inline int cmd_map(const ScenarioConfig& c, Link link, const Options& o) {
    const auto s = to_scenario(c);
    const double h = o.altitude.value_or(c.maps.altitude_m);
    const double eta = link == Link::kUplink ? c.thresholds.uplink : c.thresholds.downlink;
    const auto points = sample_region(c.maps.region, s.layout);
    const auto r = outage_map(s, points, h, link, eta, o.workers);
    const std::string name = std::string(link_name(link)) + "_map.csv";
    detail::write_raster(detail::out_path(o, name), r, config_hash(c));
    *o.log << link_name(link) << " map at H_u=" << csv::format_number(h) << " m: " << points.size()
           << " points, coverage " << csv::format_number(r.coverage) << '\n';
    return kExitOk;
}

inline int cmd_coverage_curve(const ScenarioConfig& c, const Options& o) {
    const auto s = to_scenario(c);
    const auto& w = c.sweep;
    const auto grid = sample_region(c.maps.region, s.layout);
    std::vector<double> x, cov;
    if (w.kind == SweepKind::kAltitude) {
        const double eta = w.link == Link::kUplink ? c.thresholds.uplink : c.thresholds.downlink;
        const auto r = average_over_altitudes(
            [&](double h) { return outage_map(s, grid, h, w.link, eta, o.workers).coverage; }, w.altitude_min_m,
            w.altitude_max_m, static_cast<std::size_t>(w.altitude_points));
        x = r.altitudes;
        cov = r.coverage;
        *o.log << link_name(w.link) << " coverage averaged over altitude: " << csv::format_number(r.average) << '\n';
    } else {
        const double h = o.altitude.value_or(w.altitude_m);
        std::vector<double> etas;
        for (int k = 0; k < w.threshold_points; ++k) {
            const double db = w.threshold_points == 1
                                  ? w.threshold_min_db
                                  : w.threshold_min_db + (w.threshold_max_db - w.threshold_min_db) * k /
                                                             (w.threshold_points - 1);
            x.push_back(db);
            etas.push_back(db_to_linear(db));
        }
        cov = coverage_for_thresholds(s, grid, h, w.link, etas, o.workers);
    }
    csv::Writer out(detail::out_path(o, "coverage_curve.csv"), config_hash(c), {"abscissa", "coverage"});
    for (std::size_t i = 0; i < x.size(); ++i) out.row({x[i], cov[i]});
    out.close();
    return kExitOk;
}

inline int cmd_interference_cdf(const ScenarioConfig& c, const Options& o) {
    const auto s = to_scenario(c);
    const auto probe = probe_interference(c, s);
    const auto hash = config_hash(c);
    if (o.method == "mc" && !o.seed) throw ConfigError("--seed is required for the Monte Carlo method");
    for (double omega : c.probe.omegas) {
        const auto spec = probe.spec(omega);
        const auto path = detail::out_path(o, "interference_cdf_" + o.method + "_w" + detail::omega_tag(omega) + ".csv");
        if (o.method == "la") {
            detail::write_cdf(path, la_cdf(spec, c.algorithm.c0).cdf, hash);
        } else if (o.method == "enum") {
            detail::write_cdf(path, enumerate_cdf(spec, c.enumeration_cap), hash);
        } else if (o.method == "mc") {
            detail::write_cdf(path, mc_cdf(spec, c.validate.mc_samples, *o.seed), hash);
        } else if (o.method == "ga") {
            const auto g = gaussian_cdf(spec);
            const double top = spec.min_value() + spec.range();
            csv::Writer w(path, hash, {"x", "F"});
            for (int k = 0; k <= 200; ++k) {
                const double xk = top * k / 200.0;
                w.row({xk, g(xk)});
            }
            w.close();
        } else {
            throw ConfigError("unknown --method '" + o.method + "' (expected la, enum, mc or ga)");
        }
    }
    *o.log << "interference at probe: serving GBS " << probe.serving_id << ", " << probe.interferers.size()
           << " co-channel GBSs\n";
    return kExitOk;
}

namespace detail {

struct Check {
    std::string name;
    std::string metric;
    double value;
    double tolerance;
    bool pass;
};

// Largest difference in mass at any support point of either pmf.
inline double max_mass_error(const SteppedCdf& a, const SteppedCdf& b) {
    std::map<double, double> diff;
    for (const auto& m : a.masses()) diff[m.value] += m.probability;
    for (const auto& m : b.masses()) diff[m.value] -= m.probability;
    double worst = 0.0;
    for (const auto& [v, d] : diff) worst = std::max(worst, std::abs(d));
    return worst;
}

} // namespace detail

inline const std::vector<std::string>& validate_modes() {
    static const std::vector<std::string> m{"la-vs-enum", "la-vs-mc", "ga-vs-enum", "uplink-vs-bruteforce",
                                            "downlink-vs-joint-enum"};
    return m;
}

inline int cmd_validate(const ScenarioConfig& c, const Options& o) {
    const auto& modes = validate_modes();
    if (std::find(modes.begin(), modes.end(), o.mode) == modes.end()) {
        throw ConfigError("unknown validation mode '" + o.mode + "'");
    }
    if (o.mode == "la-vs-mc" && !o.seed) throw ConfigError("--seed is required for la-vs-mc");
    const auto s = to_scenario(c);
    const auto& v = c.validate;
    std::vector<detail::Check> checks;

    if (o.mode == "la-vs-enum" || o.mode == "la-vs-mc" || o.mode == "ga-vs-enum") {
        const auto probe = probe_interference(c, s);
        for (double omega : c.probe.omegas) {
            const auto spec = probe.spec(omega);
            const std::string name = "omega=" + detail::omega_tag(omega);
            const auto la = la_cdf(spec, c.algorithm.c0).cdf;
            if (o.mode == "la-vs-mc") {
                const double d = kolmogorov_distance(la, mc_cdf(spec, v.mc_samples, *o.seed));
                checks.push_back({name, "kolmogorov_la_mc", d, v.mc_kolmogorov_tol, d <= v.mc_kolmogorov_tol});
                continue;
            }
            const auto exact = enumerate_cdf(spec, c.enumeration_cap);
            const double d_la = kolmogorov_distance(la, exact);
            if (o.mode == "la-vs-enum") {
                checks.push_back({name, "kolmogorov_la_enum", d_la, v.kolmogorov_tol, d_la <= v.kolmogorov_tol});
            } else {
                const double d_ga = kolmogorov_distance(gaussian_cdf(spec), exact);
                const bool ordered = std::find(v.ga_ordering_omegas.begin(), v.ga_ordering_omegas.end(), omega) !=
                                     v.ga_ordering_omegas.end();
                checks.push_back({name, "kolmogorov_la_enum", d_la, d_la, true});
                checks.push_back({name, "kolmogorov_ga_enum", d_ga, d_la, !ordered || d_ga > d_la});
            }
        }
    } else {
        const auto t = s.link_table({c.probe.x_m, c.probe.y_m, c.probe.altitude_m});
        if (o.mode == "uplink-vs-bruteforce") {
            const auto pmf = uplink_snr_pmf(t, s.beta0, 0.0).cdf;
            const auto brute = oracle::uplink_bruteforce_pmf(t, s.beta0);
            const double e = detail::max_mass_error(pmf, brute);
            checks.push_back({"links=" + std::to_string(t.rows.size()), "max_pmf_error", e, v.pmf_tol, e <= v.pmf_tol});
        } else {
            auto opt = s.algorithm;
            opt.eps = 0.0;
            const auto cdf = downlink_snr_cdf(t, s.loading, s.alpha0, opt).cdf;
            const auto joint = oracle::downlink_joint_enumeration_cdf(
                t, [&](int id) { return s.loading.at(id); }, s.alpha0);
            const double d = kolmogorov_distance(cdf, joint);
            checks.push_back({"links=" + std::to_string(t.rows.size()), "kolmogorov_downlink_joint", d,
                              v.kolmogorov_tol, d <= v.kolmogorov_tol});
        }
    }

    bool ok = true;
    csv::Writer w(detail::out_path(o, "validate_" + o.mode + ".csv"), config_hash(c),
                  {"case", "metric", "value", "tolerance", "pass"});
    for (const auto& ch : checks) {
        ok = ok && ch.pass;
        w.row({ch.name, ch.metric, ch.value, ch.tolerance, static_cast<long long>(ch.pass ? 1 : 0)});
        *o.log << (ch.pass ? "PASS " : "FAIL ") << o.mode << ' ' << ch.name << ' ' << ch.metric << '='
               << csv::format_number(ch.value) << " tol=" << csv::format_number(ch.tolerance) << '\n';
    }
    w.close();
    return ok ? kExitOk : kExitValidationFailed;
}

} // namespace uavcov::cli
