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
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "uavcov/antenna.hpp"
#include "uavcov/channel.hpp"
#include "uavcov/distribution.hpp"
#include "uavcov/geometry.hpp"
#include "uavcov/gpm.hpp"

namespace uavcov {

// ---------------------------------------------------------------------------
// Association (uplink)

struct AssociationEvent {
    int serving_id = -1;               // -1: no GBS inside the UAV mainlobe
    LinkState serving_state = LinkState::kLos;
    double gain = 0.0;                 // C of the serving link
    double probability = 0.0;
    std::vector<int> forced_nlos_ids;  // GBSs conditioned to be NLoS
};

// What to do with the mass left when the running NLoS product drops below eps.
enum class TruncationMode {
    kRenormalize, // give it to the terminal (NLoS-max) event
    kDrop,        // drop it and rescale the remaining events
};

inline constexpr double kDefaultTruncation = 1e-6;

// Walks the link rows by descending LoS gain. Event m is "rows 1..m-1 NLoS,
// row m LoS" and serves C_L of row m. The walk ends at the first row whose
// LoS gain is below the largest NLoS gain (or after all rows, or once the
// prefix product is below eps); the rest is the terminal event served by the
// largest NLoS gain.
inline std::vector<AssociationEvent> association_pmf(const LinkTable& t, double eps = kDefaultTruncation,
                                                     TruncationMode mode = TruncationMode::kRenormalize) {
    if (t.rows.empty()) throw std::invalid_argument("link table is empty");
    if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("truncation threshold must lie in [0, 1)");
    auto rows = t.rows;
    sort_link_rows(rows);

    double nlos_max = 0.0;
    int nlos_arg = -1;
    for (const auto& r : rows) {
        if (r.c_nlos > nlos_max || (r.c_nlos == nlos_max && r.c_nlos > 0.0 && r.id < nlos_arg)) {
            nlos_max = r.c_nlos;
            nlos_arg = r.id;
        }
    }
    if (rows.front().c_los == 0.0) return {AssociationEvent{-1, LinkState::kNlos, 0.0, 1.0, {}}};

    std::vector<AssociationEvent> events;
    std::vector<int> prefix_ids;
    double prefix = 1.0;
    bool terminal = true;
    bool truncated = false;
    for (const auto& r : rows) {
        if (r.c_los < nlos_max) break;
        const double p = r.p_los * prefix;
        if (p > 0.0) events.push_back({r.id, LinkState::kLos, r.c_los, p, prefix_ids});
        prefix_ids.push_back(r.id);
        prefix *= 1.0 - r.p_los;
        if (prefix == 0.0) {
            terminal = false;
            break;
        }
        if (prefix < eps) {
            truncated = true;
            break;
        }
    }
    if (truncated && mode == TruncationMode::kDrop) {
        const double kept = 1.0 - prefix;
        for (auto& e : events) e.probability /= kept;
        return events;
    }
    if (terminal) {
        AssociationEvent e{nlos_arg, LinkState::kNlos, nlos_max, prefix, {}};
        for (const auto& r : rows) {
            if (r.c_los >= nlos_max) e.forced_nlos_ids.push_back(r.id);
        }
        events.push_back(std::move(e));
    }
    return events;
}

struct UplinkSnrPmf {
    SteppedCdf cdf;     // over linear SNR
    double beta0 = 0.0; // P_u / sigma^2

    std::vector<MassPoint> masses() const { return cdf.masses(); }
};

inline UplinkSnrPmf uplink_snr_pmf(const LinkTable& t, double beta0, double eps = kDefaultTruncation,
                                   TruncationMode mode = TruncationMode::kRenormalize) {
    if (!(beta0 > 0.0)) throw std::invalid_argument("beta0 must be positive");
    std::vector<MassPoint> pts;
    for (const auto& e : association_pmf(t, eps, mode)) pts.push_back({beta0 * e.gain, e.probability});
    return {SteppedCdf::from_masses(std::move(pts)), beta0};
}

// P{gamma < eta}
inline double uplink_outage(const UplinkSnrPmf& pmf, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("uplink threshold must be positive");
    return std::clamp(pmf.cdf.below(eta), 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Downlink

// Probability that a co-channel GBS is active on the UAV's resource block.
struct DownlinkLoading {
    double omega = 0.5;
    std::map<int, double> per_gbs;

    double at(int id) const {
        auto it = per_gbs.find(id);
        return it == per_gbs.end() ? omega : it->second;
    }
    void validate() const {
        auto check = [](double w) {
            if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("loading factor must lie in [0, 1]");
        };
        check(omega);
        for (const auto& [id, w] : per_gbs) check(w);
    }
};

// Interference law given the association event. Interferers in the event's
// forced-NLoS set are {0, C_NL}; the others {0, C_NL, C_L}. Interferers
// with zero gain are left out.
inline GpmSpec conditional_interference_spec(const AssociationEvent& event, const LinkTable& t,
                                             const std::vector<int>& co_channel_ids,
                                             const DownlinkLoading& loading) {
    GpmSpec spec;
    for (int id : co_channel_ids) {
        if (id == event.serving_id) continue;
        const auto& r = t.row(id);
        if (r.c_los == 0.0 && r.c_nlos == 0.0) continue;
        const double w = loading.at(id);
        const bool forced =
            std::find(event.forced_nlos_ids.begin(), event.forced_nlos_ids.end(), id) != event.forced_nlos_ids.end();
        std::vector<MassPoint> m{{0.0, 1.0 - w}};
        if (forced) {
            m.push_back({r.c_nlos, w});
        } else {
            m.push_back({r.c_nlos, w * (1.0 - r.p_los)});
            m.push_back({r.c_los, w * r.p_los});
        }
        spec.summands.push_back(DiscreteSummand::from_masses(std::move(m)));
    }
    if (spec.summands.empty()) spec.summands.push_back(DiscreteSummand({0.0}, {1.0}));
    return spec;
}

// Other GBSs in the serving GBS's band.
inline std::vector<int> co_channel_interferers(const LinkTable& t, int serving_id) {
    std::vector<int> ids;
    if (serving_id < 0) return ids;
    const int band = t.row(serving_id).band;
    for (const auto& r : t.rows) {
        if (r.band == band && r.id != serving_id) ids.push_back(r.id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

struct DownlinkSnrCdf {
    SteppedCdf cdf;      // over linear SNR
    double alpha0 = 0.0; // sigma^2 / P_b

    // (y, F(y)) on a log grid over [eta/1e3, eta*1e3] plus eta itself.
    std::vector<MassPoint> grid(double eta, std::size_t points = 121) const {
        std::vector<MassPoint> out;
        const double lo = std::log10(eta) - 3.0, hi = std::log10(eta) + 3.0;
        for (std::size_t k = 0; k < points; ++k) {
            const double y = std::pow(10.0, lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1));
            out.push_back({y, cdf(y)});
        }
        out.push_back({eta, cdf(eta)});
        std::sort(out.begin(), out.end(), [](const MassPoint& a, const MassPoint& b) { return a.value < b.value; });
        return out;
    }
};

struct DownlinkOptions {
    double eps = kDefaultTruncation;
    double c0 = kDefaultLatticeScale;
    TruncationMode mode = TruncationMode::kRenormalize;
};

namespace detail {

template <class CoChannelFn>
DownlinkSnrCdf downlink_cdf_impl(const LinkTable& t, CoChannelFn&& co_channel, const DownlinkLoading& loading,
                                 double alpha0, const DownlinkOptions& opt) {
    if (!(alpha0 > 0.0)) throw std::invalid_argument("alpha0 must be positive");
    loading.validate();
    std::vector<MassPoint> atoms;
    for (const auto& e : association_pmf(t, opt.eps, opt.mode)) {
        if (e.gain == 0.0) {
            atoms.push_back({0.0, e.probability});
            continue;
        }
        const auto spec = conditional_interference_spec(e, t, co_channel(e), loading);
        const auto la = la_cdf(spec, opt.c0);
        const auto& lat = la.lattice;
        for (std::size_t n = 0; n < lat.pmf.size(); ++n) {
            if (lat.pmf[n] > 0.0) atoms.push_back({e.gain / (alpha0 + lat.value(n)), e.probability * lat.pmf[n]});
        }
    }
    return {SteppedCdf::from_masses(std::move(atoms)), alpha0};
}

} // namespace detail

// Co-channel interferers of each event are the other GBSs in the serving
// GBS's band.
inline DownlinkSnrCdf downlink_snr_cdf(const LinkTable& t, const DownlinkLoading& loading, double alpha0,
                                       const DownlinkOptions& opt = {}) {
    return detail::downlink_cdf_impl(
        t, [&t](const AssociationEvent& e) { return co_channel_interferers(t, e.serving_id); }, loading, alpha0, opt);
}

// Fixed interferer set (the serving GBS is skipped per event).
inline DownlinkSnrCdf downlink_snr_cdf(const LinkTable& t, const std::vector<int>& co_channel_ids,
                                       const DownlinkLoading& loading, double alpha0,
                                       const DownlinkOptions& opt = {}) {
    return detail::downlink_cdf_impl(
        t, [&co_channel_ids](const AssociationEvent&) { return co_channel_ids; }, loading, alpha0, opt);
}

// P{gamma < eta}
inline double downlink_outage(const DownlinkSnrCdf& cdf, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("downlink threshold must be positive");
    return std::clamp(cdf.cdf.below(eta), 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Spatial and altitude aggregation

enum class Link { kUplink, kDownlink };

inline const char* link_name(Link l) { return l == Link::kUplink ? "uplink" : "downlink"; }

// Everything needed to turn a UAV position into an outage probability.
struct Scenario {
    NetworkLayout layout;
    UlaPattern gbs_antenna;
    UavAntenna uav_antenna;
    std::shared_ptr<const ChannelModel> channel;
    double beta0 = 0.0;  // P_u / sigma^2
    double alpha0 = 0.0; // sigma^2 / P_b
    DownlinkLoading loading;
    DownlinkOptions algorithm;

    LinkTable link_table(const UavPosition& u) const {
        if (!channel) throw std::invalid_argument("scenario has no channel model");
        return build_link_table(u, layout, make_gbs_pattern(gbs_antenna), uav_antenna, *channel);
    }
};

// The SNR distribution at one position, as a cdf over linear SNR.
inline SteppedCdf snr_cdf(const Scenario& s, const UavPosition& u, Link link) {
    const auto t = s.link_table(u);
    if (link == Link::kUplink) return uplink_snr_pmf(t, s.beta0, s.algorithm.eps, s.algorithm.mode).cdf;
    return downlink_snr_cdf(t, s.loading, s.alpha0, s.algorithm).cdf;
}

inline double outage_probability(const Scenario& s, const UavPosition& u, Link link, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("threshold must be positive");
    return std::clamp(snr_cdf(s, u, link).below(eta), 0.0, 1.0);
}

// Evaluates fn(i) for i in [0, n) on `workers` threads (0: TBB default).
// Results land at their index, so the output does not depend on scheduling.
template <class Fn>
auto parallel_indexed(std::size_t n, int workers, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
    std::vector<decltype(fn(std::size_t{}))> out(n);
    tbb::task_arena arena(workers > 0 ? workers : tbb::task_arena::automatic);
    arena.execute([&] {
        tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n), [&](const tbb::blocked_range<std::size_t>& r) {
            for (std::size_t i = r.begin(); i != r.end(); ++i) out[i] = fn(i);
        });
    });
    return out;
}

struct CoverageResult {
    Link link = Link::kUplink;
    double altitude = 0.0;
    double threshold = 0.0;          // linear
    std::vector<Point2> points;
    std::vector<double> non_outage;  // per point
    double coverage = 0.0;           // mean of non_outage
};

inline double mean_of(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("empty sampling grid");
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

// Per-point non-outage probability on the given points at one altitude.
inline CoverageResult outage_map(const Scenario& s, const std::vector<Point2>& points, double altitude, Link link,
                                 double eta, int workers = 0) {
    require_above_gbs({0.0, 0.0, altitude}, s.layout.gbs_height);
    CoverageResult r{link, altitude, eta, points, {}, 0.0};
    r.non_outage = parallel_indexed(points.size(), workers, [&](std::size_t i) {
        return 1.0 - outage_probability(s, {points[i].x, points[i].y, altitude}, link, eta);
    });
    r.coverage = mean_of(r.non_outage);
    return r;
}

inline CoverageResult coverage_at_altitude(const Scenario& s, const SamplingRegion& region, double altitude, Link link,
                                           double eta, int workers = 0) {
    return outage_map(s, sample_region(region, s.layout), altitude, link, eta, workers);
}

// Coverage for several thresholds at once (one SNR distribution per point).
inline std::vector<double> coverage_for_thresholds(const Scenario& s, const std::vector<Point2>& points,
                                                   double altitude, Link link, const std::vector<double>& etas,
                                                   int workers = 0) {
    for (double eta : etas) {
        if (!(eta > 0.0)) throw std::invalid_argument("threshold must be positive");
    }
    require_above_gbs({0.0, 0.0, altitude}, s.layout.gbs_height);
    const auto per_point = parallel_indexed(points.size(), workers, [&](std::size_t i) {
        const auto cdf = snr_cdf(s, {points[i].x, points[i].y, altitude}, link);
        std::vector<double> v(etas.size());
        for (std::size_t k = 0; k < etas.size(); ++k) v[k] = 1.0 - std::clamp(cdf.below(etas[k]), 0.0, 1.0);
        return v;
    });
    if (points.empty()) throw std::invalid_argument("empty sampling grid");
    std::vector<double> cov(etas.size(), 0.0);
    for (const auto& v : per_point) {
        for (std::size_t k = 0; k < v.size(); ++k) cov[k] += v[k];
    }
    for (auto& c : cov) c /= static_cast<double>(points.size());
    return cov;
}

// Trapezoid integral of y over x divided by the x range. A single sample (or
// a zero range) returns that sample.
inline double normalized_trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.empty() || x.size() != y.size()) throw std::invalid_argument("trapezoid needs matching non-empty samples");
    const double span = x.back() - x.front();
    if (x.size() == 1 || span == 0.0) return y.front();
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return acc / span;
}

inline std::vector<double> altitude_nodes(double h_min, double h_max, std::size_t points) {
    if (!(h_max >= h_min)) throw std::invalid_argument("altitude range needs H_max >= H_min");
    if (h_max == h_min) return {h_min};
    if (points < 2) throw std::invalid_argument("altitude quadrature needs at least 2 points");
    std::vector<double> h(points);
    for (std::size_t k = 0; k < points; ++k) {
        h[k] = h_min + (h_max - h_min) * static_cast<double>(k) / static_cast<double>(points - 1);
    }
    h.back() = h_max;
    return h;
}

struct AltitudeCoverage {
    std::vector<double> altitudes;
    std::vector<double> coverage;
    double average = 0.0; // normalized trapezoid over [H_min, H_max]
};

// Average of f(H) over [H_min, H_max] with a uniform trapezoid rule.
template <class Fn>
AltitudeCoverage average_over_altitudes(Fn&& f, double h_min, double h_max, std::size_t points) {
    AltitudeCoverage r;
    r.altitudes = altitude_nodes(h_min, h_max, points);
    for (double h : r.altitudes) r.coverage.push_back(f(h));
    r.average = normalized_trapezoid(r.altitudes, r.coverage);
    return r;
}

inline AltitudeCoverage coverage_over_altitudes(const Scenario& s, const SamplingRegion& region, Link link, double eta,
                                                double h_min, double h_max, std::size_t points, int workers = 0) {
    if (!(h_min > s.layout.gbs_height)) throw std::domain_error("H_min must exceed the GBS height");
    const auto grid = sample_region(region, s.layout);
    return average_over_altitudes(
        [&](double h) { return outage_map(s, grid, h, link, eta, workers).coverage; }, h_min, h_max, points);
}

} // namespace uavcov
