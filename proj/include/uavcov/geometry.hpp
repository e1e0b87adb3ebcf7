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
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uavcov/errors.hpp"
#include "uavcov/units.hpp"

namespace uavcov {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct GbsSite {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    int band = 0;
};

struct UavPosition {
    double x = 0.0;
    double y = 0.0;
    double altitude = 0.0;
};

// Hexagonal (or explicitly listed) set of ground base stations. Site 0 is the
// reference GBS at the origin; its first-tier neighbour sits on the +x axis.
struct NetworkLayout {
    double inter_cell_distance = 0.0;
    double network_radius = 0.0;
    double gbs_height = 0.0;
    int reuse_factor = 1;
    std::vector<GbsSite> sites;

    const GbsSite& site(int id) const {
        auto it = std::find_if(sites.begin(), sites.end(), [id](const GbsSite& s) { return s.id == id; });
        if (it == sites.end()) {
            throw std::out_of_range("no GBS with id " + std::to_string(id));
        }
        return *it;
    }
};

namespace detail {

// Axial lattice coordinates (a, b) map to D * (a + b/2, b * sqrt(3)/2).
struct Axial {
    int a = 0;
    int b = 0;
};

inline Point2 axial_to_xy(Axial c, double spacing) {
    return {spacing * (c.a + 0.5 * c.b), spacing * (std::numbers::sqrt3 / 2.0) * c.b};
}

// Generator (i, j) of the co-channel sublattice for each supported reuse
// factor F = i^2 + i*j + j^2.
inline Axial reuse_generator(int reuse_factor) {
    switch (reuse_factor) {
        case 1: return {1, 0};
        case 3: return {1, 1};
        case 4: return {2, 0};
        case 7: return {2, 1};
        default:
            throw ConfigError("reuse factor " + std::to_string(reuse_factor) +
                              " is not supported; allowed values are 1, 3, 4, 7");
    }
}

// Coset key of (a, b) modulo the sublattice spanned by g and its 60-degree
// rotation (-j, i + j).
inline std::pair<int, int> coset_key(Axial c, Axial g, int f) {
    auto mod = [f](long v) { return static_cast<int>(((v % f) + f) % f); };
    return {mod(static_cast<long>(g.a + g.b) * c.a + static_cast<long>(g.b) * c.b),
            mod(-static_cast<long>(g.b) * c.a + static_cast<long>(g.a) * c.b)};
}

inline int band_of(Axial c, int reuse_factor) {
    const Axial g = reuse_generator(reuse_factor);
    // Enumerate coset keys once over a box that is guaranteed to hit every class.
    std::set<std::pair<int, int>> keys;
    for (int a = -reuse_factor; a <= reuse_factor; ++a) {
        for (int b = -reuse_factor; b <= reuse_factor; ++b) {
            keys.insert(coset_key({a, b}, g, reuse_factor));
        }
    }
    const auto key = coset_key(c, g, reuse_factor);
    return static_cast<int>(std::distance(keys.begin(), keys.find(key)));
}

inline double polar_angle(Point2 p) {
    double t = std::atan2(p.y, p.x);
    if (t < 0.0) t += 2.0 * std::numbers::pi;
    return t;
}

} // namespace detail

inline NetworkLayout build_hex_layout(double inter_cell_distance, double network_radius, double gbs_height,
                                      int reuse_factor) {
    if (!(inter_cell_distance > 0.0)) {
        throw std::invalid_argument("inter-cell distance must be positive");
    }
    if (!(network_radius >= 0.0)) {
        throw std::invalid_argument("network radius must be non-negative");
    }
    detail::reuse_generator(reuse_factor);

    // |(a + b/2, b*sqrt3/2)| >= |b| * sqrt3/2 and >= |a| * sqrt3/2 on the hex lattice.
    const int span = static_cast<int>(std::ceil(network_radius / inter_cell_distance * 2.0 / std::numbers::sqrt3)) + 1;
    const double limit = network_radius * (1.0 + 1e-12) + 1e-9;

    struct Candidate {
        detail::Axial axial;
        Point2 xy;
        double radius;
        double angle;
    };
    std::vector<Candidate> found;
    for (int a = -span; a <= span; ++a) {
        for (int b = -span; b <= span; ++b) {
            const Point2 p = detail::axial_to_xy({a, b}, inter_cell_distance);
            const double r = std::hypot(p.x, p.y);
            if (r <= limit) {
                found.push_back({{a, b}, p, r, detail::polar_angle(p)});
            }
        }
    }
    // Order by ring, then counter-clockwise from +x. Ring radii are compared on
    // the integer norm a^2 + ab + b^2 so that rounding never reorders sites.
    std::sort(found.begin(), found.end(), [](const Candidate& l, const Candidate& r) {
        const long nl = static_cast<long>(l.axial.a) * l.axial.a + static_cast<long>(l.axial.a) * l.axial.b +
                        static_cast<long>(l.axial.b) * l.axial.b;
        const long nr = static_cast<long>(r.axial.a) * r.axial.a + static_cast<long>(r.axial.a) * r.axial.b +
                        static_cast<long>(r.axial.b) * r.axial.b;
        if (nl != nr) return nl < nr;
        return l.angle < r.angle;
    });

    NetworkLayout layout;
    layout.inter_cell_distance = inter_cell_distance;
    layout.network_radius = network_radius;
    layout.gbs_height = gbs_height;
    layout.reuse_factor = reuse_factor;
    layout.sites.reserve(found.size());
    for (std::size_t k = 0; k < found.size(); ++k) {
        const auto& c = found[k];
        // Snap to exact zeros so the origin and on-axis sites carry no rounding residue.
        const double x = std::abs(c.xy.x) < 1e-9 ? 0.0 : c.xy.x;
        const double y = std::abs(c.xy.y) < 1e-9 ? 0.0 : c.xy.y;
        layout.sites.push_back({static_cast<int>(k), x, y, detail::band_of(c.axial, reuse_factor)});
    }
    return layout;
}

// Layout from an explicit site list (e.g. reloaded from a layout CSV). Bands
// must lie in [0, reuse_factor) and ids must be unique.
inline NetworkLayout make_explicit_layout(std::vector<GbsSite> sites, double inter_cell_distance, double gbs_height,
                                          int reuse_factor) {
    if (sites.empty()) {
        throw ConfigError("explicit layout has no sites");
    }
    if (reuse_factor < 1) {
        throw ConfigError("reuse factor must be >= 1");
    }
    std::set<int> ids;
    double radius = 0.0;
    for (const auto& s : sites) {
        if (!ids.insert(s.id).second) {
            throw ConfigError("duplicate GBS id " + std::to_string(s.id));
        }
        if (s.band < 0 || s.band >= reuse_factor) {
            throw ConfigError("GBS " + std::to_string(s.id) + " has band " + std::to_string(s.band) +
                              " outside [0, " + std::to_string(reuse_factor) + ")");
        }
        radius = std::max(radius, std::hypot(s.x, s.y));
    }
    NetworkLayout layout;
    layout.inter_cell_distance = inter_cell_distance;
    layout.network_radius = radius;
    layout.gbs_height = gbs_height;
    layout.reuse_factor = reuse_factor;
    layout.sites = std::move(sites);
    return layout;
}

inline std::vector<int> co_channel_set(const NetworkLayout& layout, int band) {
    if (band < 0 || band >= layout.reuse_factor) {
        throw std::out_of_range("band " + std::to_string(band) + " outside [0, " +
                                std::to_string(layout.reuse_factor) + ")");
    }
    std::vector<int> ids;
    for (const auto& s : layout.sites) {
        if (s.band == band) ids.push_back(s.id);
    }
    return ids;
}

inline double horizontal_distance(const UavPosition& u, const GbsSite& w) {
    return std::hypot(u.x - w.x, u.y - w.y);
}

inline double link_distance(const UavPosition& u, const GbsSite& w, double gbs_height) {
    return std::hypot(horizontal_distance(u, w), u.altitude - gbs_height);
}

inline void require_above_gbs(const UavPosition& u, double gbs_height) {
    if (!(u.altitude > gbs_height)) {
        throw std::domain_error("UAV altitude " + std::to_string(u.altitude) + " m must exceed the GBS height " +
                                std::to_string(gbs_height) + " m");
    }
}

// Elevation of the UAV as seen from the GBS antenna, in degrees, (0, 90].
inline double elevation_angle(const UavPosition& u, const GbsSite& w, double gbs_height) {
    require_above_gbs(u, gbs_height);
    const double dh = u.altitude - gbs_height;
    const double ratio = std::min(1.0, dh / link_distance(u, w, gbs_height));
    return rad_to_deg(std::asin(ratio));
}

// Cell that owns a horizontal point: nearest site, ties to the lower id.
inline int owning_cell(const NetworkLayout& layout, Point2 p) {
    int best = -1;
    double best_d = 0.0;
    const double tol = 1e-9 * std::max(1.0, layout.inter_cell_distance);
    for (const auto& s : layout.sites) {
        const double d = std::hypot(p.x - s.x, p.y - s.y);
        if (best < 0 || d < best_d - tol || (std::abs(d - best_d) <= tol && s.id < best)) {
            best = s.id;
            best_d = d;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Sampling regions

enum class RegionKind { kTriangle, kHexagon, kPolygon };

struct SamplingRegion {
    RegionKind kind = RegionKind::kTriangle;
    int resolution = 8;
    std::vector<Point2> polygon; // only for kPolygon
};

// Vertices of the reference cell: circumradius D / sqrt(3), corners at
// 30 + 60k degrees so that the edge facing the +x neighbour is vertical.
inline std::array<Point2, 6> reference_hexagon(double inter_cell_distance) {
    std::array<Point2, 6> v{};
    const double r = inter_cell_distance / std::numbers::sqrt3;
    for (int k = 0; k < 6; ++k) {
        const double t = deg_to_rad(-30.0 + 60.0 * k);
        v[static_cast<std::size_t>(k)] = {r * std::cos(t), r * std::sin(t)};
    }
    return v;
}

// One sixth of the reference cell: the origin plus the two corners of the
// edge facing the +x neighbour.
inline std::array<Point2, 3> reference_triangle(double inter_cell_distance) {
    const auto h = reference_hexagon(inter_cell_distance);
    return {Point2{0.0, 0.0}, h[0], h[1]};
}

namespace detail {

inline double cross(Point2 o, Point2 a, Point2 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline double polygon_area(const std::vector<Point2>& poly) {
    double s = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % poly.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * s;
}

// Centroids of the n^2 congruent sub-triangles of (a, b, c).
inline void triangle_grid(Point2 a, Point2 b, Point2 c, int n, std::vector<Point2>& out) {
    auto at = [&](double i, double j) {
        // Barycentric lattice point a + (i/n)(b - a) + (j/n)(c - a).
        return Point2{a.x + (i * (b.x - a.x) + j * (c.x - a.x)) / n, a.y + (i * (b.y - a.y) + j * (c.y - a.y)) / n};
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; i + j < n; ++j) {
            const Point2 p0 = at(i, j), p1 = at(i + 1, j), p2 = at(i, j + 1);
            out.push_back({(p0.x + p1.x + p2.x) / 3.0, (p0.y + p1.y + p2.y) / 3.0});
            if (i + j + 2 <= n) {
                const Point2 p3 = at(i + 1, j + 1);
                out.push_back({(p1.x + p2.x + p3.x) / 3.0, (p1.y + p2.y + p3.y) / 3.0});
            }
        }
    }
}

} // namespace detail

// Strict containment; points on an edge (within a relative tolerance) are
// outside. Works for simple polygons of either orientation.
inline bool contains_strictly(const std::vector<Point2>& poly, Point2 p) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    double scale = 0.0;
    for (const auto& v : poly) scale = std::max({scale, std::abs(v.x), std::abs(v.y)});
    const double tol = 1e-12 * std::max(1.0, scale) * std::max(1.0, scale);
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2 a = poly[j], b = poly[i];
        const double cr = detail::cross(a, b, p);
        const bool within_box = p.x >= std::min(a.x, b.x) - 1e-12 * scale && p.x <= std::max(a.x, b.x) + 1e-12 * scale &&
                                p.y >= std::min(a.y, b.y) - 1e-12 * scale && p.y <= std::max(a.y, b.y) + 1e-12 * scale;
        if (std::abs(cr) <= tol && within_box) return false;
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xi = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xi) inside = !inside;
        }
    }
    return inside;
}

inline std::vector<Point2> region_polygon(const SamplingRegion& region, const NetworkLayout& layout) {
    switch (region.kind) {
        case RegionKind::kTriangle: {
            const auto t = reference_triangle(layout.inter_cell_distance);
            return {t.begin(), t.end()};
        }
        case RegionKind::kHexagon: {
            const auto h = reference_hexagon(layout.inter_cell_distance);
            return {h.begin(), h.end()};
        }
        case RegionKind::kPolygon: return region.polygon;
    }
    return {};
}

inline void validate_region(const SamplingRegion& region, const NetworkLayout& layout) {
    if (region.resolution < 1) {
        throw std::invalid_argument("sampling resolution must be >= 1");
    }
    if (region.kind != RegionKind::kPolygon && !(layout.inter_cell_distance > 0.0)) {
        throw std::invalid_argument("reference-cell regions need a positive inter-cell distance");
    }
    const auto poly = region_polygon(region, layout);
    if (poly.size() < 3 || std::abs(detail::polygon_area(poly)) < 1e-12) {
        throw std::invalid_argument("sampling region is degenerate");
    }
}

// Deterministic equal-weight grid strictly inside the region.
//   triangle: centroids of the n^2 sub-triangles of the reference triangle
//   hexagon:  the same grid on all six 60-degree rotations of that triangle
//   polygon:  centres of an n x n bounding-box grid that fall inside
inline std::vector<Point2> sample_region(const SamplingRegion& region, const NetworkLayout& layout) {
    validate_region(region, layout);
    std::vector<Point2> pts;
    const int n = region.resolution;
    switch (region.kind) {
        case RegionKind::kTriangle: {
            const auto t = reference_triangle(layout.inter_cell_distance);
            detail::triangle_grid(t[0], t[1], t[2], n, pts);
            break;
        }
        case RegionKind::kHexagon: {
            const auto h = reference_hexagon(layout.inter_cell_distance);
            for (std::size_t k = 0; k < 6; ++k) {
                detail::triangle_grid({0.0, 0.0}, h[k], h[(k + 1) % 6], n, pts);
            }
            break;
        }
        case RegionKind::kPolygon: {
            double xmin = region.polygon[0].x, xmax = xmin, ymin = region.polygon[0].y, ymax = ymin;
            for (const auto& v : region.polygon) {
                xmin = std::min(xmin, v.x);
                xmax = std::max(xmax, v.x);
                ymin = std::min(ymin, v.y);
                ymax = std::max(ymax, v.y);
            }
            for (int j = 0; j < n; ++j) {
                for (int i = 0; i < n; ++i) {
                    const Point2 p{xmin + (i + 0.5) * (xmax - xmin) / n, ymin + (j + 0.5) * (ymax - ymin) / n};
                    if (contains_strictly(region.polygon, p)) pts.push_back(p);
                }
            }
            if (pts.empty()) {
                throw std::invalid_argument("polygon grid at this resolution has no interior points");
            }
            break;
        }
    }
    return pts;
}

// Uniform random points in the region, reproducible for a given seed.
inline std::vector<Point2> sample_region_random(const SamplingRegion& region, const NetworkLayout& layout,
                                                std::size_t count, std::uint64_t seed) {
    validate_region(region, layout);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto poly = region_polygon(region, layout);
    std::vector<Point2> pts;
    pts.reserve(count);
    auto in_triangle = [&](Point2 a, Point2 b, Point2 c) {
        double r1 = unit(rng), r2 = unit(rng);
        if (r1 + r2 > 1.0) {
            r1 = 1.0 - r1;
            r2 = 1.0 - r2;
        }
        return Point2{a.x + r1 * (b.x - a.x) + r2 * (c.x - a.x), a.y + r1 * (b.y - a.y) + r2 * (c.y - a.y)};
    };
    if (region.kind == RegionKind::kTriangle) {
        for (std::size_t k = 0; k < count; ++k) pts.push_back(in_triangle(poly[0], poly[1], poly[2]));
    } else if (region.kind == RegionKind::kHexagon) {
        std::uniform_int_distribution<int> wedge(0, 5);
        for (std::size_t k = 0; k < count; ++k) {
            const auto w = static_cast<std::size_t>(wedge(rng));
            pts.push_back(in_triangle({0.0, 0.0}, poly[w], poly[(w + 1) % 6]));
        }
    } else {
        double xmin = poly[0].x, xmax = xmin, ymin = poly[0].y, ymax = ymin;
        for (const auto& v : poly) {
            xmin = std::min(xmin, v.x);
            xmax = std::max(xmax, v.x);
            ymin = std::min(ymin, v.y);
            ymax = std::max(ymax, v.y);
        }
        while (pts.size() < count) {
            const Point2 p{xmin + unit(rng) * (xmax - xmin), ymin + unit(rng) * (ymax - ymin)};
            if (contains_strictly(poly, p)) pts.push_back(p);
        }
    }
    return pts;
}

} // namespace uavcov
