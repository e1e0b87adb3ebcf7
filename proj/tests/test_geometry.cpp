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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "uavcov/geometry.hpp"

using namespace uavcov;
using Catch::Approx;

namespace {

// Independent count of hex lattice points within a radius, by scanning a box
// of lattice indices.
std::size_t count_lattice_points(double d, double radius) {
    const int n = static_cast<int>(std::ceil(2.0 * radius / d)) + 2;
    std::size_t count = 0;
    for (int i = -n; i <= n; ++i) {
        for (int j = -n; j <= n; ++j) {
            const double x = d * (i + 0.5 * j), y = d * std::sqrt(3.0) / 2.0 * j;
            if (std::hypot(x, y) <= radius * (1.0 + 1e-9)) ++count;
        }
    }
    return count;
}

double min_same_band_distance(const NetworkLayout& l) {
    double best = 1e300;
    for (const auto& a : l.sites) {
        for (const auto& b : l.sites) {
            if (a.id < b.id && a.band == b.band) best = std::min(best, std::hypot(a.x - b.x, a.y - b.y));
        }
    }
    return best;
}

} // namespace

TEST_CASE("hex layout with radius 3D has 37 sites split 13/12/12 over three bands") {
    const auto l = build_hex_layout(500.0, 1500.0, 20.0, 3);
    REQUIRE(l.sites.size() == 37);
    std::map<int, int> per_band;
    for (const auto& s : l.sites) per_band[s.band]++;
    CHECK(per_band.size() == 3);
    CHECK(per_band[l.site(0).band] == 13);
    for (int id = 1; id <= 6; ++id) {
        const auto co = co_channel_set(l, l.site(id).band);
        CHECK(co.size() == 12);
        CHECK(co.size() - 1 == 11);
    }
}

TEST_CASE("reference GBS sits at the origin with its first neighbour on +x") {
    const auto l = build_hex_layout(500.0, 1500.0, 20.0, 3);
    CHECK(l.site(0).x == 0.0);
    CHECK(l.site(0).y == 0.0);
    CHECK(l.site(1).x == Approx(500.0));
    CHECK(l.site(1).y == Approx(0.0).margin(1e-9));
    CHECK(l.site(0).band == 0);
}

TEST_CASE("zero radius gives only the origin") {
    for (int f : {1, 3, 4, 7}) CHECK(build_hex_layout(500.0, 0.0, 20.0, f).sites.size() == 1);
}

TEST_CASE("site count matches a brute-force lattice scan") {
    for (double r : {500.0, 1000.0, 1499.0, 2600.0, 5000.0}) {
        CHECK(build_hex_layout(500.0, r, 20.0, 3).sites.size() == count_lattice_points(500.0, r));
    }
}

TEST_CASE("co-channel reuse distance is D * sqrt(F)") {
    for (int f : {3, 4, 7}) {
        const auto l = build_hex_layout(500.0, 5000.0, 20.0, f);
        CHECK(min_same_band_distance(l) == Approx(500.0 * std::sqrt(static_cast<double>(f))).epsilon(1e-9));
        std::set<int> bands;
        for (const auto& s : l.sites) bands.insert(s.band);
        CHECK(bands.size() == static_cast<std::size_t>(f));
    }
    CHECK(min_same_band_distance(build_hex_layout(500.0, 1500.0, 20.0, 1)) == Approx(500.0));
}

TEST_CASE("unsupported reuse factor is rejected") {
    CHECK_THROWS_AS(build_hex_layout(500.0, 1500.0, 20.0, 2), ConfigError);
    CHECK_THROWS_AS(build_hex_layout(500.0, 1500.0, 20.0, 5), ConfigError);
}

TEST_CASE("site ids are unique and contiguous") {
    const auto l = build_hex_layout(500.0, 5000.0, 20.0, 3);
    for (std::size_t i = 0; i < l.sites.size(); ++i) CHECK(l.sites[i].id == static_cast<int>(i));
    CHECK_THROWS_AS(l.site(100000), std::out_of_range);
}

TEST_CASE("elevation angles") {
    const GbsSite w{0, 0.0, 0.0, 0};
    CHECK(elevation_angle({0.0, 0.0, 120.0}, w, 20.0) == Approx(90.0));
    CHECK(elevation_angle({100.0, 0.0, 120.0}, w, 20.0) == Approx(45.0));
    CHECK(elevation_angle({100.0 * std::sqrt(3.0), 0.0, 120.0}, w, 20.0) == Approx(30.0));
    CHECK(link_distance({100.0, 0.0, 120.0}, w, 20.0) == Approx(100.0 * std::sqrt(2.0)));
    CHECK_THROWS_AS(elevation_angle({0.0, 0.0, 20.0}, w, 20.0), std::domain_error);
    CHECK_THROWS_AS(elevation_angle({0.0, 0.0, 10.0}, w, 20.0), std::domain_error);
}

TEST_CASE("owning cell is the nearest site") {
    const auto l = build_hex_layout(500.0, 1500.0, 20.0, 3);
    CHECK(owning_cell(l, {10.0, 10.0}) == 0);
    CHECK(owning_cell(l, {490.0, 5.0}) == 1);
    CHECK(owning_cell(l, {250.0, 0.0}) == 0); // tie goes to the lower id
}

TEST_CASE("explicit layouts validate ids and bands") {
    CHECK_THROWS_AS(make_explicit_layout({{0, 0, 0, 0}, {0, 1, 1, 0}}, 500.0, 20.0, 3), ConfigError);
    CHECK_THROWS_AS(make_explicit_layout({{0, 0, 0, 3}}, 500.0, 20.0, 3), ConfigError);
    CHECK_THROWS_AS(make_explicit_layout({}, 500.0, 20.0, 3), ConfigError);
    const auto l = make_explicit_layout({{0, 0, 0, 0}, {5, 300, 400, 2}}, 500.0, 20.0, 3);
    CHECK(l.network_radius == Approx(500.0));
    CHECK(co_channel_set(l, 2) == std::vector<int>{5});
}

TEST_CASE("triangle grid: resolution 1 is the centroid, n^2 points in general") {
    const auto l = build_hex_layout(500.0, 0.0, 20.0, 3);
    SamplingRegion r;
    r.resolution = 1;
    const auto pts = sample_region(r, l);
    REQUIRE(pts.size() == 1);
    const auto t = reference_triangle(500.0);
    CHECK(pts[0].x == Approx((t[0].x + t[1].x + t[2].x) / 3.0));
    CHECK(pts[0].y == Approx((t[0].y + t[1].y + t[2].y) / 3.0).margin(1e-12));
    for (int n : {2, 5, 8}) {
        r.resolution = n;
        const auto g = sample_region(r, l);
        CHECK(g.size() == static_cast<std::size_t>(n * n));
        const std::vector<Point2> tri(t.begin(), t.end());
        for (const auto& p : g) CHECK(contains_strictly(tri, p));
    }
}

TEST_CASE("triangle grid is an equal-area quadrature: it integrates affine functions exactly") {
    const auto l = build_hex_layout(500.0, 0.0, 20.0, 3);
    SamplingRegion r;
    r.resolution = 7;
    const auto pts = sample_region(r, l);
    const auto t = reference_triangle(500.0);
    double mx = 0.0, my = 0.0;
    for (const auto& p : pts) {
        mx += p.x;
        my += p.y;
    }
    CHECK(mx / pts.size() == Approx((t[0].x + t[1].x + t[2].x) / 3.0));
    CHECK(my / pts.size() == Approx((t[0].y + t[1].y + t[2].y) / 3.0).margin(1e-9));
}

TEST_CASE("hexagon grid is six rotated triangle grids and is symmetric under 60 degrees") {
    const auto l = build_hex_layout(500.0, 0.0, 20.0, 3);
    SamplingRegion r;
    r.kind = RegionKind::kHexagon;
    r.resolution = 4;
    const auto pts = sample_region(r, l);
    REQUIRE(pts.size() == 6 * 16);
    const auto h = reference_hexagon(500.0);
    const std::vector<Point2> hex(h.begin(), h.end());
    const double c = std::cos(std::numbers::pi / 3.0), s = std::sin(std::numbers::pi / 3.0);
    for (const auto& p : pts) {
        CHECK(contains_strictly(hex, p));
        const Point2 q{c * p.x - s * p.y, s * p.x + c * p.y};
        double nearest = 1e300;
        for (const auto& o : pts) nearest = std::min(nearest, std::hypot(o.x - q.x, o.y - q.y));
        CHECK(nearest < 1e-9);
    }
}

TEST_CASE("hexagon vertices sit at circumradius D / sqrt(3)") {
    for (const auto& v : reference_hexagon(500.0)) CHECK(std::hypot(v.x, v.y) == Approx(500.0 / std::sqrt(3.0)));
    const auto h = reference_hexagon(500.0);
    CHECK(h[0].x == Approx(250.0));
    CHECK(h[0].y == Approx(-500.0 / (2.0 * std::sqrt(3.0))));
}

TEST_CASE("polygon grid keeps only interior cell centres") {
    const auto l = build_hex_layout(500.0, 0.0, 20.0, 3);
    SamplingRegion r;
    r.kind = RegionKind::kPolygon;
    r.resolution = 10;
    r.polygon = {{0, 0}, {100, 0}, {0, 100}};
    const auto pts = sample_region(r, l);
    CHECK(pts.size() == 45); // cell centres strictly below the diagonal
    for (const auto& p : pts) CHECK(p.x + p.y < 100.0);
    r.polygon = {{0, 0}, {1, 0}};
    CHECK_THROWS(sample_region(r, l));
}

TEST_CASE("strict containment excludes the boundary") {
    const std::vector<Point2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(contains_strictly(sq, {0.5, 0.5}));
    CHECK_FALSE(contains_strictly(sq, {0.0, 0.5}));
    CHECK_FALSE(contains_strictly(sq, {1.0, 1.0}));
    CHECK_FALSE(contains_strictly(sq, {1.5, 0.5}));
}

TEST_CASE("random sampling is reproducible and stays inside the region") {
    const auto l = build_hex_layout(500.0, 0.0, 20.0, 3);
    for (auto kind : {RegionKind::kTriangle, RegionKind::kHexagon}) {
        SamplingRegion r;
        r.kind = kind;
        const auto a = sample_region_random(r, l, 500, 42);
        const auto b = sample_region_random(r, l, 500, 42);
        const auto c = sample_region_random(r, l, 500, 43);
        REQUIRE(a.size() == 500);
        const auto poly = region_polygon(r, l);
        bool differs = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].x == b[i].x);
            CHECK(a[i].y == b[i].y);
            differs = differs || a[i].x != c[i].x;
            CHECK(contains_strictly(poly, a[i]));
        }
        CHECK(differs);
    }
}
