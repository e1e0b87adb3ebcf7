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
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "uavcov/antenna.hpp"

using namespace uavcov;
using Catch::Approx;

namespace {

// Element pattern times |sum_n exp(j n psi)|^2 / K, summed term by term.
double ula_gain_direct(const UlaPattern& p, double theta_deg) {
    const double t = theta_deg * std::numbers::pi / 180.0;
    const double tilt = p.downtilt_deg * std::numbers::pi / 180.0;
    const double psi = 2.0 * std::numbers::pi * p.spacing_wavelengths * (std::sin(t) - std::sin(tilt));
    std::complex<double> af{0.0, 0.0};
    for (int n = 0; n < p.elements; ++n) af += std::polar(1.0, n * psi);
    return p.element_peak_gain * std::cos(t) * std::cos(t) * std::norm(af) / p.elements;
}

} // namespace

TEST_CASE("ULA peak toward the downtilt equals K * G_e * cos^2(tilt)") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> k(1, 32);
    std::uniform_real_distribution<double> d(0.1, 2.0), tilt(-60.0, 10.0), g(0.5, 5.0);
    for (int i = 0; i < 100; ++i) {
        const UlaPattern p{k(rng), d(rng), tilt(rng), g(rng)};
        const double c = std::cos(p.downtilt_deg * std::numbers::pi / 180.0);
        CHECK(ula_gain(p, p.downtilt_deg) == Approx(p.elements * p.element_peak_gain * c * c).epsilon(1e-9));
    }
}

TEST_CASE("closed-form array factor matches direct phasor summation") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> k(1, 16);
    std::uniform_real_distribution<double> d(0.2, 1.0), tilt(-30.0, 0.0), th(-89.0, 89.9);
    for (int i = 0; i < 500; ++i) {
        const UlaPattern p{k(rng), d(rng), tilt(rng), 1.64};
        const double t = th(rng);
        CHECK(ula_gain(p, t) == Approx(ula_gain_direct(p, t)).epsilon(1e-7).margin(1e-12));
    }
}

TEST_CASE("default ULA has an exact null overhead and stays non-negative") {
    const UlaPattern p;
    CHECK(ula_gain(p, 90.0) == 0.0);
    for (double t = -89.5; t <= 90.0; t += 0.25) CHECK(ula_gain(p, t) >= 0.0);
    CHECK(ula_gain(p, -10.0) == Approx(10 * 1.64 * std::pow(std::cos(10.0 * std::numbers::pi / 180.0), 2)));
}

TEST_CASE("single element reduces to the element pattern") {
    const UlaPattern p{1, 0.5, -10.0, 2.0};
    for (double t : {-60.0, -10.0, 0.0, 33.0, 80.0}) {
        const double c = std::cos(t * std::numbers::pi / 180.0);
        CHECK(ula_gain(p, t) == Approx(2.0 * c * c));
    }
}

TEST_CASE("elevation outside (-90, 90] is rejected") {
    const UlaPattern p;
    CHECK_THROWS_AS(ula_gain(p, -90.0), std::domain_error);
    CHECK_THROWS_AS(ula_gain(p, 90.5), std::domain_error);
    CHECK_THROWS_AS(make_gbs_pattern(UlaPattern{0, 0.5, -10.0, 1.64}), std::invalid_argument);
}

TEST_CASE("UAV antenna coverage radius") {
    UavAntenna a;
    a.half_beamwidth_deg = 45.0;
    CHECK(coverage_radius(a, 120.0, 20.0) == Approx(100.0));
    a.half_beamwidth_deg = 60.0;
    CHECK(coverage_radius(a, 120.0, 20.0) == Approx(100.0 * std::sqrt(3.0)));
    a.half_beamwidth_deg = 90.0;
    CHECK(std::isinf(coverage_radius(a, 120.0, 20.0)));
    CHECK_THROWS_AS(coverage_radius(a, 20.0, 20.0), std::domain_error);
}

TEST_CASE("UAV antenna gain inside and outside the mainlobe footprint") {
    UavAntenna a;
    a.half_beamwidth_deg = 45.0;
    const UavPosition u{0.0, 0.0, 120.0};
    CHECK(uav_gain_toward(a, u, {0, 100.0, 0.0, 0}, 20.0) == Approx(7500.0 / (45.0 * 45.0)));
    CHECK(uav_gain_toward(a, u, {0, 100.0, 0.0, 0}, 20.0) == Approx(3.7037).epsilon(1e-4));
    CHECK(uav_gain_toward(a, u, {0, 101.0, 0.0, 0}, 20.0) == 0.0);
    a.backlobe_gain = 0.01;
    CHECK(uav_gain_toward(a, u, {0, 101.0, 0.0, 0}, 20.0) == 0.01);
    UavAntenna iso{90.0, 8100.0, 0.0};
    CHECK(uav_gain_toward(iso, u, {0, 1e6, 0.0, 0}, 20.0) == Approx(1.0));
}

TEST_CASE("UAV antenna parameter validation") {
    CHECK_THROWS(UavAntenna{0.0, 7500.0, 0.0}.validate());
    CHECK_THROWS(UavAntenna{95.0, 7500.0, 0.0}.validate());
    CHECK_THROWS(UavAntenna{45.0, -1.0, 0.0}.validate());
    CHECK_NOTHROW(UavAntenna{}.validate());
}

TEST_CASE("pattern sweep samples the cut and reports dBi") {
    const auto rows = pattern_sweep(make_gbs_pattern(UlaPattern{}), -89.5, 90.0, 0.5);
    REQUIRE(rows.size() == 360);
    CHECK(rows.front().theta_deg == -89.5);
    CHECK(rows.back().theta_deg == 90.0);
    CHECK(rows.back().gain_linear == 0.0);
    CHECK(std::isinf(rows.back().gain_dbi));
    for (const auto& r : rows) {
        if (r.gain_linear > 0.0) CHECK(r.gain_dbi == Approx(10.0 * std::log10(r.gain_linear)));
    }
    CHECK_THROWS(pattern_sweep(make_gbs_pattern(UlaPattern{}), 10.0, 0.0, 1.0));
}
