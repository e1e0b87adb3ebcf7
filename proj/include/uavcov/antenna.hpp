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

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavcov/geometry.hpp"
#include "uavcov/units.hpp"

namespace uavcov {

// Any GBS elevation pattern: elevation angle in degrees -> linear power gain.
using GbsPattern = std::function<double(double)>;

// Vertical uniform linear array of dipoles with electrical downtilt.
struct UlaPattern {
    int elements = 10;
    double spacing_wavelengths = 0.5;
    double downtilt_deg = -10.0; // negative = below the horizon
    double element_peak_gain = 1.64;

    void validate() const {
        if (elements < 1) throw std::invalid_argument("ULA needs at least one element");
        if (!(spacing_wavelengths > 0.0)) throw std::invalid_argument("ULA element spacing must be positive");
        if (!(downtilt_deg > -90.0 && downtilt_deg < 90.0)) {
            throw std::invalid_argument("ULA downtilt must lie in (-90, 90) degrees");
        }
        if (!(element_peak_gain > 0.0)) throw std::invalid_argument("ULA element gain must be positive");
    }
};

// |sin(vartheta/2)| below this is treated as a zero of the denominator; the
// squared array factor then takes its limit K (main lobe and grating lobes).
inline constexpr double kArrayFactorSingularity = 1e-9;

inline double ula_gain(const UlaPattern& p, double theta_deg) {
    if (!(theta_deg > -90.0 && theta_deg <= 90.0)) {
        throw std::domain_error("elevation angle " + std::to_string(theta_deg) + " outside (-90, 90]");
    }
    const double theta = deg_to_rad(theta_deg);
    // cos(pi/2) is ~6e-17 in floating point; the element null is exact.
    const double cos_t = theta_deg == 90.0 ? 0.0 : std::cos(theta);
    const double element = p.element_peak_gain * cos_t * cos_t;
    const double k = static_cast<double>(p.elements);
    const double psi =
        2.0 * std::numbers::pi * p.spacing_wavelengths * (std::sin(theta) - std::sin(deg_to_rad(p.downtilt_deg)));
    const double den = std::sin(0.5 * psi);
    double af2 = k;
    if (std::abs(den) >= kArrayFactorSingularity) {
        const double j = std::sin(0.5 * k * psi) / (std::sqrt(k) * den);
        af2 = j * j;
    }
    return element * af2;
}

inline GbsPattern make_gbs_pattern(const UlaPattern& p) {
    p.validate();
    return [p](double theta_deg) { return ula_gain(p, theta_deg); };
}

// Flat-top UAV antenna pointing at the ground with half beamwidth phi (deg).
struct UavAntenna {
    double half_beamwidth_deg = 90.0;
    double mainlobe_constant = 7500.0; // 30000 / 2^2
    double backlobe_gain = 0.0;

    void validate() const {
        if (!(half_beamwidth_deg > 0.0 && half_beamwidth_deg <= 90.0)) {
            throw std::invalid_argument("UAV half beamwidth must lie in (0, 90] degrees");
        }
        if (!(mainlobe_constant > 0.0)) throw std::invalid_argument("UAV mainlobe constant must be positive");
        if (!(backlobe_gain >= 0.0)) throw std::invalid_argument("UAV backlobe gain must be non-negative");
    }

    // G_0 / phi^2 with phi in degrees.
    double mainlobe_gain() const { return mainlobe_constant / (half_beamwidth_deg * half_beamwidth_deg); }
};

// Horizontal radius of the mainlobe footprint at GBS height; +inf at 90 deg.
inline double coverage_radius(const UavAntenna& a, double uav_altitude, double gbs_height) {
    if (!(uav_altitude > gbs_height)) {
        throw std::domain_error("UAV altitude must exceed the GBS height");
    }
    if (a.half_beamwidth_deg >= 90.0) return std::numeric_limits<double>::infinity();
    return (uav_altitude - gbs_height) * std::tan(deg_to_rad(a.half_beamwidth_deg));
}

inline double uav_gain_toward(const UavAntenna& a, const UavPosition& u, const GbsSite& w, double gbs_height) {
    const double rc = coverage_radius(a, u.altitude, gbs_height);
    const double d = horizontal_distance(u, w);
    // tan() rounding can leave r_c an ulp short of its nominal value.
    const double slack = 1e-9 * std::max(1.0, std::isfinite(rc) ? rc : 1.0);
    return d <= rc + slack ? a.mainlobe_gain() : a.backlobe_gain;
}

struct PatternSample {
    double theta_deg;
    double gain_linear;
    double gain_dbi;
};

// Elevation cut over [from, to] in `step` degree increments.
inline std::vector<PatternSample> pattern_sweep(const GbsPattern& pattern, double from_deg, double to_deg,
                                                double step_deg) {
    if (!(step_deg > 0.0) || from_deg > to_deg) throw std::invalid_argument("invalid pattern sweep range");
    std::vector<PatternSample> out;
    const auto n = static_cast<long>(std::floor((to_deg - from_deg) / step_deg + 1e-9));
    for (long i = 0; i <= n; ++i) {
        const double t = from_deg + static_cast<double>(i) * step_deg;
        const double g = pattern(t);
        out.push_back({t, g, g > 0.0 ? linear_to_db(g) : -std::numeric_limits<double>::infinity()});
    }
    return out;
}

} // namespace uavcov
