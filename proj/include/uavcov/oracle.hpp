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

// Brute-force reference distributions over every joint channel state. They
// share only the link table with the production code.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavcov/channel.hpp"
#include "uavcov/distribution.hpp"
#include "uavcov/errors.hpp"

namespace uavcov::oracle {

inline constexpr std::size_t kMaxBruteforceLinks = 20;

namespace detail {

struct JointState {
    double probability;
    int serving;        // index into rows, -1 if every gain is zero
    double gain;
    std::vector<double> gains;
};

// Calls visit(state) for each of the 2^n LoS/NLoS combinations.
template <class Visit>
void for_each_state(const std::vector<LinkRow>& rows, Visit&& visit) {
    const std::size_t n = rows.size();
    if (n > kMaxBruteforceLinks) {
        throw CapacityError("brute force over " + std::to_string(n) + " links exceeds the limit of " +
                            std::to_string(kMaxBruteforceLinks));
    }
    JointState s{1.0, -1, 0.0, std::vector<double>(n)};
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        s.probability = 1.0;
        s.serving = -1;
        s.gain = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool los = (mask >> i) & 1U;
            s.probability *= los ? rows[i].p_los : 1.0 - rows[i].p_los;
            s.gains[i] = los ? rows[i].c_los : rows[i].c_nlos;
            const bool better = s.gains[i] > s.gain ||
                                (s.gains[i] == s.gain && s.serving >= 0 && rows[i].id < rows[s.serving].id);
            if (s.gains[i] > 0.0 && better) {
                s.gain = s.gains[i];
                s.serving = static_cast<int>(i);
            }
        }
        if (s.probability > 0.0) visit(s);
    }
}

} // namespace detail

// pmf of beta0 * max_i C_i(delta_i) over all delta.
inline SteppedCdf uplink_bruteforce_pmf(const LinkTable& t, double beta0) {
    std::vector<MassPoint> pts;
    detail::for_each_state(t.rows, [&](const detail::JointState& s) { pts.push_back({beta0 * s.gain, s.probability}); });
    return SteppedCdf::from_masses(std::move(pts));
}

// cdf of C_s / (alpha0 + sum_k mu_k C_k(delta_k)) over all (delta, mu), with
// the interferers k being the other GBSs in the serving GBS's band and
// P{mu_k = 1} = omega(k).
template <class LoadingFn>
SteppedCdf downlink_joint_enumeration_cdf(const LinkTable& t, LoadingFn&& omega, double alpha0) {
    const auto& rows = t.rows;
    std::vector<MassPoint> pts;
    detail::for_each_state(rows, [&](const detail::JointState& s) {
        if (s.serving < 0) {
            pts.push_back({0.0, s.probability});
            return;
        }
        std::vector<std::size_t> co;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (static_cast<int>(k) != s.serving && rows[k].band == rows[s.serving].band) co.push_back(k);
        }
        if (co.size() > kMaxBruteforceLinks) throw CapacityError("too many co-channel GBSs for joint enumeration");
        for (std::uint64_t mu = 0; mu < (std::uint64_t{1} << co.size()); ++mu) {
            double p = s.probability;
            double interference = 0.0;
            for (std::size_t j = 0; j < co.size(); ++j) {
                const double w = omega(rows[co[j]].id);
                if ((mu >> j) & 1U) {
                    p *= w;
                    interference += s.gains[co[j]];
                } else {
                    p *= 1.0 - w;
                }
            }
            if (p > 0.0) pts.push_back({s.gain / (alpha0 + interference), p});
        }
    });
    return SteppedCdf::from_masses(std::move(pts));
}

} // namespace uavcov::oracle
