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
#include <concepts>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace uavcov {

struct MassPoint {
    double value;
    double probability;
};

// Sorts by value and merges points whose values differ by at most
// `rel_tol * max|value|`. Zero-mass points are dropped.
inline std::vector<MassPoint> merge_mass_points(std::vector<MassPoint> pts, double rel_tol = 0.0) {
    std::sort(pts.begin(), pts.end(), [](const MassPoint& a, const MassPoint& b) { return a.value < b.value; });
    double scale = 0.0;
    for (const auto& p : pts) scale = std::max(scale, std::abs(p.value));
    const double tol = rel_tol * scale;
    std::vector<MassPoint> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        if (p.probability == 0.0) continue;
        if (!out.empty() && p.value - out.back().value <= tol) {
            out.back().probability += p.probability;
        } else {
            out.push_back(p);
        }
    }
    return out;
}

// Right-continuous step cdf F(x) = P{X <= x} with jumps at `points`.
class SteppedCdf {
public:
    SteppedCdf() = default;

    // From mass points (any order; equal values are merged).
    static SteppedCdf from_masses(std::vector<MassPoint> pts, double rel_tol = 0.0) {
        const auto merged = merge_mass_points(std::move(pts), rel_tol);
        SteppedCdf c;
        c.x_.reserve(merged.size());
        c.f_.reserve(merged.size());
        double acc = 0.0;
        for (const auto& m : merged) {
            acc += m.probability;
            c.x_.push_back(m.value);
            c.f_.push_back(acc);
        }
        return c;
    }

    static SteppedCdf point_mass(double at) { return from_masses({{at, 1.0}}); }

    // P{X <= x}
    double operator()(double x) const {
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        return it == x_.begin() ? 0.0 : f_[static_cast<std::size_t>(it - x_.begin()) - 1];
    }
    double evaluate(double x) const { return (*this)(x); }

    // P{X < x}
    double below(double x) const {
        const auto it = std::lower_bound(x_.begin(), x_.end(), x);
        return it == x_.begin() ? 0.0 : f_[static_cast<std::size_t>(it - x_.begin()) - 1];
    }

    const std::vector<double>& jump_points() const { return x_; }
    const std::vector<double>& cumulative() const { return f_; }
    std::size_t size() const { return x_.size(); }
    bool empty() const { return x_.empty(); }
    double total() const { return f_.empty() ? 0.0 : f_.back(); }

    std::vector<MassPoint> masses() const {
        std::vector<MassPoint> out;
        out.reserve(x_.size());
        double prev = 0.0;
        for (std::size_t i = 0; i < x_.size(); ++i) {
            out.push_back({x_[i], f_[i] - prev});
            prev = f_[i];
        }
        return out;
    }

    double mean() const {
        double m = 0.0;
        for (const auto& p : masses()) m += p.value * p.probability;
        return m;
    }

private:
    std::vector<double> x_;
    std::vector<double> f_;
};

// Anything that can be compared by the Kolmogorov distance: right-continuous
// value, left limit, and the (possibly empty) set of discontinuities.
template <class C>
concept CdfLike = requires(const C& c, double x) {
    { c(x) } -> std::convertible_to<double>;
    { c.below(x) } -> std::convertible_to<double>;
    { c.jump_points() };
};

// sup_x |F_a(x) - F_b(x)|. Between consecutive discontinuities of either cdf
// the supremum is reached at a one-sided limit, so both sides of every jump
// are checked. Jump points closer than `rel_tol * max|x|` are treated as one
// location, which keeps floating-point noise in atom positions from being
// counted as a distributional difference.
template <CdfLike A, CdfLike B>
double kolmogorov_distance(const A& a, const B& b, double rel_tol = 1e-12) {
    std::vector<double> pts;
    const auto& ja = a.jump_points();
    const auto& jb = b.jump_points();
    pts.reserve(ja.size() + jb.size());
    pts.insert(pts.end(), ja.begin(), ja.end());
    pts.insert(pts.end(), jb.begin(), jb.end());
    std::sort(pts.begin(), pts.end());
    if (pts.empty()) return 0.0;
    double scale = 0.0;
    for (double x : pts) scale = std::max(scale, std::abs(x));
    const double tol = rel_tol * scale;
    double d = 0.0;
    std::size_t i = 0;
    while (i < pts.size()) {
        std::size_t j = i;
        while (j + 1 < pts.size() && pts[j + 1] - pts[i] <= tol) ++j;
        const double lo = pts[i], hi = pts[j];
        d = std::max(d, std::abs(a.below(lo) - b.below(lo)));
        d = std::max(d, std::abs(a(hi) - b(hi)));
        i = j + 1;
    }
    return std::min(1.0, d);
}

} // namespace uavcov
