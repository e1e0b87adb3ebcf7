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
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <fftw3.h>

#include "uavcov/distribution.hpp"
#include "uavcov/errors.hpp"

namespace uavcov {

// One independent summand z_i: finitely many values, strictly ascending.
struct DiscreteSummand {
    std::vector<double> values;
    std::vector<double> probs;

    DiscreteSummand() = default;
    DiscreteSummand(std::vector<double> v, std::vector<double> p) : values(std::move(v)), probs(std::move(p)) {
        validate();
    }

    // Sorts, merges equal values and drops zero-probability entries.
    static DiscreteSummand from_masses(std::vector<MassPoint> masses) {
        const auto merged = merge_mass_points(std::move(masses));
        if (merged.empty()) throw std::invalid_argument("summand has no positive mass");
        std::vector<double> v, p;
        for (const auto& m : merged) {
            v.push_back(m.value);
            p.push_back(m.probability);
        }
        return {std::move(v), std::move(p)};
    }

    void validate() const {
        if (values.empty() || values.size() != probs.size()) {
            throw std::invalid_argument("summand needs L >= 1 values with matching probabilities");
        }
        double total = 0.0;
        for (std::size_t l = 0; l < values.size(); ++l) {
            if (l > 0 && !(values[l] > values[l - 1])) throw std::invalid_argument("summand values must be strictly ascending");
            if (!(probs[l] >= 0.0)) throw std::invalid_argument("summand probabilities must be non-negative");
            total += probs[l];
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw std::invalid_argument("summand probabilities must sum to 1 (got " + std::to_string(total) + ")");
        }
    }

    std::size_t size() const { return values.size(); }
    double min() const { return values.front(); }
    double max() const { return values.back(); }

    double mean() const {
        double m = 0.0;
        for (std::size_t l = 0; l < values.size(); ++l) m += probs[l] * values[l];
        return m;
    }
    double variance() const {
        const double mu = mean();
        double v = 0.0;
        for (std::size_t l = 0; l < values.size(); ++l) v += probs[l] * (values[l] - mu) * (values[l] - mu);
        return v;
    }
};

// Sum of independent finite-support summands (generalized Poisson multinomial).
struct GpmSpec {
    std::vector<DiscreteSummand> summands;

    void validate() const {
        if (summands.empty()) throw std::invalid_argument("GPM spec needs at least one summand");
        for (const auto& s : summands) s.validate();
    }
    double min_value() const {
        double a = 0.0;
        for (const auto& s : summands) a += s.min();
        return a;
    }
    double range() const {
        double a = 0.0;
        for (const auto& s : summands) a += s.max() - s.min();
        return a;
    }
    double mean() const {
        double m = 0.0;
        for (const auto& s : summands) m += s.mean();
        return m;
    }
    double variance() const {
        double v = 0.0;
        for (const auto& s : summands) v += s.variance();
        return v;
    }
};

// prod_i sum_l p_il exp(j s a_il)
inline std::complex<double> cf_sample(const GpmSpec& spec, double s) {
    std::complex<double> acc{1.0, 0.0};
    for (const auto& z : spec.summands) {
        std::complex<double> term{0.0, 0.0};
        for (std::size_t l = 0; l < z.size(); ++l) term += z.probs[l] * std::polar(1.0, s * z.values[l]);
        acc *= term;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Lattice inversion

inline constexpr double kImagResidueTol = 1e-9;
inline constexpr double kNegativeResidueTol = 1e-8;

namespace detail {

struct FftwDeleter {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

inline FftwBuffer fftw_buffer(std::size_t n) {
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (p == nullptr) throw std::bad_alloc();
    return FftwBuffer(p);
}

// Forward (e^{-j...}) length-n plans, created once per length. Planning is
// not thread-safe in FFTW, execution with fftw_execute_dft is.
inline fftw_plan forward_plan(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(mu);
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    auto in = fftw_buffer(n);
    auto out = fftw_buffer(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    if (p == nullptr) throw std::runtime_error("FFTW planning failed for length " + std::to_string(n));
    plans.emplace(n, p);
    return p;
}

} // namespace detail

// Recovers q_n = (1/N) sum_k phi[k] e^{-j 2 pi k n / N} from N equally spaced
// cf samples phi[k] = phi(2 pi k / N) of a variable supported on {0..N-1}.
// Imaginary parts below 1e-9 and negative entries above -1e-8 are treated
// as rounding noise; anything larger means the support did not fit (aliasing).
inline std::vector<double> lattice_invert(std::span<const std::complex<double>> samples) {
    const std::size_t n = samples.size();
    if (n == 0) throw std::invalid_argument("lattice inversion needs at least one sample");
    auto in = detail::fftw_buffer(n);
    auto out = detail::fftw_buffer(n);
    for (std::size_t k = 0; k < n; ++k) {
        in[k][0] = samples[k].real();
        in[k][1] = samples[k].imag();
    }
    fftw_execute_dft(detail::forward_plan(n), in.get(), out.get());
    std::vector<double> q(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = out[i][0] / static_cast<double>(n);
        const double im = out[i][1] / static_cast<double>(n);
        if (std::abs(im) > kImagResidueTol) {
            throw NumericalError("lattice inversion left an imaginary residue of " + std::to_string(im) +
                                 " at n=" + std::to_string(i));
        }
        if (re < -kNegativeResidueTol) {
            throw NumericalError("lattice inversion produced mass " + std::to_string(re) + " at n=" +
                                 std::to_string(i) + " (support exceeds the lattice length?)");
        }
        q[i] = std::max(0.0, re);
        total += q[i];
    }
    if (!(total > 0.0)) throw NumericalError("lattice inversion produced no mass");
    for (auto& v : q) v /= total;
    return q;
}

// Same, sampling the characteristic function `cf(s)` at s = 2 pi k / N.
template <class CharFn>
    requires std::invocable<CharFn, double>
std::vector<double> lattice_invert(CharFn&& cf, std::size_t n) {
    std::vector<std::complex<double>> samples(n);
    for (std::size_t k = 0; k < n; ++k) {
        samples[k] = cf(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    }
    return lattice_invert(std::span<const std::complex<double>>(samples));
}

// Integer-valued summands (after offset-scale-quantize).
struct IntegerSummand {
    std::vector<std::int64_t> values;
    std::vector<double> probs;
};

// cf samples at s = 2 pi k / N, k = 0..N-1, of a sum of integer summands.
// Uses a root-of-unity table, and conjugate symmetry for the upper half.
inline std::vector<std::complex<double>> lattice_cf_samples(std::span<const IntegerSummand> summands,
                                                            std::size_t n) {
    std::vector<std::complex<double>> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        roots[i] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
    }
    const std::size_t half = n / 2;
    std::vector<std::complex<double>> phi(half + 1, {1.0, 0.0});
    const auto nn = static_cast<std::uint64_t>(n);
    for (const auto& z : summands) {
        if (z.values.size() == 1 && z.values[0] == 0) continue; // cf identically 1
        std::vector<std::uint64_t> vals(z.values.size());
        for (std::size_t l = 0; l < vals.size(); ++l) vals[l] = static_cast<std::uint64_t>(z.values[l]) % nn;
        for (std::size_t k = 0; k <= half; ++k) {
            std::complex<double> term{0.0, 0.0};
            for (std::size_t l = 0; l < vals.size(); ++l) term += z.probs[l] * roots[(k * vals[l]) % nn];
            phi[k] *= term;
        }
    }
    std::vector<std::complex<double>> full(n);
    for (std::size_t k = 0; k <= half && k < n; ++k) full[k] = phi[k];
    for (std::size_t k = half + 1; k < n; ++k) full[k] = std::conj(phi[n - k]);
    return full;
}

// Integer lattice pmf q_n at value offset + n / scale.
struct LatticeDistribution {
    double offset = 0.0;
    double scale = 1.0;
    std::vector<double> pmf;

    double value(std::size_t n) const { return offset + static_cast<double>(n) / scale; }

    SteppedCdf to_cdf() const {
        std::vector<MassPoint> pts;
        pts.reserve(pmf.size());
        for (std::size_t n = 0; n < pmf.size(); ++n) {
            if (pmf[n] > 0.0) pts.push_back({value(n), pmf[n]});
        }
        return SteppedCdf::from_masses(std::move(pts));
    }

    double mean() const {
        double m = 0.0;
        for (std::size_t n = 0; n < pmf.size(); ++n) m += pmf[n] * value(n);
        return m;
    }
};

struct LaResult {
    LatticeDistribution lattice;
    SteppedCdf cdf;
    std::size_t fft_length = 0;
};

inline constexpr double kDefaultLatticeScale = 1000.0; // c_0

// Lattice approximation of the cdf of a GPM variable:
//   1. offset every summand by its smallest value,
//   2. scale by beta = c0 / A (A = total range) and round each value to the
//      nearest integer (half away from zero),
//   3. recover the integer pmf by inverse DFT of cf samples over
//      N = bit_ceil(A~ + 1) points,
//   4. F_Z(x) ~ F_Z~(beta (x - A_0)).
// A zero range bypasses the FFT and yields the point mass at A_0.
inline LaResult la_cdf(const GpmSpec& spec, double c0 = kDefaultLatticeScale) {
    spec.validate();
    if (!(c0 >= 1.0)) throw std::invalid_argument("lattice scale c0 must be >= 1");
    const double a0 = spec.min_value();
    const double range = spec.range();
    LaResult r;
    if (range == 0.0) {
        r.lattice = {a0, 1.0, {1.0}};
        r.cdf = SteppedCdf::point_mass(a0);
        return r;
    }
    const double beta = c0 / range;
    std::vector<IntegerSummand> quantized;
    quantized.reserve(spec.summands.size());
    std::int64_t top = 0;
    for (const auto& z : spec.summands) {
        IntegerSummand q;
        q.values.reserve(z.size());
        for (double v : z.values) q.values.push_back(std::llround(beta * (v - z.min())));
        q.probs = z.probs;
        top += q.values.back();
        quantized.push_back(std::move(q));
    }
    const std::size_t n = std::bit_ceil(static_cast<std::size_t>(top) + 1);
    const auto samples = lattice_cf_samples(quantized, n);
    r.lattice = {a0, beta, lattice_invert(std::span<const std::complex<double>>(samples))};
    r.cdf = r.lattice.to_cdf();
    r.fft_length = n;
    return r;
}

// ---------------------------------------------------------------------------
// Oracles and baselines

inline constexpr double kDefaultEnumerationCap = 2e6;

// Exact cdf by full enumeration of the product space (merged progressively;
// values within 1e-12 relative are coalesced at the end).
inline SteppedCdf enumerate_cdf(const GpmSpec& spec, double cap = kDefaultEnumerationCap) {
    spec.validate();
    double outcomes = 1.0;
    for (const auto& z : spec.summands) outcomes *= static_cast<double>(z.size());
    if (outcomes > cap) {
        throw CapacityError("enumeration needs " + std::to_string(outcomes) + " outcomes, above the cap of " +
                            std::to_string(cap));
    }
    std::vector<MassPoint> acc{{0.0, 1.0}};
    for (const auto& z : spec.summands) {
        std::vector<MassPoint> next;
        next.reserve(acc.size() * z.size());
        for (const auto& m : acc) {
            for (std::size_t l = 0; l < z.size(); ++l) next.push_back({m.value + z.values[l], m.probability * z.probs[l]});
        }
        acc = merge_mass_points(std::move(next));
    }
    return SteppedCdf::from_masses(std::move(acc), 1e-12);
}

// Empirical cdf of n iid draws; deterministic for a given seed.
inline SteppedCdf mc_cdf(const GpmSpec& spec, std::size_t n, std::uint64_t seed) {
    spec.validate();
    if (n == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
    std::vector<std::vector<double>> cum(spec.summands.size());
    for (std::size_t i = 0; i < spec.summands.size(); ++i) {
        double acc = 0.0;
        for (double p : spec.summands[i].probs) cum[i].push_back(acc += p);
        cum[i].back() = 1.0;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<MassPoint> draws(n);
    const double w = 1.0 / static_cast<double>(n);
    for (std::size_t s = 0; s < n; ++s) {
        double x = 0.0;
        for (std::size_t i = 0; i < spec.summands.size(); ++i) {
            const auto& c = cum[i];
            const auto l = static_cast<std::size_t>(std::upper_bound(c.begin(), c.end(), unit(rng)) - c.begin());
            x += spec.summands[i].values[std::min(l, c.size() - 1)];
        }
        draws[s] = {x, w};
    }
    return SteppedCdf::from_masses(std::move(draws));
}

// Central-limit approximation truncated to [0, inf) and renormalized.
class GaussianCdf {
public:
    GaussianCdf(double mean, double stddev) : mean_(mean), sd_(stddev) {
        if (sd_ > 0.0) {
            lower_ = phi((0.0 - mean_) / sd_);
            if (!(lower_ < 1.0)) throw NumericalError("Gaussian approximation has no mass on [0, inf)");
        } else {
            jumps_ = {mean_};
        }
    }

    double mean() const { return mean_; }
    double stddev() const { return sd_; }

    double operator()(double x) const {
        if (sd_ == 0.0) return x >= mean_ ? 1.0 : 0.0;
        if (x < 0.0) return 0.0;
        return (phi((x - mean_) / sd_) - lower_) / (1.0 - lower_);
    }
    double below(double x) const {
        if (sd_ == 0.0) return x > mean_ ? 1.0 : 0.0;
        return (*this)(x);
    }
    const std::vector<double>& jump_points() const { return jumps_; }

private:
    static double phi(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

    double mean_;
    double sd_;
    double lower_ = 0.0;
    std::vector<double> jumps_;
};

inline GaussianCdf gaussian_cdf(const GpmSpec& spec) {
    spec.validate();
    return {spec.mean(), std::sqrt(spec.variance())};
}

} // namespace uavcov
