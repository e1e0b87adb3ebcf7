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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "uavcov/commands.hpp"

namespace {

struct Common {
    std::string config;
    uavcov::cli::Options opt;
};

void add_common(CLI::App* sub, Common& c, bool with_seed, bool with_altitude) {
    sub->add_option("--config", c.config, "scenario config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", c.opt.out_dir, "output directory")->capture_default_str();
    sub->add_option("--workers", c.opt.workers, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
    if (with_seed) sub->add_option("--seed", c.opt.seed, "RNG seed (required for Monte Carlo)");
    if (with_altitude) sub->add_option("--altitude", c.opt.altitude, "UAV altitude in m (overrides the config)");
}

} // namespace

int main(int argc, char** argv) {
    using namespace uavcov::cli;
    CLI::App app{"uavcov: 3D coverage analysis for cellular-connected UAVs"};
    app.require_subcommand(1);
    Common c;

    auto* layout = app.add_subcommand("layout", "write the GBS layout and GBS antenna pattern");
    add_common(layout, c, false, false);
    auto* up = app.add_subcommand("uplink-map", "uplink non-outage raster over the sampling region");
    add_common(up, c, false, true);
    auto* down = app.add_subcommand("downlink-map", "downlink non-outage raster over the sampling region");
    add_common(down, c, false, true);
    auto* curve = app.add_subcommand("coverage-curve", "coverage versus altitude or threshold");
    add_common(curve, c, false, true);
    auto* icdf = app.add_subcommand("interference-cdf", "aggregate interference cdf at the probe position");
    add_common(icdf, c, true, false);
    icdf->add_option("--method", c.opt.method, "la, enum, mc or ga")
        ->check(CLI::IsMember({"la", "enum", "mc", "ga"}))
        ->capture_default_str();
    auto* val = app.add_subcommand("validate", "compare an approximation against its oracle");
    add_common(val, c, true, false);
    val->add_option("--mode", c.opt.mode, "validation mode")->required()->check(CLI::IsMember(validate_modes()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfigError;
    }

    auto* sub = app.get_subcommands().front();

    try {
        const auto cfg = uavcov::load_config(c.config);
        if (sub == layout) return cmd_layout(cfg, c.opt);
        if (sub == up) return cmd_map(cfg, uavcov::Link::kUplink, c.opt);
        if (sub == down) return cmd_map(cfg, uavcov::Link::kDownlink, c.opt);
        if (sub == curve) return cmd_coverage_curve(cfg, c.opt);
        if (sub == icdf) return cmd_interference_cdf(cfg, c.opt);
        return cmd_validate(cfg, c.opt);
    } catch (const uavcov::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const uavcov::CapacityError& e) {
        std::cerr << "scenario too large: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
}
