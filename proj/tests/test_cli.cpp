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

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("uavcov_cli_" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    }
};

int run(const std::string& args) {
    const std::string cmd = std::string(UAVCOV_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<double> values(const std::string& row) {
    std::vector<double> out;
    std::stringstream ss(row);
    for (std::string cell; std::getline(ss, cell, ',');) out.push_back(std::stod(cell));
    return out;
}

const std::string kSmall = R"({"layout": {"network_radius_m": 1500}, "thresholds": {"uplink_db": 0},
  "maps": {"region": "hexagon", "resolution": 3, "altitude_m": 80}})";

} // namespace

TEST_CASE("layout writes 37 sites with a hash line and header") {
    Scratch s("layout");
    const auto cfg = s.write("c.json", kSmall);
    REQUIRE(run("layout --config " + cfg + " --out " + s.dir.string()) == 0);
    const auto l = lines(s.dir / "layout.csv");
    REQUIRE(l.size() == 2 + 37);
    CHECK(l[0].rfind("# config_hash=", 0) == 0);
    CHECK(l[0].size() == std::string("# config_hash=").size() + 16);
    CHECK(l[1] == "id,x_m,y_m,band");
    CHECK(fs::exists(s.dir / "gbs_pattern.csv"));
}

TEST_CASE("config errors exit with 2") {
    Scratch s("errors");
    CHECK(run("layout --config " + s.write("a.json", R"({"layout": {"spam": 1}})") + " --out " + s.dir.string()) == 2);
    CHECK(run("layout --config " + s.write("b.json", "{not json") + " --out " + s.dir.string()) == 2);
    const auto cfg = s.write("c.json", kSmall);
    CHECK(run("validate --mode la-vs-mc --config " + cfg + " --out " + s.dir.string()) == 2);
    CHECK(run("interference-cdf --method mc --config " + cfg + " --out " + s.dir.string()) == 2);
    CHECK(run("interference-cdf --method bogus --config " + cfg + " --out " + s.dir.string()) == 2);
}

TEST_CASE("uplink validation against brute force succeeds") {
    Scratch s("validate");
    const auto cfg = s.write("c.json", R"({"layout": {"network_radius_m": 1000}})");
    CHECK(run("validate --mode uplink-vs-bruteforce --config " + cfg + " --out " + s.dir.string()) == 0);
    const auto l = lines(s.dir / "validate_uplink-vs-bruteforce.csv");
    REQUIRE(l.size() >= 3);
    CHECK(l[1] == "case,metric,value,tolerance,pass");
}

TEST_CASE("map output does not depend on the worker count") {
    Scratch s("workers");
    const auto cfg = s.write("c.json", kSmall);
    const auto one = s.dir / "w1";
    const auto four = s.dir / "w4";
    REQUIRE(run("downlink-map --workers 1 --config " + cfg + " --out " + one.string()) == 0);
    REQUIRE(run("downlink-map --workers 4 --config " + cfg + " --out " + four.string()) == 0);
    CHECK(slurp(one / "downlink_map.csv") == slurp(four / "downlink_map.csv"));
    REQUIRE(run("uplink-map --workers 1 --config " + cfg + " --out " + one.string()) == 0);
    REQUIRE(run("uplink-map --workers 4 --config " + cfg + " --out " + four.string()) == 0);
    CHECK(slurp(one / "uplink_map.csv") == slurp(four / "uplink_map.csv"));
    CHECK(lines(one / "uplink_map.csv")[1] == "x_m,y_m,non_outage_prob");
}

TEST_CASE("a written layout reproduces the generated map") {
    Scratch s("roundtrip");
    const auto cfg = s.write("c.json", kSmall);
    REQUIRE(run("layout --config " + cfg + " --out " + s.dir.string()) == 0);
    REQUIRE(run("uplink-map --config " + cfg + " --out " + (s.dir / "gen").string()) == 0);
    const auto explicit_cfg = s.write("e.json", R"({"layout": {"sites_csv": "layout.csv"},
      "thresholds": {"uplink_db": 0}, "maps": {"region": "hexagon", "resolution": 3, "altitude_m": 80}})");
    REQUIRE(run("uplink-map --config " + explicit_cfg + " --out " + (s.dir / "csv").string()) == 0);
    // Site coordinates pass through 12 significant digits, so compare values, not bytes.
    const auto a = lines(s.dir / "gen" / "uplink_map.csv");
    const auto b = lines(s.dir / "csv" / "uplink_map.csv");
    REQUIRE(a.size() == b.size());
    CHECK(a[1] == b[1]);
    for (std::size_t i = 2; i < a.size(); ++i) {
        const auto va = values(a[i]);
        const auto vb = values(b[i]);
        REQUIRE(va.size() == 3);
        REQUIRE(vb.size() == 3);
        for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(va[k] - vb[k]) <= 1e-9);
    }
}

TEST_CASE("threshold sweep is non-increasing") {
    Scratch s("sweep");
    const auto cfg = s.write("c.json", R"({"layout": {"network_radius_m": 1500},
      "maps": {"region": "hexagon", "resolution": 3},
      "sweep": {"kind": "threshold", "link": "uplink", "altitude_m": 60,
                "threshold_min_db": -10, "threshold_max_db": 20, "threshold_points": 10}})");
    REQUIRE(run("coverage-curve --config " + cfg + " --out " + s.dir.string()) == 0);
    const auto l = lines(s.dir / "coverage_curve.csv");
    REQUIRE(l.size() == 12);
    double prev = 2.0;
    for (std::size_t i = 2; i < l.size(); ++i) {
        const double v = std::stod(l[i].substr(l[i].find(',') + 1));
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("shipped sample configs load") {
    for (const char* name : {"default.json", "interference_probe.json", "small_validation.json"}) {
        Scratch s(std::string("sample_") + name);
        CHECK(run(std::string("layout --config ") + UAVCOV_SOURCE_DIR + "/configs/" + name + " --out " +
                  s.dir.string()) == 0);
    }
}
