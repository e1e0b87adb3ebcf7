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

#include "uavcov/oracle.hpp"

using namespace uavcov;
using Catch::Approx;

namespace {

LinkTable table(std::vector<LinkRow> rows) {
    LinkTable t;
    t.rows = std::move(rows);
    sort_link_rows(t.rows);
    return t;
}

} // namespace

TEST_CASE("uplink brute force on two GBSs") {
    const auto t = table({{1, 10.0, 1.0, 0.6, 0}, {2, 8.0, 2.0, 0.5, 0}});
    const auto m = oracle::uplink_bruteforce_pmf(t, 1.0).masses();
    REQUIRE(m.size() == 3);
    CHECK(m[0].value == 2.0);
    CHECK(m[0].probability == Approx(0.2));
    CHECK(m[1].value == 8.0);
    CHECK(m[1].probability == Approx(0.2));
    CHECK(m[2].value == 10.0);
    CHECK(m[2].probability == Approx(0.6));
}

TEST_CASE("uplink brute force with no covered GBS is a mass at zero") {
    const auto m = oracle::uplink_bruteforce_pmf(table({{0, 0.0, 0.0, 0.3, 0}}), 5.0).masses();
    REQUIRE(m.size() == 1);
    CHECK(m[0].value == 0.0);
    CHECK(m[0].probability == Approx(1.0));
}

TEST_CASE("downlink joint enumeration by hand") {
    // GBS 1 serves in LoS (p=1); GBS 2 shares its band, GBS 3 does not.
    const auto t = table({{1, 8.0, 1.0, 1.0, 0}, {2, 4.0, 2.0, 0.5, 0}, {3, 6.0, 3.0, 0.0, 1}});
    const auto c = oracle::downlink_joint_enumeration_cdf(t, [](int) { return 0.25; }, 1.0);
    const auto m = c.masses();
    // gamma = 8 / (1 + I), I in {0 (0.75), 2 (0.125), 4 (0.125)}
    REQUIRE(m.size() == 3);
    CHECK(m[0].value == Approx(8.0 / 5.0));
    CHECK(m[0].probability == Approx(0.125));
    CHECK(m[1].value == Approx(8.0 / 3.0));
    CHECK(m[1].probability == Approx(0.125));
    CHECK(m[2].value == Approx(8.0));
    CHECK(m[2].probability == Approx(0.75));
}

TEST_CASE("oracles refuse oversized tables") {
    std::vector<LinkRow> rows;
    for (int i = 0; i < 21; ++i) rows.push_back({i, 1.0 + i, 0.5, 0.5, 0});
    CHECK_THROWS_AS(oracle::uplink_bruteforce_pmf(table(rows), 1.0), CapacityError);
}
