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

#include "uavcov/antenna.hpp"
#include "uavcov/channel.hpp"
#include "uavcov/config.hpp"
#include "uavcov/coverage.hpp"
#include "uavcov/csv.hpp"
#include "uavcov/distribution.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/geometry.hpp"
#include "uavcov/gpm.hpp"
#include "uavcov/oracle.hpp"
#include "uavcov/units.hpp"
