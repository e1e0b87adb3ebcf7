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
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "uavcov/errors.hpp"
#include "uavcov/geometry.hpp"

namespace uavcov::csv {

// 12 significant digits.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

using Cell = std::variant<double, long long, std::string>;

inline std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

// Writes "# config_hash=<hash>", the header row, then data rows.
class Writer {
public:
    Writer(const std::string& path, const std::string& config_hash, const std::vector<std::string>& header)
        : path_(path), out_(path) {
        if (!out_) throw std::runtime_error("cannot write '" + path + "'");
        out_ << "# config_hash=" << config_hash << '\n';
        write_line(header);
    }

    void row(const std::vector<Cell>& cells) {
        std::vector<std::string> s;
        s.reserve(cells.size());
        for (const auto& c : cells) s.push_back(format_cell(c));
        write_line(s);
    }

    void close() {
        out_.close();
        if (!out_) throw std::runtime_error("error while writing '" + path_ + "'");
    }

private:
    void write_line(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << fields[i];
        out_ << '\n';
    }

    std::string path_;
    std::ofstream out_;
};

inline void write_layout(const std::string& path, const NetworkLayout& layout, const std::string& config_hash) {
    Writer w(path, config_hash, {"id", "x_m", "y_m", "band"});
    for (const auto& s : layout.sites) {
        w.row({static_cast<long long>(s.id), s.x, s.y, static_cast<long long>(s.band)});
    }
    w.close();
}

// Reads a file produced by write_layout. Comment lines start with '#'.
inline std::vector<GbsSite> read_layout(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open layout file '" + path + "'");
    std::vector<GbsSite> sites;
    std::string line;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::string where = path + ":" + std::to_string(lineno);
        if (!header) {
            if (line != "id,x_m,y_m,band") throw ConfigError(where + ": expected header 'id,x_m,y_m,band'");
            header = true;
            continue;
        }
        std::istringstream ss(line);
        std::string f[4];
        for (int k = 0; k < 4; ++k) {
            if (!std::getline(ss, f[k], ',')) throw ConfigError(where + ": expected 4 fields");
        }
        std::string rest;
        if (std::getline(ss, rest)) throw ConfigError(where + ": expected 4 fields");
        try {
            std::size_t pos = 0;
            GbsSite s;
            s.id = std::stoi(f[0], &pos);
            if (pos != f[0].size()) throw std::invalid_argument("id");
            s.x = std::stod(f[1], &pos);
            if (pos != f[1].size()) throw std::invalid_argument("x_m");
            s.y = std::stod(f[2], &pos);
            if (pos != f[2].size()) throw std::invalid_argument("y_m");
            s.band = std::stoi(f[3], &pos);
            if (pos != f[3].size()) throw std::invalid_argument("band");
            sites.push_back(s);
        } catch (const std::exception&) {
            throw ConfigError(where + ": malformed row '" + line + "'");
        }
    }
    if (!header) throw ConfigError(path + ": missing header row");
    return sites;
}

} // namespace uavcov::csv
