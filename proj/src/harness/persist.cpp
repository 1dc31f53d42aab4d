// SPDX-License-Identifier: Apache-2.0
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

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "secomm/harness.hpp"

#ifndef SECOMM_VERSION
#define SECOMM_VERSION "unknown"
#endif

namespace secomm::harness {
namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

double parse_double(const std::string& s, std::size_t line_no) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
}

int parse_int(const std::string& s, std::size_t line_no) {
    const double v = parse_double(s, line_no);
    if (v != static_cast<double>(static_cast<int>(v)))
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected integer, got '" + s + "'");
    return static_cast<int>(v);
}

}  // namespace

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : result.rows) {
        out << axis_name(r.axis) << ',' << fmt_double(r.axis_value) << ',' << method_name(r.method) << ','
            << fmt_double(r.weights.latency) << ',' << fmt_double(r.weights.utility) << ','
            << fmt_double(r.t_total) << ',' << fmt_double(r.u_total) << ',' << fmt_double(r.objective) << ','
            << (r.converged ? 1 : 0) << ',' << r.iters_outer << ',' << r.iters_fp_total << ','
            << fmt_double(r.wall_ms) << '\n';
    }
}

SweepResult read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw std::runtime_error("csv: unexpected header '" + line + "'");

    SweepResult result;
    bool have_axis = false;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv_line(line);
        if (f.size() != 12)
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 12 fields, got " +
                                     std::to_string(f.size()));
        SweepRow r;
        const auto axis = parse_axis(f[0]);
        const auto method = parse_method(f[2]);
        if (!axis) throw std::runtime_error("csv line " + std::to_string(line_no) + ": unknown axis '" + f[0] + "'");
        if (!method)
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": unknown method '" + f[2] + "'");
        r.axis = *axis;
        r.axis_value = parse_double(f[1], line_no);
        r.method = *method;
        r.weights = {parse_double(f[3], line_no), parse_double(f[4], line_no)};
        r.t_total = parse_double(f[5], line_no);
        r.u_total = parse_double(f[6], line_no);
        r.objective = parse_double(f[7], line_no);
        r.converged = parse_int(f[8], line_no) != 0;
        r.iters_outer = parse_int(f[9], line_no);
        r.iters_fp_total = parse_int(f[10], line_no);
        r.wall_ms = parse_double(f[11], line_no);

        if (!have_axis) {
            result.axis = r.axis;
            have_axis = true;
        } else if (r.axis != result.axis) {
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": mixed axes");
        }
        if (result.values.empty() || result.values.back() != r.axis_value) result.values.push_back(r.axis_value);
        result.wall_ms.push_back(r.wall_ms);
        result.rows.push_back(r);
    }
    return result;
}

std::string version_string() { return SECOMM_VERSION; }

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void persist(const SweepResult& result, const RunManifest& manifest, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());

    const auto csv_path = dir / "sweep.csv";
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + csv_path.string() + " for writing");
        write_sweep_csv(result, out);
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + csv_path.string());
    }

    nlohmann::ordered_json j;
    j["spec"] = nlohmann::ordered_json::parse(manifest.spec_json.empty() ? "{}" : manifest.spec_json);
    j["config"] = nlohmann::ordered_json::parse(manifest.config_json.empty() ? "{}" : manifest.config_json);
    j["seed"] = manifest.seed;
    j["version"] = manifest.version;
    j["started_utc"] = manifest.started_utc;
    j["wall_ms"] = result.wall_ms;
    j["errors"] = result.errors;

    const auto man_path = dir / "manifest.json";
    std::ofstream out(man_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + man_path.string() + " for writing");
    out << j.dump(2) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + man_path.string());
}

}  // namespace secomm::harness
