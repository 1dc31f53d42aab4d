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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "secomm/config.hpp"
#include "secomm/errors.hpp"
#include "secomm/harness.hpp"
#include "secomm/solver.hpp"

namespace py = pybind11;
using namespace secomm;

namespace {

py::dict solve(const std::string& config_json) {
    const auto cfg = config::parse_config(config_json, "<python>");
    const auto sc = harness::generate_scenario(cfg.scenario);
    solver::AllocationResult res;
    {
        py::gil_scoped_release release;
        res = solver::resource_allocation(sc, cfg.sweep.solver);
    }
    py::dict out;
    out["p_w"] = res.alloc.p;
    out["b_hz"] = res.alloc.b;
    out["s_bits"] = res.alloc.s;
    out["T_total_s"] = res.metrics.t_total;
    out["U_total"] = res.metrics.u_total;
    out["objective"] = res.metrics.objective;
    out["surrogate_objective"] = res.surrogate_objective;
    out["converged"] = res.converged;
    out["iters_outer"] = res.iters_outer;
    out["iters_fp_total"] = res.iters_fp_total;
    out["kkt_residual"] = res.residuals.max();
    return out;
}

std::string sweep_csv(const std::string& config_json) {
    const auto cfg = config::parse_config(config_json, "<python>");
    const auto axis = harness::parse_axis(cfg.axis);
    if (!axis) throw config::ConfigError("<python>: unknown axis '" + cfg.axis + "'");
    const auto values = harness::parse_values(cfg.values);
    const auto methods = harness::default_methods();
    harness::SweepResult result;
    {
        py::gil_scoped_release release;
        result = harness::sweep(cfg.scenario, *axis, values, methods, cfg.sweep);
    }
    std::ostringstream out;
    harness::write_sweep_csv(result, out);
    return out.str();
}

py::list read_sweep_csv(const std::string& text) {
    std::istringstream in(text);
    const auto result = harness::read_sweep_csv(in);
    py::list rows;
    for (const auto& r : result.rows) {
        py::dict d;
        d["axis"] = std::string(harness::axis_name(r.axis));
        d["axis_value"] = r.axis_value;
        d["method"] = std::string(harness::method_name(r.method));
        d["w1"] = r.weights.latency;
        d["w2"] = r.weights.utility;
        d["T_total_s"] = r.t_total;
        d["U_total"] = r.u_total;
        d["objective"] = r.objective;
        d["converged"] = r.converged;
        rows.append(std::move(d));
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Secure semantic-communication resource allocation";

    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
    py::register_exception<config::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def("solve", &solve, py::arg("config_json") = "{}",
          "Generate the configured scenario and solve it. Returns allocation and metrics.");
    m.def("sweep_csv", &sweep_csv, py::arg("config_json") = "{}",
          "Run the configured sweep over every method and return the CSV text.");
    m.def("read_sweep_csv", &read_sweep_csv, py::arg("text"), "Parse sweep CSV text into row dicts.");
    m.def("csv_header", [] { return std::string(harness::kCsvHeader); });
    m.def("version", &harness::version_string);
}
