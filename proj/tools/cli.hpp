// Copyright 2026 The qlinflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QLINFLOW_TOOLS_CLI_HPP
#define QLINFLOW_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qlinflow/flows.hpp"
#include "qlinflow/gisin.hpp"

namespace qlinflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCertificationFailed = 3;

enum class Command { Evolve, Certify, Gisin, Compare };
enum class Format { Csv, Json };

/// Fully resolved command-line request. Lists are already converted to radians / time units.
struct RunConfig {
    Command command = Command::Evolve;
    FlowKind flow = FlowKind::QuasiLinearBoost;
    FlowParams params{Vec3::UnitX(), 1.0};
    BlochVector xi;
    std::vector<double> times;
    std::vector<double> phis;
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    Weighting weighting = Weighting::PaperLambda;
    Format format = Format::Csv;
    std::string output;  // empty: standard output
    unsigned rk4_steps = 0;
    /// compare: explicit ensemble; drawn from `seed` when absent.
    std::optional<BlochVector> xi_a;
    std::optional<BlochVector> xi_b;
    std::optional<double> lambda;
    unsigned threads = 0;
};

/// Column lists of the CSV outputs, in order.
const std::vector<std::string> &evolve_columns(bool with_rk4);
const std::vector<std::string> &gisin_columns();
const std::vector<std::string> &compare_columns();

int cmd_evolve(const RunConfig &cfg, std::ostream &out);
/// Returns kExitCertificationFailed when violations were found.
int cmd_certify(const RunConfig &cfg, std::ostream &out);
/// Writes rows to `out` and a one-line summary to `log`.
int cmd_gisin(const RunConfig &cfg, std::ostream &out, std::ostream &log);
int cmd_compare(const RunConfig &cfg, std::ostream &out);

/// Parses arguments (without the program name), resolves defaults, dispatches, and returns the exit code.
/// Results go to cfg.output when set, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qlinflow::cli

#endif
