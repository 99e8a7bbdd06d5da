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

#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qlinflow/quasilin.hpp"
#include "qlinflow/sampling.hpp"

namespace qlinflow::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json vec_json(const Vec3 &v) {
    return Json::array({v.x(), v.y(), v.z()});
}

void write_csv_row(std::ostream &out, const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); i++) {
        out << (i ? "," : "") << cells[i];
    }
    out << '\n';
}

Json header_json(const RunConfig &cfg, std::string_view command) {
    Json j;
    j["command"] = command;
    j["flow"] = to_string(cfg.flow);
    j["e"] = vec_json(cfg.params.e());
    j["g"] = cfg.params.g();
    return j;
}

std::vector<double> linspace_step(double lo, double hi, double step) {
    std::vector<double> out;
    for (int k = 0; lo + k * step <= hi + 1e-12; k++) {
        out.push_back(lo + k * step);
    }
    return out;
}

}  // namespace

const std::vector<std::string> &evolve_columns(bool with_rk4) {
    static const std::vector<std::string> base{"t", "n_x", "n_y", "n_z", "norm", "entropy"};
    static const std::vector<std::string> rk4 = [] {
        auto c = base;
        c.insert(c.end(), {"rk4_x", "rk4_y", "rk4_z", "rk4_mismatch"});
        return c;
    }();
    return with_rk4 ? rk4 : base;
}

const std::vector<std::string> &gisin_columns() {
    static const std::vector<std::string> c{"phi1", "phi2", "gt", "weighting", "distance"};
    return c;
}

const std::vector<std::string> &compare_columns() {
    static const std::vector<std::string> c{
        "t",
        "gt",
        "boost_x",
        "boost_y",
        "boost_z",
        "boost_lambda_star",
        "boost_lambda_closed",
        "boost_residual",
        "weinberg_x",
        "weinberg_y",
        "weinberg_z",
        "weinberg_lambda_star",
        "weinberg_residual",
    };
    return c;
}

int cmd_evolve(const RunConfig &cfg, std::ostream &out) {
    const bool rk4 = cfg.rk4_steps > 0;
    const auto &cols = evolve_columns(rk4);
    Json rows = Json::array();
    if (cfg.format == Format::Csv) {
        write_csv_row(out, cols);
    }
    for (double t : cfg.times) {
        BlochVector n = evolve(cfg.flow, cfg.xi, cfg.params, t);
        std::vector<double> vals{t, n.x(), n.y(), n.z(), n.norm(), von_neumann_entropy(bloch_to_density(n))};
        if (rk4) {
            Vec3 r = rk4_integrate(cfg.flow, cfg.xi, cfg.params, t, cfg.rk4_steps);
            vals.insert(vals.end(), {r.x(), r.y(), r.z(), (r - n.vec()).norm()});
        }
        if (cfg.format == Format::Csv) {
            std::vector<std::string> cells;
            for (double v : vals) {
                cells.push_back(num(v));
            }
            write_csv_row(out, cells);
        } else {
            Json row;
            for (std::size_t i = 0; i < cols.size(); i++) {
                row[cols[i]] = vals[i];
            }
            rows.push_back(row);
        }
    }
    if (cfg.format == Format::Json) {
        Json j = header_json(cfg, "evolve");
        j["xi"] = vec_json(cfg.xi.vec());
        if (rk4) {
            j["rk4_steps"] = cfg.rk4_steps;
        }
        j["rows"] = rows;
        out << j.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_certify(const RunConfig &cfg, std::ostream &out) {
    CertReport rep =
        certify_quasilinearity(cfg.flow, cfg.params, cfg.samples, cfg.times, cfg.tol, cfg.seed, cfg.threads);
    Json j = header_json(cfg, "certify");
    j["samples"] = rep.samples;
    j["seed"] = rep.seed;
    j["tol"] = rep.tol;
    j["t_grid"] = rep.t_grid;
    j["violations"] = rep.violations;
    j["max_residual"] = rep.max_residual;
    j["worst_case"] = {
        {"xi_a", vec_json(rep.worst_case.xi_a)},
        {"xi_b", vec_json(rep.worst_case.xi_b)},
        {"lambda", rep.worst_case.lambda},
        {"t", rep.worst_case.t},
    };
    j["degenerate"] = rep.degenerate;
    j["min_lambda_star"] = rep.min_lambda_star;
    j["max_lambda_star"] = rep.max_lambda_star;
    j["max_lambda_mismatch"] = rep.max_lambda_mismatch ? Json(*rep.max_lambda_mismatch) : Json(nullptr);
    j["passed"] = rep.violations == 0;
    out << j.dump(2) << '\n';
    return rep.violations == 0 ? kExitOk : kExitCertificationFailed;
}

int cmd_gisin(const RunConfig &cfg, std::ostream &out, std::ostream &log) {
    ExperimentConfig exp;
    exp.kind = cfg.flow;
    exp.params = cfg.params;
    exp.phis = cfg.phis;
    exp.times = cfg.times;
    exp.weighting = cfg.weighting;
    std::vector<SignalRow> rows = sweep(exp, cfg.threads);

    double max_distance = 0;
    for (const auto &r : rows) {
        max_distance = std::max(max_distance, r.distance);
    }
    if (cfg.format == Format::Csv) {
        write_csv_row(out, gisin_columns());
        for (const auto &r : rows) {
            write_csv_row(out, {num(r.phi1), num(r.phi2), num(r.gt), std::string(to_string(r.weighting)), num(r.distance)});
        }
    } else {
        Json j = header_json(cfg, "gisin");
        j["weighting"] = to_string(cfg.weighting);
        Json arr = Json::array();
        for (const auto &r : rows) {
            arr.push_back({{"phi1", r.phi1}, {"phi2", r.phi2}, {"gt", r.gt}, {"weighting", to_string(r.weighting)},
                           {"distance", r.distance}});
        }
        j["rows"] = std::move(arr);
        j["max_distance"] = max_distance;
        out << j.dump(2) << '\n';
    }
    log << "gisin: flow=" << to_string(cfg.flow) << " weighting=" << to_string(cfg.weighting)
        << " rows=" << rows.size() << " max_distance=" << num(max_distance) << '\n';
    return kExitOk;
}

int cmd_compare(const RunConfig &cfg, std::ostream &out) {
    EnsembleSample s = cfg.xi_a ? EnsembleSample{*cfg.xi_a, *cfg.xi_b, *cfg.lambda} : draw_ensemble_sample(cfg.seed, 0);
    BlochVector xi = s.mixed();
    const auto &cols = compare_columns();
    Json rows = Json::array();
    if (cfg.format == Format::Csv) {
        write_csv_row(out, cols);
    }
    for (double t : cfg.times) {
        std::vector<double> vals{t, cfg.params.g() * t};
        for (FlowKind kind : {FlowKind::QuasiLinearBoost, FlowKind::Weinberg}) {
            Vec3 na = evolve(kind, s.xi_a, cfg.params, t).vec();
            Vec3 nb = evolve(kind, s.xi_b, cfg.params, t).vec();
            Vec3 n = evolve(kind, xi, cfg.params, t).vec();
            LambdaFit fit = fit_lambda(na, nb, n);
            vals.insert(vals.end(), {n.x(), n.y(), n.z(), fit.lambda_star});
            if (kind == FlowKind::QuasiLinearBoost) {
                vals.push_back(lambda_t_closed(s.lambda, s.xi_a, xi, cfg.params, t));
            }
            vals.push_back(fit.residual);
        }
        if (cfg.format == Format::Csv) {
            std::vector<std::string> cells;
            for (double v : vals) {
                cells.push_back(num(v));
            }
            write_csv_row(out, cells);
        } else {
            Json row;
            for (std::size_t i = 0; i < cols.size(); i++) {
                row[cols[i]] = vals[i];
            }
            rows.push_back(row);
        }
    }
    if (cfg.format == Format::Json) {
        Json j = header_json(cfg, "compare");
        j["xi_a"] = vec_json(s.xi_a.vec());
        j["xi_b"] = vec_json(s.xi_b.vec());
        j["lambda"] = s.lambda;
        j["rows"] = rows;
        out << j.dump(2) << '\n';
    }
    return kExitOk;
}

namespace {

BlochVector parse_bloch(const std::vector<double> &v, const char *flag) {
    if (v.size() != 3) {
        throw UsageError(std::string(flag) + " expects three comma-separated components");
    }
    try {
        return BlochVector(v[0], v[1], v[2]);
    } catch (const InvalidState &ex) {
        throw UsageError(std::string(flag) + ": " + ex.what());
    }
}

unsigned threads_from_env() {
    const char *raw = std::getenv("QLINFLOW_THREADS");
    if (raw == nullptr) {
        return 0;
    }
    char *end = nullptr;
    long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v <= 0 || v > 4096) {
        throw UsageError("QLINFLOW_THREADS must be a positive integer");
    }
    return static_cast<unsigned>(v);
}

struct RawOptions {
    std::string flow = "boost";
    std::vector<double> xi{0, 0, 0};
    std::vector<double> e{1, 0, 0};
    double g = 1.0;
    std::vector<double> t;
    std::vector<double> phi;
    bool degrees = false;
    long long samples = 1000;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    std::string weighting = "paper-lambda";
    std::string format;
    std::string output;
    long long rk4_steps = 0;
    std::vector<double> xi_a;
    std::vector<double> xi_b;
    std::optional<double> lambda;
};

RunConfig resolve(Command command, const RawOptions &raw) {
    RunConfig cfg;
    cfg.command = command;
    try {
        cfg.flow = parse_flow_kind(raw.flow);
        cfg.weighting = parse_weighting(raw.weighting);
    } catch (const std::invalid_argument &ex) {
        throw UsageError(ex.what());
    }
    if (raw.e.size() != 3) {
        throw UsageError("--e expects three comma-separated components");
    }
    try {
        cfg.params = FlowParams::normalized(Vec3(raw.e[0], raw.e[1], raw.e[2]), raw.g);
    } catch (const InvalidState &ex) {
        throw UsageError(ex.what());
    }
    cfg.xi = parse_bloch(raw.xi, "--xi");

    if (!raw.t.empty()) {
        cfg.times = raw.t;
    } else {
        switch (command) {
            case Command::Evolve:
            case Command::Compare:
                cfg.times = linspace_step(0.0, 5.0, 0.5);
                break;
            case Command::Certify:
                cfg.times = {0.5, 1.0, 3.0};
                break;
            case Command::Gisin:
                cfg.times = default_gt_grid();
                break;
        }
        // Defaults are given in units of g·t.
        for (double &t : cfg.times) {
            t /= cfg.params.g();
        }
    }
    for (double t : cfg.times) {
        if (!std::isfinite(t)) {
            throw UsageError("--t values must be finite");
        }
    }

    cfg.phis = raw.phi.empty() ? default_phi_grid() : raw.phi;
    if (raw.degrees && !raw.phi.empty()) {
        for (double &p : cfg.phis) {
            p *= std::numbers::pi / 180.0;
        }
    }
    for (double p : cfg.phis) {
        if (!std::isfinite(p)) {
            throw UsageError("--phi values must be finite");
        }
    }

    if (raw.samples < 1) {
        throw UsageError("--samples must be at least 1");
    }
    cfg.samples = static_cast<std::size_t>(raw.samples);
    cfg.seed = raw.seed;
    if (!(raw.tol > 0.0) || !std::isfinite(raw.tol)) {
        throw UsageError("--tol must be positive");
    }
    cfg.tol = raw.tol;
    if (raw.rk4_steps < 0 || raw.rk4_steps > 100000000) {
        throw UsageError("--rk4-steps must be between 0 and 1e8");
    }
    cfg.rk4_steps = static_cast<unsigned>(raw.rk4_steps);

    if (raw.format.empty()) {
        cfg.format = command == Command::Certify ? Format::Json : Format::Csv;
    } else if (raw.format == "csv") {
        if (command == Command::Certify) {
            throw UsageError("certify reports are JSON only");
        }
        cfg.format = Format::Csv;
    } else if (raw.format == "json") {
        cfg.format = Format::Json;
    } else {
        throw UsageError("--format must be csv or json");
    }
    cfg.output = raw.output;

    bool any_explicit = !raw.xi_a.empty() || !raw.xi_b.empty() || raw.lambda.has_value();
    if (any_explicit) {
        if (raw.xi_a.empty() || raw.xi_b.empty() || !raw.lambda) {
            throw UsageError("--xi-a, --xi-b and --lambda must be given together");
        }
        cfg.xi_a = parse_bloch(raw.xi_a, "--xi-a");
        cfg.xi_b = parse_bloch(raw.xi_b, "--xi-b");
        if (!(*raw.lambda >= 0.0 && *raw.lambda <= 1.0)) {
            throw UsageError("--lambda must lie in [0, 1]");
        }
        cfg.lambda = raw.lambda;
    }
    cfg.threads = threads_from_env();
    return cfg;
}

int dispatch(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    switch (cfg.command) {
        case Command::Evolve:
            return cmd_evolve(cfg, out);
        case Command::Certify:
            return cmd_certify(cfg, out);
        case Command::Gisin:
            return cmd_gisin(cfg, out, err);
        case Command::Compare:
            return cmd_compare(cfg, out);
    }
    return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Nonlinear qubit flows, quasi-linearity certification and the Gisin signaling experiment"};
    app.name("qlinflow");
    RawOptions raw;

    app.add_option("--flow", raw.flow, "Flow law: boost or weinberg")->capture_default_str();
    app.add_option("--xi", raw.xi, "Initial Bloch vector x,y,z")->delimiter(',')->capture_default_str();
    app.add_option("--e", raw.e, "Flow direction x,y,z (normalized)")->delimiter(',')->capture_default_str();
    app.add_option("--g", raw.g, "Flow rate g > 0")->capture_default_str();
    app.add_option("--t", raw.t, "Comma-separated times")->delimiter(',');
    app.add_option("--phi", raw.phi, "Comma-separated polarization angles (radians)")->delimiter(',');
    app.add_flag("--degrees", raw.degrees, "Interpret --phi in degrees");
    app.add_option("--samples", raw.samples, "Ensemble draws for certify")->capture_default_str();
    app.add_option("--seed", raw.seed, "Random seed")->capture_default_str();
    app.add_option("--tol", raw.tol, "Certification tolerance")->capture_default_str();
    app.add_option("--weighting", raw.weighting, "paper-lambda or frequency")->capture_default_str();
    app.add_option("--format", raw.format, "csv or json");
    app.add_option("--output,-o", raw.output, "Output file (default: standard output)");
    app.add_option("--rk4-steps", raw.rk4_steps, "evolve: add RK4 columns with this many steps");
    app.add_option("--xi-a", raw.xi_a, "compare: first ensemble member")->delimiter(',');
    app.add_option("--xi-b", raw.xi_b, "compare: second ensemble member")->delimiter(',');
    app.add_option("--lambda", raw.lambda, "compare: weight of the first member");
    app.set_config("--config", "", "Flat key=value file with the same keys as the flags");
    app.allow_config_extras(CLI::config_extras_mode::error);

    Command command = Command::Evolve;
    auto add = [&](const char *name, const char *help, Command c) {
        app.add_subcommand(name, help)->fallthrough()->callback([&command, c] { command = c; });
    };
    add("evolve", "Trajectory of one Bloch vector", Command::Evolve);
    add("certify", "Empirical quasi-linearity certification (JSON report)", Command::Certify);
    add("gisin", "Gisin signaling sweep over polarization settings and times", Command::Gisin);
    add("compare", "Boost and Weinberg flows side by side on one ensemble", Command::Compare);
    app.require_subcommand(1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    }

    try {
        RunConfig cfg = resolve(command, raw);
        if (cfg.output.empty()) {
            return dispatch(cfg, out, err);
        }
        std::ostringstream buffer;
        int code = dispatch(cfg, buffer, err);
        std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
        if (!file || !(file << buffer.str()) || !file.flush()) {
            err << "error: cannot write " << cfg.output << '\n';
            return kExitUsage;
        }
        return code;
    } catch (const UsageError &ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument &ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace qlinflow::cli
