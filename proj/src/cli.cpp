#include "allee/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "allee/format.hpp"

namespace allee {

using nlohmann::json;

namespace {

json params_json(const ModelParams& p)
{
    return json{{"r", p.r}, {"k", p.K}, {"w", p.w}, {"h", p.h}, {"a", p.a}, {"b", p.b}, {"c", p.c}, {"delta", p.delta}};
}

json equilibrium_json(const Equilibrium& e)
{
    return json{{"label", to_string(e.label)}, {"kind", to_string(e.kind)}, {"N", e.state.N}, {"P", e.state.P}};
}

json critical_json(const CriticalPoint& cp)
{
    return json{{"kind", to_string(cp.kind)}, {"param", cp.param_name}, {"value", cp.value},
                {"method", to_string(cp.method)}};
}

ModelParams with(const ModelParams& p, const std::string& name, double v)
{
    ModelParams q = p;
    q.set(name, v);
    return q;
}

void cmd_equilibria(const RunConfig& cfg, std::ostream& out)
{
    const ExistenceReport rep = all_equilibria(cfg.params);
    json j;
    j["params"] = params_json(cfg.params);
    j["regime"] = to_string(allee_regime(cfg.params));
    j["allee_scale_warning"] = cfg.params.allee_scale_warning();
    j["D1"] = rep.D1;
    j["D2"] = rep.D2;
    j["equilibria"] = json::array();
    for (const auto& e : rep.equilibria) j["equilibria"].push_back(equilibrium_json(e));
    j["notes"] = rep.notes;
    out << j.dump(2) << '\n';
}

void cmd_stability(const RunConfig& cfg, std::ostream& out)
{
    json j;
    j["params"] = params_json(cfg.params);
    j["reports"] = json::array();
    for (const auto& e : all_equilibria(cfg.params).equilibria) {
        const StabilityReport rep = classify(cfg.params, e);
        json r = equilibrium_json(e);
        r["eigenvalues"] = json::array({json{{"re", rep.eigen.lambda1.real()}, {"im", rep.eigen.lambda1.imag()}},
                                        json{{"re", rep.eigen.lambda2.real()}, {"im", rep.eigen.lambda2.imag()}}});
        r["trace"] = rep.trace;
        r["det"] = rep.det;
        r["classification"] = to_string(rep.classification);
        r["theorem_note"] = rep.theorem_note;
        j["reports"].push_back(r);
    }
    out << j.dump(2) << '\n';
}

void cmd_simulate(const RunConfig& cfg, std::ostream& out)
{
    const Trajectory traj = integrate(cfg.params, cfg.initial, cfg.integrator);
    out << "t,N,P\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out << format_double(traj.times[i]) << ',' << format_double(traj.states[i].N) << ','
            << format_double(traj.states[i].P) << '\n';
    }
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out)
{
    const auto& sw = cfg.sweep;
    const auto records =
        sweep(cfg.params, sw.param, sw.lo, sw.hi, sw.steps, cfg.initial, cfg.integrator, cfg.classifier);
    diagram_export(out, records, critical_points_in_range(cfg));
}

void cmd_critical(const RunConfig& cfg, std::ostream& out)
{
    const auto& sw = cfg.sweep;
    std::vector<std::string> notes;
    std::vector<CriticalPoint> points = critical_points_in_range(cfg, &notes);
    for (const auto& fp : fold_points(cfg.params, sw.param)) points.push_back(fp);

    const auto scan = stability_scan(cfg.params, sw.param, sw.lo, sw.hi, sw.steps);
    for (const auto& cp : sweep_detect(scan, EquilibriumLabel::E1, CriticalKind::Transcritical)) points.push_back(cp);
    for (const auto& cp : sweep_detect(scan, EquilibriumLabel::E5, CriticalKind::Hopf)) points.push_back(cp);

    json j;
    j["params"] = params_json(cfg.params);
    j["param"] = sw.param;
    j["range"] = json::array({sw.lo, sw.hi});
    j["steps"] = sw.steps;
    j["critical_points"] = json::array();
    for (const auto& cp : points) j["critical_points"].push_back(critical_json(cp));
    j["notes"] = notes;
    out << j.dump(2) << '\n';
}

void cmd_basin(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const BasinGrid g = compute_basin(cfg.params, cfg.grid, cfg.integrator, cfg.classifier);
    basin_export(out, g);
    const BasinSummary summary = bistability_report(g);
    for (const auto& a : summary.attractors) {
        err << "basin: " << a.label << " " << a.cells << " cells (" << format_double(100.0 * a.fraction) << "%)\n";
    }
    err << "basin: " << summary.boundary_cells.size() << " boundary cells\n";
}

}  // namespace

std::vector<CriticalPoint> critical_points_in_range(const RunConfig& cfg, std::vector<std::string>* notes)
{
    const auto& sw = cfg.sweep;
    std::vector<CriticalPoint> points;
    auto note = [&](const std::string& s) {
        if (notes != nullptr) notes->push_back(s);
    };

    if (sw.param == "c" || sw.param == "b") {
        try {
            const CriticalPoint tc = transcritical_point(cfg.params, sw.param);
            if (tc.value >= sw.lo && tc.value <= sw.hi) points.push_back(tc);
            else note("transcritical point " + format_double(tc.value) + " lies outside the sweep range");
        } catch (const NumericalError& ex) {
            note(std::string("transcritical point unavailable: ") + ex.what());
        }
    }

    std::vector<std::pair<double, double>> brackets;
    if (sw.hopf_lo) {
        brackets.emplace_back(*sw.hopf_lo, *sw.hopf_hi);
    } else {
        const auto values = sweep_values(sw.lo, sw.hi, sw.steps);
        double prev_v = 0.0;
        double prev_tr = std::nan("");
        for (double v : values) {
            double tr = std::nan("");
            try {
                tr = coexistence_trace(with(cfg.params, sw.param, v));
            } catch (const NumericalError&) {
            }
            if (std::isfinite(tr) && std::isfinite(prev_tr) && (tr > 0.0) != (prev_tr > 0.0)) {
                brackets.emplace_back(prev_v, v);
            }
            prev_v = v;
            prev_tr = tr;
        }
    }
    for (const auto& [lo, hi] : brackets) {
        try {
            points.push_back(hopf_point(cfg.params, sw.param, lo, hi));
        } catch (const NumericalError& ex) {
            note("Hopf search in [" + format_double(lo) + ", " + format_double(hi) + "] failed: " + ex.what());
        }
    }
    if (brackets.empty()) note("tr(J_E5) does not change sign over the sweep range");
    return points;
}

int run_subcommand(std::string_view name, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        if (name == "equilibria") cmd_equilibria(cfg, out);
        else if (name == "stability") cmd_stability(cfg, out);
        else if (name == "simulate") cmd_simulate(cfg, out);
        else if (name == "sweep") cmd_sweep(cfg, out);
        else if (name == "critical") cmd_critical(cfg, out);
        else if (name == "basin") cmd_basin(cfg, out, err);
        else {
            err << "error: unknown subcommand '" << name << "'\n";
            return exit_validation;
        }
    } catch (const ValidationError& ex) {
        err << "error: " << ex.what() << '\n';
        return exit_validation;
    } catch (const NumericalError& ex) {
        err << "numerical failure: " << ex.what() << '\n';
        return exit_numerical;
    } catch (const std::ios_base::failure& ex) {
        err << "I/O failure: " << ex.what() << '\n';
        return exit_numerical;
    }
    if (cfg.params.allee_scale_warning()) {
        err << "warning: w >= K; the Allee half-fitness size is usually below the carrying capacity\n";
    }
    return exit_ok;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Predator-prey model with additive Allee effect and Holling type IV predation"};
    app.footer(
        "Configuration precedence (highest first): --set overrides, config file, built-in defaults.\n"
        "Model parameters r, k, w, h, a, b, c, delta are required; everything else has a default.\n"
        "Exit codes: 0 success, 1 input/validation error, 2 numerical failure.");
    app.require_subcommand(1, 1);
    app.fallthrough();

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    app.add_option("-c,--config", config_path, "Config file ([model], [integrator], [sweep], [grid], [initial])")
        ->check(CLI::ExistingFile);
    app.add_option("-s,--set", overrides, "Override as section.key=value (bare key means [model]); repeatable");
    app.add_option("-o,--out", out_path, "Write the report here instead of standard output");

    const char* descriptions[][2] = {
        {"equilibria", "Equilibria and existence report (JSON)"},
        {"stability", "Local stability of every equilibrium (JSON)"},
        {"simulate", "Trajectory from [initial] as CSV t,N,P"},
        {"sweep", "Bifurcation diagram over [sweep] as CSV"},
        {"critical", "Transcritical, Hopf and fold points of the [sweep] parameter (JSON)"},
        {"basin", "Basin-of-attraction grid over [grid] as CSV N0,P0,attractor_label"},
    };
    for (const auto& d : descriptions) app.add_subcommand(d[0], d[1]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << '\n';
        return exit_validation;
    }
    const std::string name = app.get_subcommands().front()->get_name();

    RunConfig cfg;
    try {
        RawConfig raw;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            std::stringstream buf;
            buf << in.rdbuf();
            raw = parse_config_text(buf.str());
        }
        for (const auto& o : overrides) apply_override(raw, o);
        cfg = build_config(raw);
    } catch (const ValidationError& ex) {
        err << "error: " << ex.what() << '\n';
        return exit_validation;
    }

    if (out_path.empty()) return run_subcommand(name, cfg, out, err);
    std::ofstream file(out_path);
    if (!file) {
        err << "error: cannot open '" << out_path << "' for writing\n";
        return exit_validation;
    }
    return run_subcommand(name, cfg, file, err);
}

}  // namespace allee
