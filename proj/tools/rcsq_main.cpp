// Command-line front end: steady states, variance breakdowns, parameter
// sweeps and the canned figure-reproduction datasets.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rcsq/rcsq.hpp"

namespace {

using nlohmann::json;

struct GlobalOptions {
    std::string config_path;
    std::string format = "csv";
    std::string out_path;
    std::optional<double> cutoff;
    std::optional<double> rel_tol;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

rcsq::Config load_config(const GlobalOptions& g) {
    rcsq::Config cfg;
    if (!g.config_path.empty()) {
        std::ifstream in(g.config_path);
        if (!in) throw std::invalid_argument("cannot open config: " + g.config_path);
        cfg = rcsq::parse_config(in);
    }
    if (g.cutoff) cfg.quadrature.cutoff_factor = *g.cutoff;
    if (g.rel_tol) cfg.quadrature.rel_tol = *g.rel_tol;
    cfg.sweep.fixed = cfg.physical;
    return cfg;
}

// Writes to --out when given, stdout otherwise.
void emit(const GlobalOptions& g, const std::string& text) {
    if (g.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out_path);
    if (!out) throw std::invalid_argument("cannot open output: " + g.out_path);
    out << text;
}

std::string steady_report(const rcsq::Config& cfg, const std::string& format) {
    const auto d = rcsq::derive_params(cfg.physical);
    const auto ss = rcsq::solve_steady_state(d, cfg.physical.detuning);
    if (format == "json") {
        json j{{"q_s", ss.q_s},
               {"p_s", ss.p_s},
               {"c_s_re", ss.c_s.real()},
               {"c_s_im", ss.c_s.imag()},
               {"abs_c_s", std::abs(ss.c_s)},
               {"all_real_roots", ss.all_real_roots},
               {"multistable", ss.multistable},
               {"linearization_valid", ss.linearization_valid}};
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "q_s,p_s,c_s_re,c_s_im,abs_c_s,n_roots,multistable,linearization_valid\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%zu,%d,%d\n",
                  ss.q_s, ss.p_s, ss.c_s.real(), ss.c_s.imag(), std::abs(ss.c_s),
                  ss.all_real_roots.size(), ss.multistable ? 1 : 0,
                  ss.linearization_valid ? 1 : 0);
    out << buf;
    return out.str();
}

std::string variance_report(const rcsq::Config& cfg, const std::string& quantity,
                            const std::string& format) {
    const auto d = rcsq::derive_params(cfg.physical);
    const auto ss = rcsq::solve_steady_state(d, cfg.physical.detuning);
    const auto baths = rcsq::make_baths(d, cfg.physical.temperature);
    const rcsq::VarianceBreakdown v =
        quantity == "position"
            ? rcsq::position_variance(d, ss, cfg.physical.detuning, baths, cfg.quadrature)
            : rcsq::momentum_variance(d, ss, cfg.physical.detuning, baths, cfg.quadrature);
    if (format == "json") {
        json j{{"total", v.total},
               {"thermal_term", v.thermal_term},
               {"m_term", v.m_term},
               {"n_term", v.n_term},
               {"vacuum_term", v.vacuum_term},
               {"squeezing_percent", v.squeezing_percent},
               {"estimated_quadrature_error", v.estimated_quadrature_error},
               {"tolerance_met", v.tolerance_met}};
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "total,thermal_term,m_term,n_term,vacuum_term,squeezing_percent,"
           "quad_error,tolerance_met\n";
    char buf[320];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                  v.total, v.thermal_term, v.m_term, v.n_term, v.vacuum_term,
                  v.squeezing_percent, v.estimated_quadrature_error,
                  v.tolerance_met ? 1 : 0);
    out << buf;
    return out.str();
}

int run_rows(const GlobalOptions& g, const std::vector<rcsq::SweepRow>& rows) {
    std::ostringstream out;
    if (g.format == "json")
        rcsq::write_json(rows, out);
    else
        rcsq::write_csv(rows, out);
    emit(g, out.str());
    for (const auto& r : rows)
        if (!r.ok) return 2;
    return 0;
}

int run_figures(const GlobalOptions& g, const rcsq::Config& cfg, int which) {
    const std::filesystem::path dir = g.out_path.empty() ? "." : g.out_path;
    std::filesystem::create_directories(dir);
    const double wm_axis = cfg.physical.mech_freq / (2e6 * rcsq::constants::pi);

    rcsq::SweepSpec spec;
    spec.fixed = cfg.physical;
    spec.fixed.squeeze_r = 1.0;
    spec.points = 400;
    spec.quantity = rcsq::SweepQuantity::momentum_variance;

    std::vector<double> temps_mk;
    if (which == 1) {
        spec.axis = rcsq::SweepAxis::detuning;
        spec.start = 0.0;
        spec.stop = 2.0 * wm_axis;
        spec.fixed.pump_power = 20e-6;
        temps_mk = {1, 10, 50, 100};
    } else {
        spec.axis = rcsq::SweepAxis::power;
        spec.start = 0.0;
        spec.stop = 300.0;
        spec.fixed.detuning = cfg.physical.mech_freq;
        temps_mk = {1, 20};
    }

    int rc = 0;
    for (double t : temps_mk) {
        spec.fixed.temperature = t * 1e-3;
        const auto rows = rcsq::run_sweep(spec, cfg.quadrature, g.threads);
        std::ostringstream name;
        name << "fig" << which << "_T" << t << "mK.csv";
        std::ofstream out(dir / name.str());
        if (!out) throw std::invalid_argument("cannot write " + (dir / name.str()).string());
        rcsq::write_csv(rows, out);
        std::cerr << "wrote " << (dir / name.str()).string() << "\n";
        for (const auto& r : rows)
            if (!r.ok) rc = 2;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady states, fluctuation spectra and momentum/position "
                 "variances of a nano waveguide reactively coupled to a driven "
                 "microdisk resonator with a squeezed-vacuum input"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config_path, "configuration file (key = value sections)");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out_path, "output file (directory for figure commands)");
    app.add_option("--cutoff", g.cutoff, "omega integration cutoff in units of omega_m");
    app.add_option("--rel-tol", g.rel_tol, "quadrature relative tolerance");
    app.add_option("--threads", g.threads, "worker threads for sweeps");

    auto* cmd_steady = app.add_subcommand("steady", "steady state for one configuration");
    auto* cmd_var = app.add_subcommand("variance", "variance breakdown for one configuration");
    std::string quantity = "momentum";
    cmd_var->add_option("--quantity", quantity, "momentum or position")
        ->check(CLI::IsMember({"momentum", "position"}));
    auto* cmd_sweep = app.add_subcommand("sweep", "run the sweep from the config file");
    std::string axis_override, quantity_override;
    std::optional<double> start_override, stop_override;
    std::optional<int> points_override;
    cmd_sweep->add_option("--axis", axis_override, "detuning|power|temperature|squeeze_r");
    cmd_sweep->add_option("--start", start_override, "axis start (interface units)");
    cmd_sweep->add_option("--stop", stop_override, "axis stop (interface units)");
    cmd_sweep->add_option("--points", points_override, "grid points");
    cmd_sweep->add_option("--quantity", quantity_override,
                          "momentum_variance|position_variance|steady_state|output_check");
    auto* cmd_min = app.add_subcommand("minimize", "locate the sweep-axis variance minimum");
    cmd_min->add_option("--axis", axis_override, "detuning|power|temperature|squeeze_r");
    cmd_min->add_option("--start", start_override, "axis start (interface units)");
    cmd_min->add_option("--stop", stop_override, "axis stop (interface units)");
    cmd_min->add_option("--points", points_override, "coarse grid points");
    auto* cmd_fig1 = app.add_subcommand("figure1", "detuning sweeps per temperature (CSV files)");
    auto* cmd_fig2 = app.add_subcommand("figure2", "power sweeps per temperature (CSV files)");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        rcsq::Config cfg = load_config(g);
        auto apply_sweep_overrides = [&]() {
            if (!axis_override.empty()) cfg.sweep.axis = rcsq::sweep_axis_from_string(axis_override);
            if (start_override) cfg.sweep.start = *start_override;
            if (stop_override) cfg.sweep.stop = *stop_override;
            if (points_override) cfg.sweep.points = *points_override;
            if (!quantity_override.empty())
                cfg.sweep.quantity = rcsq::sweep_quantity_from_string(quantity_override);
        };

        if (cmd_steady->parsed()) {
            emit(g, steady_report(cfg, g.format));
            return 0;
        }
        if (cmd_var->parsed()) {
            emit(g, variance_report(cfg, quantity, g.format));
            return 0;
        }
        if (cmd_sweep->parsed()) {
            apply_sweep_overrides();
            return run_rows(g, rcsq::run_sweep(cfg.sweep, cfg.quadrature, g.threads));
        }
        if (cmd_min->parsed()) {
            apply_sweep_overrides();
            cfg.sweep.quantity = rcsq::SweepQuantity::momentum_variance;
            const auto [where, v] = rcsq::find_minimum(cfg.sweep, cfg.quadrature, g.threads);
            if (g.format == "json") {
                json j{{"axis", rcsq::to_string(cfg.sweep.axis)},
                       {"axis_value", where},
                       {"total", v.total},
                       {"thermal_term", v.thermal_term},
                       {"m_term", v.m_term},
                       {"n_term", v.n_term},
                       {"vacuum_term", v.vacuum_term},
                       {"squeezing_percent", v.squeezing_percent}};
                emit(g, j.dump(2) + "\n");
            } else {
                std::ostringstream out;
                char buf[256];
                out << "axis,axis_value,total,squeezing_percent\n";
                std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g\n",
                              rcsq::to_string(cfg.sweep.axis), where, v.total,
                              v.squeezing_percent);
                out << buf;
                emit(g, out.str());
            }
            return 0;
        }
        if (cmd_fig1->parsed()) return run_figures(g, cfg, 1);
        if (cmd_fig2->parsed()) return run_figures(g, cfg, 2);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
