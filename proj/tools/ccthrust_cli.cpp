// ccthrust: vacuum-thrust force on a rotating chiral sphere.
// Subcommands: force, spectrum, polarizability, sweep.
// Exit codes: 0 ok, 2 configuration error, 3 computation/convergence
// failure, 4 output I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ccthrust/ccthrust.hpp"

namespace cc = ccthrust;

namespace {

struct CommonOptions {
    double radius_m = 0.0;
    bool have_radius = false;
    double rot_freq_hz = 0.0;
    bool have_rot_freq = false;
    double rot_omega_rad_s = 0.0;
    bool have_rot_omega = false;
    double t_env_k = 300.0;
    double t_particle_k = 300.0;
    std::string material_path;
    std::string pol_mode = "mie";
    std::string diff_mode = "auto";
    double rel_tol = 1e-9;
    double abs_tol_floor = 1e-40;
    int max_subdivisions = 2000;
    double tail_cut_multiplier = 40.0;
    double resonance_halfwidths = 8.0;
    std::string out_format = "csv";
    std::string output_path = "stdout";
};

void add_common_options(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--radius-m", o.radius_m, "particle radius in m")
        ->check(CLI::PositiveNumber)
        ->trigger_on_parse()
        ->each([&o](const std::string&) { o.have_radius = true; });
    auto* rf = cmd->add_option("--rot-freq-hz", o.rot_freq_hz,
                               "rotation frequency in Hz (ordinary)")
                   ->each([&o](const std::string&) { o.have_rot_freq = true; });
    cmd->add_option("--rot-omega-rad-s", o.rot_omega_rad_s,
                    "rotation angular frequency in rad/s")
        ->excludes(rf)
        ->each([&o](const std::string&) { o.have_rot_omega = true; });
    cmd->add_option("--t-env-k", o.t_env_k, "field (environment) temperature in K")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--t-particle-k", o.t_particle_k,
                    "particle (dipole fluctuation) temperature in K")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--material", o.material_path,
                    "material description file (default: built-in base material)");
    cmd->add_option("--pol-mode", o.pol_mode, "polarizability model")
        ->check(CLI::IsMember({"mie", "quasistatic", "quasistatic-rc"}));
    cmd->add_option("--diff-mode", o.diff_mode, "frequency-splitting evaluation mode")
        ->check(CLI::IsMember({"auto", "exact", "linearized"}));
    cmd->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--abs-tol-floor", o.abs_tol_floor,
                    "quadrature absolute tolerance floor in N");
    cmd->add_option("--max-subdivisions", o.max_subdivisions,
                    "quadrature subdivision budget");
    cmd->add_option("--tail-cut-multiplier", o.tail_cut_multiplier,
                    "thermal tail cutoff in units of k_B*max(T,1K)/hbar");
    cmd->add_option("--resonance-halfwidths", o.resonance_halfwidths,
                    "resonance breakpoint span in units of gamma");
    cmd->add_option("--out", o.out_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", o.output_path, "output path or 'stdout'");
}

cc::RunContext build_context(const CommonOptions& o, bool radius_required) {
    cc::RunContext ctx;
    if (o.have_radius)
        ctx.particle.radius = o.radius_m;
    else if (radius_required)
        throw cc::ConfigError("missing required option --radius-m");
    else
        ctx.particle.radius = 1.0;  // placeholder; the sweep overwrites it per row

    if (o.material_path.empty()) {
        ctx.particle.material = cc::base_material();
    } else {
        std::ifstream in(o.material_path);
        if (!in) throw cc::ConfigError("cannot open material file: " + o.material_path);
        ctx.particle.material = cc::parse_material(in);
    }

    ctx.Omega = o.have_rot_omega ? o.rot_omega_rad_s : 2.0 * cc::kPi * o.rot_freq_hz;
    ctx.T_env = o.t_env_k;
    ctx.T_particle = o.t_particle_k;

    if (o.pol_mode == "mie")
        ctx.pol_model = cc::PolModel::mie_dipole;
    else if (o.pol_mode == "quasistatic")
        ctx.pol_model = cc::PolModel::quasi_static;
    else
        ctx.pol_model = cc::PolModel::quasi_static_rc;

    if (o.diff_mode == "auto")
        ctx.diff_mode = cc::DiffMode::auto_mode;
    else if (o.diff_mode == "exact")
        ctx.diff_mode = cc::DiffMode::exact;
    else
        ctx.diff_mode = cc::DiffMode::linearized;

    ctx.quad.rel_tol = o.rel_tol;
    ctx.quad.abs_tol_floor = o.abs_tol_floor;
    ctx.quad.max_subdivisions = o.max_subdivisions;
    ctx.quad.tail_cut_multiplier = o.tail_cut_multiplier;
    ctx.quad.resonance_halfwidths = o.resonance_halfwidths;
    ctx.validate();
    return ctx;
}

void emit(const cc::Table& table, const CommonOptions& o) {
    const cc::OutputFormat fmt =
        o.out_format == "json" ? cc::OutputFormat::json : cc::OutputFormat::csv;
    if (o.output_path == "stdout" || o.output_path == "-") {
        cc::emit_table(table, fmt, std::cout);
    } else {
        std::ofstream out(o.output_path);
        if (!out) throw cc::IoError("cannot open output file: " + o.output_path);
        cc::emit_table(table, fmt, out);
    }
}

const char* mode_name(cc::DiffMode m) {
    switch (m) {
        case cc::DiffMode::exact: return "exact";
        case cc::DiffMode::linearized: return "linearized";
        case cc::DiffMode::auto_mode: return "auto";
    }
    return "?";
}

std::vector<double> frequency_grid(double lo, double hi, int points, bool log_spacing) {
    if (!(lo > 0.0) || !(hi > lo))
        throw cc::ConfigError("spectrum grid requires 0 < omega-min < omega-max");
    if (points < 2) throw cc::ConfigError("spectrum grid needs at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        g[static_cast<std::size_t>(i)] =
            log_spacing ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    return g;
}

int run_force(const CommonOptions& o) {
    const cc::RunContext ctx = build_context(o, true);
    const cc::ForceBreakdown f = cc::compute_force(ctx);
    std::fprintf(stderr,
                 "mode=%s\n"
                 "f_dip_pmfl  = % .9e N\n"
                 "f_pfl_mfl   = % .9e N\n"
                 "f_Efl_Hfl   = % .9e N\n"
                 "f_tot       = % .9e N  (est abs err %.3e N)\n",
                 mode_name(f.mode_used), f.f_dip_pmfl, f.f_int_pfl_mfl, f.f_int_Efl_Hfl,
                 f.f_tot, f.est_abs_error);
    cc::Table t;
    t.columns = {"f_dip_pmfl_N", "f_pfl_mfl_N", "f_Efl_Hfl_N", "f_tot_N", "abs_err_N"};
    t.rows = {{f.f_dip_pmfl, f.f_int_pfl_mfl, f.f_int_Efl_Hfl, f.f_tot, f.est_abs_error}};
    t.metadata = {{"kind", "force"}, {"mode", mode_name(f.mode_used)}};
    emit(t, o);
    return 0;
}

int run_spectrum(const CommonOptions& o, double wmin, double wmax, int points,
                 bool log_spacing) {
    const cc::RunContext ctx = build_context(o, true);
    const auto grid = frequency_grid(wmin, wmax, points, log_spacing);
    cc::Table t;
    t.columns = {"omega_rad_s", "dF_dip_pmfl_N_s", "dF_pfl_mfl_N_s", "dF_Efl_Hfl_N_s",
                 "dF_tot_N_s"};
    for (double w : grid) {
        const cc::SpectralSample s = cc::integrand_total(ctx, w);
        t.rows.push_back({s.omega, s.d_dip_pmfl, s.d_pfl_mfl, s.d_Efl_Hfl, s.d_tot});
    }
    t.metadata = {{"kind", "force_spectral_density"},
                  {"mode", mode_name(ctx.resolved_mode())}};
    emit(t, o);
    return 0;
}

int run_polarizability(const CommonOptions& o, double wmin, double wmax, int points,
                       bool log_spacing) {
    const cc::RunContext ctx = build_context(o, true);
    const auto grid = frequency_grid(wmin, wmax, points, log_spacing);
    cc::Table t;
    t.columns = {"omega_rad_s",      "alpha_e_vol_re_m3", "alpha_e_vol_im_m3",
                 "alpha_m_vol_re_m3", "alpha_m_vol_im_m3", "chi_re_m2s",
                 "chi_im_m2s",        "upsilon_re_m3",     "upsilon_im_m3"};
    for (double w : grid) {
        const cc::PolarizabilitySet p = cc::polarizability_at(ctx.particle, w, ctx.pol_model);
        const auto ae = p.alpha_e / cc::constants.eps0;
        const auto am = p.alpha_m / cc::constants.mu0;
        const auto y = cc::upsilon(p);
        t.rows.push_back({w, ae.real(), ae.imag(), am.real(), am.imag(), p.chi.real(),
                          p.chi.imag(), y.real(), y.imag()});
    }
    t.metadata = {{"kind", "polarizability"}, {"model", o.pol_mode}};
    emit(t, o);
    return 0;
}

int run_sweep_cmd(const CommonOptions& o, const std::string& var, double from, double to,
                  int points, bool log_spacing, bool freeze_gamma) {
    cc::SweepSpec spec;
    if (var == "rot")
        spec.variable = cc::SweepVariable::rotation;
    else if (var == "temp")
        spec.variable = cc::SweepVariable::temperature;
    else if (var == "omega0")
        spec.variable = cc::SweepVariable::omega0;
    else if (var == "kappa")
        spec.variable = cc::SweepVariable::kappa_strength;
    else if (var == "radius")
        spec.variable = cc::SweepVariable::radius;
    else
        throw cc::ConfigError("unknown sweep variable: " + var);

    spec.base = build_context(o, spec.variable != cc::SweepVariable::radius);
    if (spec.variable == cc::SweepVariable::radius && !o.have_radius)
        spec.base.particle.radius = 1.0;  // overwritten per row
    spec.from = from;
    spec.to = to;
    spec.points = points;
    spec.log_spacing = log_spacing;
    spec.freeze_gamma = freeze_gamma;

    const cc::SweepOutcome out = cc::run_sweep(spec);

    bool any_converged = false;
    cc::Table t;
    t.columns = {sweep_variable_name(out.variable),
                 "f_dip_pmfl_N",
                 "f_pfl_mfl_N",
                 "f_Efl_Hfl_N",
                 "f_tot_N",
                 "abs_err_N",
                 "converged"};
    for (const auto& r : out.rows) {
        any_converged = any_converged || r.converged;
        t.rows.push_back({r.value, r.force.f_dip_pmfl, r.force.f_int_pfl_mfl,
                          r.force.f_int_Efl_Hfl, r.force.f_tot, r.force.est_abs_error,
                          r.converged ? 1.0 : 0.0});
        if (!r.converged)
            std::fprintf(stderr, "row %s=%.6e failed: %s\n",
                         sweep_variable_name(out.variable), r.value, r.message.c_str());
    }
    t.metadata = {{"kind", "sweep"}, {"variable", sweep_variable_name(out.variable)}};
    if (out.markers.has_fit) {
        std::fprintf(stderr, "linear fit: slope=%.9e intercept=%.9e R^2=%.9f\n",
                     out.markers.fit.slope, out.markers.fit.intercept,
                     out.markers.fit.r_squared);
        t.metadata.emplace_back("fit_slope", cc::format_sci(out.markers.fit.slope));
        t.metadata.emplace_back("fit_intercept", cc::format_sci(out.markers.fit.intercept));
        t.metadata.emplace_back("fit_r_squared", cc::format_sci(out.markers.fit.r_squared));
    }
    if (out.markers.has_crossing) {
        std::fprintf(stderr, "f_tot zero crossing at %s = %.6e (%d sign change(s))\n",
                     sweep_variable_name(out.variable), out.markers.crossing,
                     out.markers.sign_changes);
        t.metadata.emplace_back("zero_crossing", cc::format_sci(out.markers.crossing));
        t.metadata.emplace_back("sign_changes", std::to_string(out.markers.sign_changes));
    }
    if (out.markers.has_peak) {
        std::fprintf(stderr, "max |f_tot| = %.6e at %s = %.6e\n", out.markers.peak_value,
                     sweep_variable_name(out.variable), out.markers.peak);
        t.metadata.emplace_back("peak_at", cc::format_sci(out.markers.peak));
        t.metadata.emplace_back("peak_f_tot", cc::format_sci(out.markers.peak_value));
    }
    emit(t, o);
    return any_converged ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vacuum thrust force on a rotating chiral particle"};
    app.require_subcommand(1);
    app.set_config("--config");

    CommonOptions force_o, spec_o, pol_o, sweep_o;

    CLI::App* force_cmd = app.add_subcommand("force", "single force evaluation");
    add_common_options(force_cmd, force_o);

    double wmin = 0.0, wmax = 0.0;
    int spec_points = 200;
    bool spec_log = false;
    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "force spectral density over a frequency grid");
    add_common_options(spectrum_cmd, spec_o);
    spectrum_cmd->add_option("--omega-min-rad-s", wmin, "grid start, rad/s")->required();
    spectrum_cmd->add_option("--omega-max-rad-s", wmax, "grid end, rad/s")->required();
    spectrum_cmd->add_option("--points", spec_points, "grid size");
    spectrum_cmd->add_flag("--log", spec_log, "log-spaced grid");

    double pwmin = 0.0, pwmax = 0.0;
    int pol_points = 200;
    bool pol_log = false;
    CLI::App* pol_cmd =
        app.add_subcommand("polarizability", "dipolar response over a frequency grid");
    add_common_options(pol_cmd, pol_o);
    pol_cmd->add_option("--omega-min-rad-s", pwmin, "grid start, rad/s")->required();
    pol_cmd->add_option("--omega-max-rad-s", pwmax, "grid end, rad/s")->required();
    pol_cmd->add_option("--points", pol_points, "grid size");
    pol_cmd->add_flag("--log", pol_log, "log-spaced grid");

    std::string sweep_var;
    double sweep_from = 0.0, sweep_to = 0.0;
    int sweep_points = 0;
    bool sweep_log = false, freeze_gamma = false;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "one-dimensional parameter sweep");
    add_common_options(sweep_cmd, sweep_o);
    sweep_cmd->add_option("--var", sweep_var, "swept variable")
        ->check(CLI::IsMember({"rot", "temp", "omega0", "kappa", "radius"}))
        ->required();
    sweep_cmd->add_option("--from", sweep_from, "sweep start (variable units)")->required();
    sweep_cmd->add_option("--to", sweep_to, "sweep end (variable units)")->required();
    sweep_cmd->add_option("--points", sweep_points, "grid size")->required();
    sweep_cmd->add_flag("--log", sweep_log, "log-spaced grid");
    sweep_cmd->add_flag("--freeze-gamma", freeze_gamma,
                        "omega0 sweeps: keep gamma absolute instead of gamma/omega0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (force_cmd->parsed()) return run_force(force_o);
        if (spectrum_cmd->parsed())
            return run_spectrum(spec_o, wmin, wmax, spec_points, spec_log);
        if (pol_cmd->parsed())
            return run_polarizability(pol_o, pwmin, pwmax, pol_points, pol_log);
        if (sweep_cmd->parsed())
            return run_sweep_cmd(sweep_o, sweep_var, sweep_from, sweep_to, sweep_points,
                                 sweep_log, freeze_gamma);
    } catch (const cc::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const cc::DomainError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const cc::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 3;
    } catch (const cc::PoleError& e) {
        std::cerr << "computation failure: " << e.what() << "\n";
        return 3;
    } catch (const cc::NumericError& e) {
        std::cerr << "computation failure: " << e.what() << "\n";
        return 3;
    } catch (const cc::IoError& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
