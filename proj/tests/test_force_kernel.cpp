// Rotation-induced force: photon statistics, spectral integrands (split and
// first-order forms), breakpoint generation, and the integrated components.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "ccthrust/ccthrust.hpp"
#include "reference_values.hpp"

using namespace ccthrust;
using Catch::Approx;
namespace ref = ccthrust_test_ref;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

RunContext base_context(DiffMode mode = DiffMode::exact) {
    RunContext ctx;
    ctx.particle.radius = 50e-6;
    ctx.particle.material = base_material();
    ctx.Omega = 2.0 * kPi * 1e4;
    ctx.T_env = 300.0;
    ctx.T_particle = 300.0;
    ctx.pol_model = PolModel::mie_dipole;
    ctx.diff_mode = mode;
    return ctx;
}

}  // namespace

TEST_CASE("thermal photon number: limits, parity, pole, anchor") {
    CHECK(photon_number(1e12, 0.0) == 0.5);
    CHECK(photon_number(-1e12, 0.0) == -0.5);
    CHECK(photon_number(0.0, 0.0) == 0.0);
    CHECK_THROWS_AS(photon_number(0.0, 300.0), PoleError);

    const double w0 = base_material().resonances[0].omega0;
    CHECK(rel_err(photon_number(w0, 300.0), ref::kPhotonNumberW0300K) < 5e-15);

    // Odd in omega, bitwise.
    for (double w : {3e10, 1e12, 8e13}) CHECK(photon_number(-w, 300.0) == -photon_number(w, 300.0));

    // Far beyond the thermal cutoff the hyperbolic form would overflow;
    // the saturated value takes over exactly.
    CHECK(photon_number(1e18, 1e-6) == 0.5);
    CHECK(photon_number(-1e18, 1e-6) == -0.5);

    CHECK_THROWS_AS(photon_number(std::nan(""), 300.0), DomainError);
    CHECK_THROWS_AS(photon_number(1e12, -2.0), DomainError);
}

TEST_CASE("photon number derivative matches finite differences") {
    const double w0 = base_material().resonances[0].omega0;
    CHECK(photon_number_derivative(w0, 0.0) == 0.0);
    CHECK_THROWS_AS(photon_number_derivative(0.0, 300.0), PoleError);
    CHECK(photon_number_derivative(1e18, 1e-6) == 0.0);
    for (double w : {0.2 * w0, w0, 5.0 * w0}) {
        const double h = 1e-6 * w;
        const double fd =
            (photon_number(w + h, 300.0) - photon_number(w - h, 300.0)) / (2.0 * h);
        CHECK(rel_err(photon_number_derivative(w, 300.0), fd) < 1e-8);
    }
}

TEST_CASE("split frequencies are a plain shift pair") {
    const auto [wp, wm] = split_frequencies(5.0e12, 3.0e4);
    CHECK(wp == 5.0e12 + 3.0e4);
    CHECK(wm == 5.0e12 - 3.0e4);
    CHECK_THROWS_AS(split_frequencies(-1.0, 1.0), DomainError);
}

TEST_CASE("auto mode picks the first-order form only for slow rotation") {
    RunContext ctx = base_context(DiffMode::auto_mode);
    CHECK(ctx.resolved_mode() == DiffMode::linearized);  // 10 kHz vs THz resonance
    ctx.Omega = 0.1 * ctx.particle.material.min_omega0();
    CHECK(ctx.resolved_mode() == DiffMode::exact);
    ctx.diff_mode = DiffMode::exact;
    ctx.Omega = 1.0;
    CHECK(ctx.resolved_mode() == DiffMode::exact);
    ctx.diff_mode = DiffMode::linearized;
    CHECK(ctx.resolved_mode() == DiffMode::linearized);
}

TEST_CASE("spectral densities vanish identically without rotation") {
    RunContext ctx = base_context(DiffMode::exact);
    ctx.Omega = 0.0;
    const double w0 = ctx.particle.material.resonances[0].omega0;
    for (double f : {0.4, 1.0, 1.8}) {
        const SpectralSample s = integrand_total(ctx, f * w0);
        CHECK(s.d_dip_pmfl == 0.0);
        CHECK(s.d_pfl_mfl == 0.0);
        CHECK(s.d_Efl_Hfl == 0.0);
        CHECK(s.d_tot == 0.0);
    }
}

TEST_CASE("split-form spectral densities match the reference table") {
    const RunContext ctx = base_context(DiffMode::exact);
    for (const auto& row : ref::kSpectralRef) {
        const SpectralSample s = integrand_total(ctx, row.omega);
        INFO("omega = " << row.omega);
        CHECK(rel_err(s.d_dip_pmfl, row.d_dip_pmfl) < 1e-6);
        CHECK(rel_err(s.d_pfl_mfl, row.d_pfl_mfl) < 1e-6);
        CHECK(rel_err(s.d_Efl_Hfl, row.d_Efl_Hfl) < 1e-6);
        CHECK(s.d_tot == s.d_dip_pmfl + s.d_pfl_mfl + s.d_Efl_Hfl);
    }
}

TEST_CASE("first-order form tracks the split form at slow rotation") {
    const RunContext ctx = base_context(DiffMode::exact);
    for (const auto& row : ref::kSpectralRef) {
        const SpectralSample ex = integrand_total(ctx, row.omega);
        const SpectralSample li = linearized_integrands(ctx, row.omega);
        INFO("omega = " << row.omega);
        CHECK(rel_err(li.d_dip_pmfl, ex.d_dip_pmfl) < 1e-3);
        CHECK(rel_err(li.d_pfl_mfl, ex.d_pfl_mfl) < 1e-3);
        CHECK(rel_err(li.d_Efl_Hfl, ex.d_Efl_Hfl) < 1e-3);
    }
}

TEST_CASE("first-order form is exactly linear in the rotation rate") {
    RunContext ctx1 = base_context(DiffMode::linearized);
    RunContext ctx2 = ctx1;
    ctx2.Omega = 2.0 * ctx1.Omega;
    const double w0 = ctx1.particle.material.resonances[0].omega0;
    for (double f : {0.5, 1.0, 1.6}) {
        const SpectralSample s1 = linearized_integrands(ctx1, f * w0);
        const SpectralSample s2 = linearized_integrands(ctx2, f * w0);
        CHECK(s2.d_dip_pmfl == 2.0 * s1.d_dip_pmfl);
        CHECK(s2.d_pfl_mfl == 2.0 * s1.d_pfl_mfl);
        CHECK(s2.d_Efl_Hfl == 2.0 * s1.d_Efl_Hfl);
    }
}

TEST_CASE("spectral densities are odd in the rotation rate") {
    for (DiffMode mode : {DiffMode::exact, DiffMode::linearized}) {
        RunContext fwd = base_context(mode);
        RunContext rev = fwd;
        rev.Omega = -fwd.Omega;
        const double w0 = fwd.particle.material.resonances[0].omega0;
        for (double f : {0.4, 1.0, 1.9}) {
            const SpectralSample sf = integrand_total(fwd, f * w0);
            const SpectralSample sr = integrand_total(rev, f * w0);
            INFO("mode " << static_cast<int>(mode) << " omega/omega0 = " << f);
            CHECK(sr.d_dip_pmfl == -sf.d_dip_pmfl);
            CHECK(sr.d_pfl_mfl == -sf.d_pfl_mfl);
            CHECK(sr.d_Efl_Hfl == -sf.d_Efl_Hfl);
        }
    }
}

TEST_CASE("integrand entry points reject non-positive frequencies") {
    const RunContext ctx = base_context();
    CHECK_THROWS_AS(integrand_dip_pmfl(ctx, 0.0), DomainError);
    CHECK_THROWS_AS(integrand_total(ctx, -1e12), DomainError);
    CHECK_THROWS_AS(linearized_integrands(ctx, 0.0), DomainError);
}

TEST_CASE("environment temperature enters the dipole term through the unshifted line") {
    // With the particle bath at T = 0, the first-order dipole density obeys
    //   d(T_env) - d(0) = pref * 2 Omega * Im chi'(omega) * (N_env - 1/2),
    // which pins both the T_env coupling and its evaluation at the unshifted
    // frequency.
    RunContext warm = base_context(DiffMode::linearized);
    warm.T_particle = 0.0;
    RunContext cold = warm;
    cold.T_env = 0.0;
    const double w = 1.3 * warm.particle.material.resonances[0].omega0;
    const double d_warm = integrand_dip_pmfl(warm, w);
    const double d_cold = integrand_dip_pmfl(cold, w);

    const double h = 1e-6 * w;
    const auto hi = polarizability_at(warm.particle, w + h, warm.pol_model);
    const auto lo = polarizability_at(warm.particle, w - h, warm.pol_model);
    const double dichi = (hi.chi.imag() - lo.chi.imag()) / (2.0 * h);
    const double pref = constants.hbar * std::pow(w, 4) /
                        (3.0 * kPi * kPi * std::pow(constants.c, 3));
    const double expected =
        pref * 2.0 * warm.Omega * dichi * (photon_number(w, warm.T_env) - 0.5);
    CHECK(rel_err(d_warm - d_cold, expected) < 1e-6);

    // The field-interference density scales exactly with the unshifted N_env.
    const double e_warm = integrand_Efl_Hfl(warm, w);
    const double e_cold = integrand_Efl_Hfl(cold, w);
    CHECK(rel_err(e_warm / e_cold, photon_number(w, warm.T_env) / 0.5) < 1e-13);
}

TEST_CASE("spin-force coefficients match references and chirality algebra") {
    const ParticleSpec spec = base_context().particle;
    const double w0 = spec.material.resonances[0].omega0;
    const auto [ge, gm] = spin_force_coefficients(spec, w0);
    CHECK(rel_err(ge, ref::kGammaEW0) < 1e-12);
    CHECK(rel_err(gm, ref::kGammaMW0) < 1e-12);

    ParticleSpec achiral = spec;
    achiral.material.resonances[0].strength_kappa = 0.0;
    const auto [ge0, gm0] = spin_force_coefficients(achiral, w0);
    CHECK(ge0 == 0.0);
    CHECK(gm0 == 0.0);

    ParticleSpec mirrored = spec;
    mirrored.material.resonances[0].strength_kappa =
        -mirrored.material.resonances[0].strength_kappa;
    const auto [gem, gmm] = spin_force_coefficients(mirrored, w0);
    CHECK(gem == -ge);
    CHECK(gmm == -gm);

    CHECK_THROWS_AS(spin_force_coefficients(spec, 0.0), DomainError);
}

TEST_CASE("single-frequency estimator matches reference and chirality algebra") {
    RunContext ctx = base_context();
    const double w0 = ctx.particle.material.resonances[0].omega0;
    CHECK(rel_err(estimate_integrand_compact(ctx, w0), ref::kCompactEstimateW0) < 1e-12);

    RunContext achiral = ctx;
    achiral.particle.material.resonances[0].strength_kappa = 0.0;
    CHECK(estimate_integrand_compact(achiral, w0) == 0.0);

    RunContext mirrored = ctx;
    mirrored.particle.material.resonances[0].strength_kappa =
        -mirrored.particle.material.resonances[0].strength_kappa;
    CHECK(estimate_integrand_compact(mirrored, w0) == -estimate_integrand_compact(ctx, w0));

    CHECK_THROWS_AS(estimate_integrand_compact(ctx, -w0), DomainError);
}

TEST_CASE("integration support points cover rotation, lines, and thermal cutoff") {
    const RunContext ctx = base_context();
    const QuadratureSettings s = ctx.quad;
    const std::vector<double> b = auto_breakpoints(ctx, s);

    REQUIRE(!b.empty());
    CHECK(std::is_sorted(b.begin(), b.end()));
    CHECK(std::adjacent_find(b.begin(), b.end()) == b.end());  // unique
    CHECK(b.front() > 0.0);

    auto contains = [&b](double x) { return std::find(b.begin(), b.end(), x) != b.end(); };
    const auto& r = ctx.particle.material.resonances[0];
    const double span = s.resonance_halfwidths * r.gamma;
    CHECK(contains(std::abs(ctx.Omega)));
    CHECK(contains(r.omega0));
    CHECK(contains(r.omega0 - span));
    CHECK(contains(r.omega0 + span));
    CHECK(contains(r.omega0 + span * 0.125));
    CHECK(contains(s.tail_cut_multiplier * constants.k_B * 300.0 / constants.hbar));
    CHECK(b.back() == 2.0 * b[b.size() - 2]);  // final split doubles the last point

    // Every resonance gets its own ladder.
    RunContext two = ctx;
    LorentzResonance r2 = r;
    r2.omega0 = 5.0 * r.omega0;
    r2.gamma = 0.02 * r2.omega0;
    two.particle.material.resonances.push_back(r2);
    const std::vector<double> b2 = auto_breakpoints(two, s);
    auto contains2 = [&b2](double x) {
        return std::find(b2.begin(), b2.end(), x) != b2.end();
    };
    CHECK(contains2(r.omega0));
    CHECK(contains2(r2.omega0));
    CHECK(contains2(r2.omega0 - s.resonance_halfwidths * r2.gamma));
}

TEST_CASE("the dispersive band edge rides on the highest resonance only") {
    MaterialModel m = base_material();
    const double e1 = dispersive_band_edge(m);
    CHECK(e1 == 2.0 * m.resonances[0].omega0);
    LorentzResonance r2 = m.resonances[0];
    r2.omega0 = 7.0 * m.resonances[0].omega0;
    m.resonances.push_back(r2);
    CHECK(dispersive_band_edge(m) == 2.0 * r2.omega0);
}

TEST_CASE("no rotation means exactly zero force") {
    RunContext ctx = base_context(DiffMode::auto_mode);
    ctx.Omega = 0.0;
    const ForceBreakdown f = compute_force(ctx);
    CHECK(f.f_dip_pmfl == 0.0);
    CHECK(f.f_int_pfl_mfl == 0.0);
    CHECK(f.f_int_Efl_Hfl == 0.0);
    CHECK(f.f_tot == 0.0);
    CHECK(f.est_abs_error == 0.0);
}

TEST_CASE("zero-point force opposes rotation at the expected magnitude") {
    RunContext ctx = base_context(DiffMode::auto_mode);
    ctx.T_env = 0.0;
    ctx.T_particle = 0.0;
    const ForceBreakdown f = compute_force(ctx);
    CHECK(f.f_tot < 0.0);  // vacuum friction brakes the spin
    const double magnitude_ratio = std::abs(f.f_tot) / 1.29e-28;
    INFO("f_tot = " << f.f_tot << " ratio vs nominal = " << magnitude_ratio);
    CHECK(magnitude_ratio > 0.5);
    CHECK(magnitude_ratio < 2.0);
    CHECK(f.f_tot == f.f_dip_pmfl + f.f_int_pfl_mfl + f.f_int_Efl_Hfl);
    CHECK(f.est_abs_error < 1e-3 * std::abs(f.f_tot));
}

TEST_CASE("room-temperature force component structure") {
    RunContext ctx = base_context(DiffMode::auto_mode);
    const ForceBreakdown f = compute_force(ctx);
    CHECK(f.mode_used == DiffMode::linearized);
    CHECK(f.f_tot < 0.0);
    CHECK(f.f_dip_pmfl < 0.0);
    // The interaction terms jointly push the other way and partially screen
    // the dipole term.
    CHECK(f.f_int_pfl_mfl + f.f_int_Efl_Hfl > 0.0);
    CHECK(std::abs(f.f_tot) < std::abs(f.f_dip_pmfl));
}

TEST_CASE("integrated force is odd in the rotation rate") {
    for (DiffMode mode : {DiffMode::exact, DiffMode::linearized}) {
        RunContext fwd = base_context(mode);
        RunContext rev = fwd;
        rev.Omega = -fwd.Omega;
        const ForceBreakdown ff = compute_force(fwd);
        const ForceBreakdown fr = compute_force(rev);
        INFO("mode " << static_cast<int>(mode));
        CHECK(rel_err(fr.f_tot, -ff.f_tot) < 1e-10);
        CHECK(rel_err(fr.f_dip_pmfl, -ff.f_dip_pmfl) < 1e-10);
        if (mode == DiffMode::linearized) {
            CHECK(fr.f_tot == -ff.f_tot);  // strict for the first-order form
        }
    }
}

TEST_CASE("integrated force is odd under mirror reversal of the medium") {
    RunContext right = base_context(DiffMode::linearized);
    RunContext left = right;
    left.particle.material.resonances[0].strength_kappa =
        -left.particle.material.resonances[0].strength_kappa;
    const ForceBreakdown fr = compute_force(right);
    const ForceBreakdown fl = compute_force(left);
    CHECK(rel_err(fl.f_dip_pmfl, -fr.f_dip_pmfl) < 1e-12);
    CHECK(rel_err(fl.f_tot, -fr.f_tot) < 1e-12);
}

TEST_CASE("force is stable against tighter tolerance") {
    RunContext ctx = base_context(DiffMode::auto_mode);
    const double f1 = compute_force(ctx).f_tot;
    ctx.quad.rel_tol *= 0.5;
    const double f2 = compute_force(ctx).f_tot;
    CHECK(rel_err(f2, f1) < 1e-6);
}

TEST_CASE("context validation rejects bad inputs") {
    RunContext ctx = base_context();
    ctx.T_env = -1.0;
    CHECK_THROWS_AS(compute_force(ctx), DomainError);
    ctx = base_context();
    ctx.particle.radius = -5e-6;
    CHECK_THROWS_AS(compute_force(ctx), DomainError);
    ctx = base_context();
    ctx.Omega = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(compute_force(ctx), DomainError);
    ctx = base_context();
    ctx.quad.rel_tol = -1.0;
    CHECK_THROWS_AS(compute_force(ctx), ConfigError);
}
