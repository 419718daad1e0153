#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "ccthrust/constants.hpp"
#include "ccthrust/errors.hpp"
#include "ccthrust/material.hpp"
#include "ccthrust/polarizability.hpp"
#include "ccthrust/quadrature.hpp"

namespace ccthrust {

enum class DiffMode { exact, linearized, auto_mode };

struct RunContext {
    ParticleSpec particle;
    double Omega = 0.0;       // rotation angular frequency, rad/s, signed
    double T_env = 0.0;       // K, temperature of the surrounding field
    double T_particle = 0.0;  // K, temperature of the dipole fluctuations
    PolModel pol_model = PolModel::mie_dipole;
    DiffMode diff_mode = DiffMode::auto_mode;
    QuadratureSettings quad;
    PhysicalConstants consts = constants;

    void validate() const {
        particle.validate();
        if (!std::isfinite(Omega)) throw DomainError("context: non-finite rotation rate");
        if (!(T_env >= 0.0) || !std::isfinite(T_env) || !(T_particle >= 0.0) ||
            !std::isfinite(T_particle))
            throw DomainError("context: temperatures must be finite and >= 0");
        quad.validate();
    }

    // Below |Omega|/omega0 ~ 1e-4 the split-frequency difference loses too
    // many digits for plain differencing, so auto mode switches to the
    // first-order form there.
    DiffMode resolved_mode() const {
        if (diff_mode != DiffMode::auto_mode) return diff_mode;
        return std::abs(Omega) < 1e-4 * particle.material.min_omega0()
                   ? DiffMode::linearized
                   : DiffMode::exact;
    }
};

struct SpectralSample {
    double omega = 0.0;  // rad/s
    double d_dip_pmfl = 0.0, d_pfl_mfl = 0.0, d_Efl_Hfl = 0.0, d_tot = 0.0;  // N*s
};

struct ForceBreakdown {
    double f_dip_pmfl = 0.0, f_int_pfl_mfl = 0.0, f_int_Efl_Hfl = 0.0, f_tot = 0.0;  // N
    double est_abs_error = 0.0;  // N
    DiffMode mode_used = DiffMode::exact;
};

// Thermal photon number N_T(omega) = 1/2 coth(hbar omega / 2 k_B T): odd in
// omega, -> sign(omega)/2 for T = 0 or far beyond the thermal cutoff.
template <class Real>
Real photon_number_t(Real omega, double T) {
    if (!std::isfinite(static_cast<double>(omega)) || !std::isfinite(T) || T < 0.0)
        throw DomainError("photon number: bad argument");
    if (omega == Real(0)) {
        if (T > 0.0) throw PoleError("photon number diverges at omega = 0");
        return Real(0);
    }
    if (T == 0.0) return std::copysign(Real(0.5), omega);
    const Real x = static_cast<Real>(constants.hbar) * omega /
                   (Real(2) * static_cast<Real>(constants.k_B) * static_cast<Real>(T));
    if (std::abs(x) > Real(350)) return std::copysign(Real(0.5), omega);
    return Real(0.5) / std::tanh(x);
}

inline double photon_number(double omega, double T) { return photon_number_t(omega, T); }

// dN_T/domega; 0 exactly for T = 0 and beyond the overflow cutoff.
template <class Real>
Real photon_number_derivative_t(Real omega, double T) {
    if (T == 0.0) return Real(0);
    if (omega == Real(0)) throw PoleError("photon number derivative diverges at omega = 0");
    const Real a = static_cast<Real>(constants.hbar) /
                   (Real(2) * static_cast<Real>(constants.k_B) * static_cast<Real>(T));
    const Real x = a * omega;
    if (std::abs(x) > Real(350)) return Real(0);
    const Real sh = std::sinh(x);
    return -Real(0.5) * a / (sh * sh);
}

inline double photon_number_derivative(double omega, double T) {
    return photon_number_derivative_t(omega, T);
}

inline std::pair<double, double> split_frequencies(double omega, double Omega) {
    if (!(omega >= 0.0)) throw DomainError("split_frequencies: omega must be >= 0");
    return {omega + Omega, omega - Omega};
}

namespace detail {

struct Terms {
    double i6 = 0.0, i7 = 0.0, i8 = 0.0;  // N*s
};

// Split-frequency brackets, evaluated in extended precision: at realistic
// rotation rates Omega/omega ~ 1e-8 the two branches agree to ~8 digits and
// the difference would otherwise be pure rounding noise.
inline Terms exact_terms(const RunContext& ctx, double omega) {
    using LD = long double;
    using C = std::complex<LD>;
    const LD w = omega;
    const LD Om = ctx.Omega;
    const LD wp = w + Om, wm = w - Om;
    const auto pp = pol_volumes_at<LD>(ctx.particle, wp, ctx.pol_model);
    const auto pm = pol_volumes_at<LD>(ctx.particle, wm, ctx.pol_model);
    const C Yp = pp.ae + pp.am, Ym = pm.ae + pm.am;
    const LD N1p = photon_number_t<LD>(wp, ctx.T_particle);
    const LD N1m = photon_number_t<LD>(wm, ctx.T_particle);
    const LD N0 = photon_number_t<LD>(w, ctx.T_env);

    const LD hbar = static_cast<LD>(constants.hbar);
    const LD c = static_cast<LD>(constants.c);
    const LD pi = static_cast<LD>(kPi);
    const LD w2 = w * w, w4 = w2 * w2;
    const LD pref6 = hbar * w4 / (LD(3) * pi * pi * c * c * c);
    const LD pref78 = hbar * w4 * w2 * w / (LD(18) * pi * pi * pi * c * c * c * c * c * c);

    const LD b6 = std::imag(pp.chi) * (LD(2) * N1p + N0) -
                  std::imag(pm.chi) * (LD(2) * N1m + N0);
    const LD b7 = std::imag(Yp) * std::imag(pp.chi) * N1p -
                  std::imag(Ym) * std::imag(pm.chi) * N1m;
    const LD b8 = std::real(Yp * std::conj(pp.chi) - Ym * std::conj(pm.chi));

    Terms t;
    t.i6 = static_cast<double>(pref6 * b6);
    t.i7 = static_cast<double>(-pref78 * b7);
    t.i8 = static_cast<double>(pref78 * N0 * b8);
    return t;
}

// First order in Omega: bracket(w+Om) - bracket(w-Om) ~ 2 Om d(bracket)/dw,
// with the environment photon number N0 kept at the unshifted frequency.
inline Terms linearized_terms(const RunContext& ctx, double omega) {
    using LD = long double;
    using C = std::complex<LD>;
    const LD w = omega;
    const LD two_om = LD(2) * static_cast<LD>(ctx.Omega);
    const auto p = pol_volumes_at<LD>(ctx.particle, w, ctx.pol_model);
    const auto dp = pol_volume_derivatives<LD>(ctx.particle, w, ctx.pol_model);
    const C Y = p.ae + p.am, dY = dp.ae + dp.am;
    const LD N1 = photon_number_t<LD>(w, ctx.T_particle);
    const LD dN1 = photon_number_derivative_t<LD>(w, ctx.T_particle);
    const LD N0 = photon_number_t<LD>(w, ctx.T_env);
    const LD ichi = std::imag(p.chi), dichi = std::imag(dp.chi);

    const LD hbar = static_cast<LD>(constants.hbar);
    const LD c = static_cast<LD>(constants.c);
    const LD pi = static_cast<LD>(kPi);
    const LD w2 = w * w, w4 = w2 * w2;
    const LD pref6 = hbar * w4 / (LD(3) * pi * pi * c * c * c);
    const LD pref78 = hbar * w4 * w2 * w / (LD(18) * pi * pi * pi * c * c * c * c * c * c);

    const LD b6 = two_om * (LD(2) * (dichi * N1 + ichi * dN1) + N0 * dichi);
    const LD b7 = two_om * (std::imag(dY) * ichi * N1 + std::imag(Y) * dichi * N1 +
                            std::imag(Y) * ichi * dN1);
    const LD b8 = two_om * std::real(dY * std::conj(p.chi) + Y * std::conj(dp.chi));

    Terms t;
    t.i6 = static_cast<double>(pref6 * b6);
    t.i7 = static_cast<double>(-pref78 * b7);
    t.i8 = static_cast<double>(pref78 * N0 * b8);
    return t;
}

inline Terms terms_at(const RunContext& ctx, double omega) {
    if (!(omega > 0.0)) throw DomainError("force integrand: omega must be > 0");
    return ctx.resolved_mode() == DiffMode::linearized ? linearized_terms(ctx, omega)
                                                       : exact_terms(ctx, omega);
}

}  // namespace detail

inline double integrand_dip_pmfl(const RunContext& ctx, double omega) {
    return detail::terms_at(ctx, omega).i6;
}
inline double integrand_pfl_mfl(const RunContext& ctx, double omega) {
    return detail::terms_at(ctx, omega).i7;
}
inline double integrand_Efl_Hfl(const RunContext& ctx, double omega) {
    return detail::terms_at(ctx, omega).i8;
}

inline SpectralSample integrand_total(const RunContext& ctx, double omega) {
    const auto t = detail::terms_at(ctx, omega);
    return {omega, t.i6, t.i7, t.i8, t.i6 + t.i7 + t.i8};
}

inline SpectralSample linearized_integrands(const RunContext& ctx, double omega) {
    if (!(omega > 0.0)) throw DomainError("force integrand: omega must be > 0");
    const auto t = detail::linearized_terms(ctx, omega);
    return {omega, t.i6, t.i7, t.i8, t.i6 + t.i7 + t.i8};
}

// Diagnostic spin-force coefficients; not used by the force quadrature.
inline std::pair<double, double> spin_force_coefficients(
    const ParticleSpec& spec, double omega, PolModel model = PolModel::mie_dipole) {
    if (!(omega > 0.0)) throw DomainError("spin coefficients: omega must be > 0");
    const auto p = detail::pol_volumes_at<double>(spec, omega, model);
    const double c3 = constants.c * constants.c * constants.c;
    const double w4 = omega * omega * omega * omega;
    const double common = -2.0 * omega * std::imag(p.chi);
    const double ge = common + w4 / (3.0 * c3) * std::real(p.ae * std::conj(p.chi));
    const double gm = common + w4 / (3.0 * c3) * std::real(p.am * std::conj(p.chi));
    return {ge, gm};
}

// Single-frequency structural estimator (order-of-magnitude guide only; the
// integrated components use the split-frequency forms).
inline double estimate_integrand_compact(const RunContext& ctx, double omega) {
    if (!(omega > 0.0)) throw DomainError("estimator: omega must be > 0");
    const auto p = detail::pol_volumes_at<double>(ctx.particle, omega, ctx.pol_model);
    const std::complex<double> Y = p.ae + p.am;
    const double N0 = photon_number(omega, ctx.T_env);
    const double c3 = constants.c * constants.c * constants.c;
    const double w2 = omega * omega, w4 = w2 * w2;
    const double term1 = constants.hbar * w4 / (kPi * kPi * c3) * std::imag(p.chi);
    const double term2 = constants.hbar * w4 * w2 * omega / (6.0 * kPi * kPi * c3 * c3) *
                         std::real(Y * std::conj(p.chi));
    return (term1 - term2) * N0;
}

// Integration support points: the rotation rate, a geometrically graded
// ladder across each resonance, the thermal cutoff, and a final split that
// hands the remainder to the mapped algebraic tail.
inline std::vector<double> auto_breakpoints(const RunContext& ctx,
                                            const QuadratureSettings& settings) {
    std::vector<double> b;
    const double om = std::abs(ctx.Omega);
    if (om > 0.0) b.push_back(om);
    for (const auto& r : ctx.particle.material.resonances) {
        b.push_back(r.omega0);
        const double span = settings.resonance_halfwidths * r.gamma;
        for (double f = 1.0; f > 0.1; f *= 0.5) {  // 1, 1/2, 1/4, 1/8
            if (r.omega0 - span * f > 0.0) b.push_back(r.omega0 - span * f);
            if (span * f > 0.0) b.push_back(r.omega0 + span * f);
        }
    }
    const double t_max = std::max({ctx.T_env, ctx.T_particle, 1.0});
    b.push_back(settings.tail_cut_multiplier * constants.k_B * t_max / constants.hbar);
    b.push_back(2.0 * *std::max_element(b.begin(), b.end()));
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

// The force integrals run over the particle's dispersive-response band
// [0, 2*max(omega0)].  A dipole with pure Lorentz dispersion has no physical
// response left an octave above its highest resonance, while the omega^4 and
// omega^7 kinematic prefactors would otherwise amplify the model's
// out-of-band tail without bound.  The edge is part of the physical model,
// deliberately NOT a quadrature setting: tolerance or cutoff knob changes
// must not move it.
inline double dispersive_band_edge(const MaterialModel& m) {
    return 2.0 * m.max_omega0();
}

inline ForceBreakdown compute_force(const RunContext& ctx) {
    ctx.validate();
    ForceBreakdown out;
    out.mode_used = ctx.resolved_mode();
    if (ctx.Omega == 0.0) return out;  // no splitting, every integrand is 0

    const double edge = dispersive_band_edge(ctx.particle.material);
    std::vector<double> bps;
    for (double b : auto_breakpoints(ctx, ctx.quad))
        if (b < edge) bps.push_back(b);
    bps.push_back(edge);

    auto component = [&](int which) {
        return integrate_half_line(
            [&, which](double w) {
                if (w >= edge) return 0.0;
                const auto t = detail::terms_at(ctx, w);
                return which == 0 ? t.i6 : which == 1 ? t.i7 : t.i8;
            },
            bps, ctx.quad);
    };
    const QuadratureResult q6 = component(0);
    const QuadratureResult q7 = component(1);
    const QuadratureResult q8 = component(2);
    out.f_dip_pmfl = q6.value;
    out.f_int_pfl_mfl = q7.value;
    out.f_int_Efl_Hfl = q8.value;
    out.f_tot = q6.value + q7.value + q8.value;
    out.est_abs_error = q6.abs_error_estimate + q7.abs_error_estimate + q8.abs_error_estimate;
    return out;
}

}  // namespace ccthrust
