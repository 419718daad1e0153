#pragma once

#include <cmath>
#include <complex>

#include "ccthrust/constants.hpp"
#include "ccthrust/errors.hpp"
#include "ccthrust/material.hpp"
#include "ccthrust/riccati.hpp"

namespace ccthrust {

enum class PolModel { quasi_static, quasi_static_rc, mie_dipole };

struct ParticleSpec {
    double radius = 0.0;  // m
    MaterialModel material;

    void validate() const {
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw DomainError("particle: radius must be > 0 and finite");
        material.validate();
    }
};

// alpha_e carries a factor eps0 and alpha_m a factor mu0, so that
// alpha_e/eps0 and alpha_m/mu0 are complex volumes (m^3) and
// Upsilon = alpha_e/eps0 + alpha_m/mu0 is a volume.  chi is in m^2*s.
struct PolarizabilitySet {
    std::complex<double> alpha_e;  // eps0 * m^3
    std::complex<double> alpha_m;  // mu0 * m^3
    std::complex<double> chi;      // m^2 * s
    double omega = 0.0;            // signed rad/s
    PolModel model_tag = PolModel::quasi_static;
};

inline std::complex<double> upsilon(const PolarizabilitySet& p) {
    return p.alpha_e / constants.eps0 + p.alpha_m / constants.mu0;
}

struct MieDipoleCoefficients {
    std::complex<double> a1, b1, c1;  // n=1 partial-wave scattering coefficients
    double size_parameter = 0.0;      // kR
};

namespace detail {

// Internal unit system: ae = alpha_e/eps0 [m^3], am = alpha_m/mu0 [m^3], chi [m^2 s].
template <class Real>
struct PolVolumes {
    std::complex<Real> ae, am, chi;
};

template <class Real>
PolVolumes<Real> quasi_static_volumes(const ParticleSpec& spec, Real omega) {
    using C = std::complex<Real>;
    const C e = eval_epsilon_t<Real>(spec.material, omega);
    const C u = eval_mu_t<Real>(spec.material, omega);
    const C kap = eval_kappa_t<Real>(spec.material, omega);
    const C ep2 = e + Real(2), up2 = u + Real(2), k2 = kap * kap;
    const C delta = ep2 * up2 - k2;
    const Real scale = std::abs(ep2) * std::abs(up2) + std::abs(k2);
    if (std::abs(delta) <= Real(1e-12) * scale)
        throw PoleError("quasi-static polarizability: (eps+2)(mu+2) - kappa^2 = 0");
    const Real r3 = static_cast<Real>(spec.radius) * static_cast<Real>(spec.radius) *
                    static_cast<Real>(spec.radius);
    const Real fourpi = Real(4) * static_cast<Real>(kPi);
    PolVolumes<Real> p;
    p.ae = fourpi * r3 * ((e - Real(1)) * up2 - k2) / delta;
    p.am = fourpi * r3 * ((u - Real(1)) * ep2 - k2) / delta;
    p.chi = Real(3) * fourpi * r3 * kap / (static_cast<Real>(constants.c) * delta);
    return p;
}

// Coupled 2x2 dynamic (radiation-reaction) correction, omega > 0:
// with lam = k^3/6pi and A0 = [[ae, i c chi], [-i c chi, am]],
// A = (I - i lam A0)^(-1) A0.  Worked out entrywise:
//   det = (1 - i lam ae)(1 - i lam am) + lam^2 (c chi)^2
//   ae' = [ae (1 - i lam am) + i lam (c chi)^2] / det, am' symmetric, chi' = chi / det.
template <class Real>
PolVolumes<Real> radiative_corrected_volumes(const PolVolumes<Real>& p0, Real omega) {
    using C = std::complex<Real>;
    const Real k = omega / static_cast<Real>(constants.c);
    const Real lam = k * k * k / (Real(6) * static_cast<Real>(kPi));
    const C i_lam(Real(0), lam);
    const C cchi = static_cast<Real>(constants.c) * p0.chi;
    const C fe = C(Real(1), Real(0)) - i_lam * p0.ae;
    const C fm = C(Real(1), Real(0)) - i_lam * p0.am;
    const C det = fe * fm + lam * lam * cchi * cchi;
    if (!(std::abs(det) > Real(0)) || !std::isfinite(static_cast<double>(std::abs(det))))
        throw NumericError("radiative correction: singular dressing matrix");
    PolVolumes<Real> p;
    p.ae = (p0.ae * fm + i_lam * cchi * cchi) / det;
    p.am = (p0.am * fe + i_lam * cchi * cchi) / det;
    p.chi = p0.chi / det;
    return p;
}

template <class Real>
struct MieEval {
    std::complex<Real> a1, b1, c1;
    PolVolumes<Real> vol;
};

// n=1 boundary-value solution for a sphere of chiral medium, omega > 0.
// Internal circular eigenwaves have indices n +/- kappa; the external
// fields use psi/xi at x0 = kR.  Coefficient combinations follow the
// Bohren construction for optically active spheres.
template <class Real>
MieEval<Real> mie_eval(const ParticleSpec& spec, Real omega) {
    using C = std::complex<Real>;
    const C e = eval_epsilon_t<Real>(spec.material, omega);
    const C u = eval_mu_t<Real>(spec.material, omega);
    const C kap = eval_kappa_t<Real>(spec.material, omega);
    const C n = std::sqrt(e * u);
    const C rho = std::sqrt(e / u);
    const Real x0 = omega * static_cast<Real>(spec.radius) / static_cast<Real>(constants.c);
    const C xp = (n + kap) * x0;
    const C xm = (n - kap) * x0;

    const auto r0 = riccati1<Real>(C(x0, Real(0)));
    const auto rp = riccati1<Real>(xp);
    const auto rm = riccati1<Real>(xm);
    const C xi0 = r0.psi - C(Real(0), Real(1)) * r0.chi;
    const C dxi0 = r0.dpsi - C(Real(0), Real(1)) * r0.dchi;

    const C Wp = rp.psi * dxi0 - rho * xi0 * rp.dpsi;
    const C Wm = rm.psi * dxi0 - rho * xi0 * rm.dpsi;
    const C Vp = rho * rp.psi * dxi0 - xi0 * rp.dpsi;
    const C Vm = rho * rm.psi * dxi0 - xi0 * rm.dpsi;
    const C Ap = rp.psi * r0.dpsi - rho * r0.psi * rp.dpsi;
    const C Am = rm.psi * r0.dpsi - rho * r0.psi * rm.dpsi;
    const C Bp = rho * rp.psi * r0.dpsi - r0.psi * rp.dpsi;
    const C Bm = rho * rm.psi * r0.dpsi - r0.psi * rm.dpsi;
    const C den = Wp * Vm + Wm * Vp;
    if (!(std::abs(den) > Real(0)) || !std::isfinite(static_cast<double>(std::abs(den))))
        throw NumericError("mie: degenerate n=1 boundary system at kR = " +
                           std::to_string(static_cast<double>(x0)));

    MieEval<Real> out;
    out.a1 = (Bp * Wm + Bm * Wp) / den;
    out.b1 = (Ap * Vm + Am * Vp) / den;
    out.c1 = -rho * (rp.psi * rm.dpsi - rm.psi * rp.dpsi) / den;
    const Real k3 = (omega / static_cast<Real>(constants.c)) *
                    (omega / static_cast<Real>(constants.c)) *
                    (omega / static_cast<Real>(constants.c));
    const Real sixpi = Real(6) * static_cast<Real>(kPi);
    const C i1(Real(0), Real(1));
    out.vol.ae = i1 * sixpi * out.a1 / k3;
    out.vol.am = i1 * sixpi * out.b1 / k3;
    out.vol.chi = sixpi * out.c1 / (static_cast<Real>(constants.c) * k3);
    return out;
}

// Signed-frequency entry point in the internal volume units.  omega = 0
// falls back to the static quasi-static limit (chi = 0 there for any model).
template <class Real>
PolVolumes<Real> pol_volumes_at(const ParticleSpec& spec, Real omega, PolModel model) {
    if (!std::isfinite(static_cast<double>(omega)))
        throw DomainError("polarizability: non-finite frequency");
    if (omega == Real(0)) return quasi_static_volumes<Real>(spec, Real(0));
    const Real w = omega < Real(0) ? -omega : omega;
    PolVolumes<Real> p;
    switch (model) {
        case PolModel::quasi_static:
            p = quasi_static_volumes<Real>(spec, w);
            break;
        case PolModel::quasi_static_rc:
            p = radiative_corrected_volumes<Real>(quasi_static_volumes<Real>(spec, w), w);
            break;
        case PolModel::mie_dipole:
            p = mie_eval<Real>(spec, w).vol;
            break;
        default:
            throw DomainError("polarizability: unknown model tag");
    }
    if (omega < Real(0)) {
        p.ae = std::conj(p.ae);
        p.am = std::conj(p.am);
        p.chi = -std::conj(p.chi);
    }
    return p;
}

inline PolarizabilitySet to_set(const PolVolumes<double>& p, double omega, PolModel tag) {
    PolarizabilitySet s;
    s.alpha_e = constants.eps0 * p.ae;
    s.alpha_m = constants.mu0 * p.am;
    s.chi = p.chi;
    s.omega = omega;
    s.model_tag = tag;
    return s;
}

// --- d/domega of the volume set, omega > 0 --------------------------------
// Quasi-static modes: analytic chain through the dispersion derivatives
// (radiation dressing differentiated via A' = M^{-1}(A0' - M' A)).
// Mie mode: two-level Richardson central differences; the step rides on the
// narrowest resonance width so the truncation error stays ~(h/gamma)^4.

template <class Real>
PolVolumes<Real> quasi_static_volume_derivatives(const ParticleSpec& spec, Real omega) {
    using C = std::complex<Real>;
    const C e = eval_epsilon_t<Real>(spec.material, omega);
    const C u = eval_mu_t<Real>(spec.material, omega);
    const C kap = eval_kappa_t<Real>(spec.material, omega);
    C de, du, dkap;
    eval_dispersion_derivatives_t<Real>(spec.material, omega, de, du, dkap);
    const C ep2 = e + Real(2), up2 = u + Real(2);
    const C delta = ep2 * up2 - kap * kap;
    const Real scale = std::abs(ep2) * std::abs(up2) + std::abs(kap * kap);
    if (std::abs(delta) <= Real(1e-12) * scale)
        throw PoleError("quasi-static derivative: (eps+2)(mu+2) - kappa^2 = 0");
    const C ddelta = de * up2 + ep2 * du - Real(2) * kap * dkap;
    const C ne = (e - Real(1)) * up2 - kap * kap;
    const C nm = (u - Real(1)) * ep2 - kap * kap;
    const C dne = de * up2 + (e - Real(1)) * du - Real(2) * kap * dkap;
    const C dnm = du * ep2 + (u - Real(1)) * de - Real(2) * kap * dkap;
    const Real r3 = static_cast<Real>(spec.radius) * static_cast<Real>(spec.radius) *
                    static_cast<Real>(spec.radius);
    const Real fourpi = Real(4) * static_cast<Real>(kPi);
    PolVolumes<Real> d;
    d.ae = fourpi * r3 * (dne * delta - ne * ddelta) / (delta * delta);
    d.am = fourpi * r3 * (dnm * delta - nm * ddelta) / (delta * delta);
    d.chi = Real(3) * fourpi * r3 * (dkap * delta - kap * ddelta) /
            (static_cast<Real>(constants.c) * delta * delta);
    return d;
}

template <class Real>
struct Mat2 {
    std::complex<Real> a, b, c, d;  // [[a, b], [c, d]]
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 inverse() const {
        const std::complex<Real> det = a * d - b * c;
        if (!(std::abs(det) > Real(0)))
            throw NumericError("radiative correction: singular dressing matrix");
        return {d / det, -b / det, -c / det, a / det};
    }
};

template <class Real>
PolVolumes<Real> quasi_static_rc_volume_derivatives(const ParticleSpec& spec, Real omega) {
    using C = std::complex<Real>;
    const auto p0 = quasi_static_volumes<Real>(spec, omega);
    const auto d0 = quasi_static_volume_derivatives<Real>(spec, omega);
    const Real cc = static_cast<Real>(constants.c);
    const Real k = omega / cc;
    const Real lam = k * k * k / (Real(6) * static_cast<Real>(kPi));
    const Real dlam = Real(3) * k * k / (Real(6) * static_cast<Real>(kPi) * cc);
    const C i1(Real(0), Real(1));
    const Mat2<Real> A0{p0.ae, i1 * cc * p0.chi, -i1 * cc * p0.chi, p0.am};
    const Mat2<Real> dA0{d0.ae, i1 * cc * d0.chi, -i1 * cc * d0.chi, d0.am};
    const Mat2<Real> one{C(1), C(0), C(0), C(1)};
    auto scaled = [&](const Mat2<Real>& m, C s) {
        return Mat2<Real>{s * m.a, s * m.b, s * m.c, s * m.d};
    };
    const Mat2<Real> M = one - scaled(A0, i1 * lam);
    const Mat2<Real> Minv = M.inverse();
    const Mat2<Real> A = Minv * A0;
    const Mat2<Real> dM = scaled(A0, -i1 * dlam) - scaled(dA0, i1 * lam);
    const Mat2<Real> dA = Minv * (dA0 - dM * A);
    PolVolumes<Real> d;
    d.ae = dA.a;
    d.am = dA.d;
    d.chi = (dA.b - dA.c) / (Real(2) * i1 * cc);
    return d;
}

template <class Real>
PolVolumes<Real> mie_volume_derivatives(const ParticleSpec& spec, Real omega) {
    Real width = omega / Real(4);
    for (const auto& r : spec.material.resonances)
        if (r.gamma > 0.0) width = std::min(width, static_cast<Real>(r.gamma));
    const Real h = Real(0.01) * width;
    auto central = [&](Real step) {
        const auto hi = mie_eval<Real>(spec, omega + step).vol;
        const auto lo = mie_eval<Real>(spec, omega - step).vol;
        PolVolumes<Real> d;
        d.ae = (hi.ae - lo.ae) / (Real(2) * step);
        d.am = (hi.am - lo.am) / (Real(2) * step);
        d.chi = (hi.chi - lo.chi) / (Real(2) * step);
        return d;
    };
    const auto d1 = central(h), d2 = central(h / Real(2));
    PolVolumes<Real> d;
    d.ae = (Real(4) * d2.ae - d1.ae) / Real(3);
    d.am = (Real(4) * d2.am - d1.am) / Real(3);
    d.chi = (Real(4) * d2.chi - d1.chi) / Real(3);
    return d;
}

// d/domega of (ae, am, chi) volumes at omega > 0 under the given model.
template <class Real>
PolVolumes<Real> pol_volume_derivatives(const ParticleSpec& spec, Real omega,
                                        PolModel model) {
    if (!(omega > Real(0)))
        throw DomainError("polarizability derivatives: frequency must be > 0");
    switch (model) {
        case PolModel::quasi_static:
            return quasi_static_volume_derivatives<Real>(spec, omega);
        case PolModel::quasi_static_rc:
            return quasi_static_rc_volume_derivatives<Real>(spec, omega);
        case PolModel::mie_dipole:
            return mie_volume_derivatives<Real>(spec, omega);
    }
    throw DomainError("polarizability derivatives: unknown model tag");
}

}  // namespace detail

inline PolarizabilitySet quasi_static_polarizabilities(const ParticleSpec& spec,
                                                       double omega) {
    spec.validate();
    return detail::to_set(detail::quasi_static_volumes<double>(spec, omega), omega,
                          PolModel::quasi_static);
}

inline PolarizabilitySet radiative_correction(const PolarizabilitySet& p0, double omega) {
    if (p0.model_tag != PolModel::quasi_static)
        throw DomainError("radiative correction: input must be the bare quasi-static set");
    if (!(omega > 0.0))
        throw DomainError("radiative correction: frequency must be > 0");
    detail::PolVolumes<double> v{p0.alpha_e / constants.eps0, p0.alpha_m / constants.mu0,
                                 p0.chi};
    return detail::to_set(detail::radiative_corrected_volumes<double>(v, omega), omega,
                          PolModel::quasi_static_rc);
}

inline MieDipoleCoefficients mie_dipole_coefficients(const ParticleSpec& spec,
                                                     double omega) {
    spec.validate();
    if (!(omega > 0.0)) throw DomainError("mie: frequency must be > 0");
    const auto m = detail::mie_eval<double>(spec, omega);
    return {m.a1, m.b1, m.c1, omega * spec.radius / constants.c};
}

inline PolarizabilitySet mie_dipole_polarizabilities(const ParticleSpec& spec,
                                                     double omega) {
    spec.validate();
    if (!(omega > 0.0)) throw DomainError("mie: frequency must be > 0");
    return detail::to_set(detail::mie_eval<double>(spec, omega).vol, omega,
                          PolModel::mie_dipole);
}

inline PolarizabilitySet polarizability_at(const ParticleSpec& spec, double omega,
                                           PolModel model) {
    spec.validate();
    const PolModel tag = (omega == 0.0) ? PolModel::quasi_static : model;
    return detail::to_set(detail::pol_volumes_at<double>(spec, omega, model), omega, tag);
}

}  // namespace ccthrust
