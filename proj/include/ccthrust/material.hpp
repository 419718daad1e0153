#pragma once

#include <cmath>
#include <complex>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "ccthrust/constants.hpp"
#include "ccthrust/errors.hpp"

namespace ccthrust {

// Denominator convention of the resonance terms.  gamma_omega is the standard
// causal Lorentz form (damping term -i*gamma*omega); gamma_omega0 freezes the
// damping term at -i*gamma*omega0 and exists for sensitivity studies only.
enum class DampingConvention { gamma_omega, gamma_omega0 };

struct LorentzResonance {
    double omega0 = 0.0;          // rad/s, > 0
    double gamma = 0.0;           // rad/s, >= 0
    double strength_e = 0.0;      // dimensionless
    double strength_m = 0.0;      // dimensionless
    double strength_kappa = 0.0;  // dimensionless, sign = handedness
};

struct MaterialModel {
    double eps_b = 1.0;
    double mu_b = 1.0;
    std::vector<LorentzResonance> resonances;
    DampingConvention damping = DampingConvention::gamma_omega;

    void validate() const {
        if (!std::isfinite(eps_b) || !std::isfinite(mu_b))
            throw DomainError("material: non-finite background constant");
        if (resonances.empty())
            throw ConfigError("material: needs at least one resonance term");
        for (const auto& r : resonances) {
            if (!(r.omega0 > 0.0) || !std::isfinite(r.omega0))
                throw ConfigError("material: resonance omega0 must be > 0");
            if (!(r.gamma >= 0.0) || !std::isfinite(r.gamma))
                throw ConfigError("material: resonance gamma must be >= 0");
            if (!std::isfinite(r.strength_e) || !std::isfinite(r.strength_m) ||
                !std::isfinite(r.strength_kappa))
                throw ConfigError("material: non-finite resonance strength");
        }
    }

    double min_omega0() const {
        double m = resonances.front().omega0;
        for (const auto& r : resonances) m = std::min(m, r.omega0);
        return m;
    }
    double max_omega0() const {
        double m = resonances.front().omega0;
        for (const auto& r : resonances) m = std::max(m, r.omega0);
        return m;
    }
    double min_gamma() const {
        double m = resonances.front().gamma;
        for (const auto& r : resonances) m = std::min(m, r.gamma);
        return m;
    }
};

// Single-resonance chiral metamaterial used as the default particle medium.
inline MaterialModel base_material() {
    MaterialModel m;
    m.eps_b = 3.1736;
    m.mu_b = 0.9798;
    LorentzResonance r;
    r.omega0 = 1.8713e12;
    r.gamma = 0.05463 * r.omega0;
    r.strength_e = 0.1560;
    r.strength_m = 0.0625;
    r.strength_kappa = 0.0993;
    m.resonances.push_back(r);
    return m;
}

struct DispersionSample {
    double omega = 0.0;
    std::complex<double> eps, mu, kappa;
};

namespace detail {

// Resonance denominator at omega >= 0.
template <class Real>
std::complex<Real> lorentz_denominator(const LorentzResonance& r, Real omega,
                                       DampingConvention dc) {
    const Real w0 = static_cast<Real>(r.omega0);
    const Real g = static_cast<Real>(r.gamma);
    const Real damping = (dc == DampingConvention::gamma_omega) ? g * omega : g * w0;
    return {w0 * w0 - omega * omega, -damping};
}

// eps, mu, kappa at omega >= 0; negative frequencies are handled by the
// public wrappers through the reality conditions.
template <class Real>
void dispersion_nonneg(const MaterialModel& m, Real omega, std::complex<Real>& eps,
                       std::complex<Real>& mu, std::complex<Real>& kappa) {
    eps = {static_cast<Real>(m.eps_b), Real(0)};
    mu = {static_cast<Real>(m.mu_b), Real(0)};
    kappa = {Real(0), Real(0)};
    for (const auto& r : m.resonances) {
        const std::complex<Real> den = lorentz_denominator(r, omega, m.damping);
        const Real w0 = static_cast<Real>(r.omega0);
        eps += static_cast<Real>(r.strength_e) * w0 * w0 / den;
        mu += static_cast<Real>(r.strength_m) * w0 * w0 / den;
        kappa += static_cast<Real>(r.strength_kappa) * w0 * omega / den;
    }
}

template <class Real>
void check_finite_omega(Real omega) {
    if (!std::isfinite(static_cast<double>(omega)))
        throw DomainError("dispersion: non-finite frequency");
}

}  // namespace detail

// Reality conditions: eps(-w) = conj eps(w), mu likewise, kappa(-w) = -conj kappa(w).
// Enforced by branch so they hold to the last bit for either damping convention.
template <class Real = double>
std::complex<Real> eval_epsilon_t(const MaterialModel& m, Real omega) {
    detail::check_finite_omega(omega);
    std::complex<Real> e, u, k;
    detail::dispersion_nonneg(m, std::abs(omega), e, u, k);
    return omega < Real(0) ? std::conj(e) : e;
}

template <class Real = double>
std::complex<Real> eval_mu_t(const MaterialModel& m, Real omega) {
    detail::check_finite_omega(omega);
    std::complex<Real> e, u, k;
    detail::dispersion_nonneg(m, std::abs(omega), e, u, k);
    return omega < Real(0) ? std::conj(u) : u;
}

template <class Real = double>
std::complex<Real> eval_kappa_t(const MaterialModel& m, Real omega) {
    detail::check_finite_omega(omega);
    std::complex<Real> e, u, k;
    detail::dispersion_nonneg(m, std::abs(omega), e, u, k);
    return omega < Real(0) ? -std::conj(k) : k;
}

inline std::complex<double> eval_epsilon(const MaterialModel& m, double omega) {
    return eval_epsilon_t<double>(m, omega);
}
inline std::complex<double> eval_mu(const MaterialModel& m, double omega) {
    return eval_mu_t<double>(m, omega);
}
inline std::complex<double> eval_kappa(const MaterialModel& m, double omega) {
    return eval_kappa_t<double>(m, omega);
}

inline DispersionSample eval_dispersion(const MaterialModel& m, double omega) {
    detail::check_finite_omega(omega);
    std::complex<double> e, u, k;
    detail::dispersion_nonneg(m, std::abs(omega), e, u, k);
    if (omega < 0.0) {
        e = std::conj(e);
        u = std::conj(u);
        k = -std::conj(k);
    }
    return {omega, e, u, k};
}

struct DispersionDerivatives {
    std::complex<double> deps, dmu, dkappa;  // per (rad/s)
};

// Closed-form d/domega of the rational resonance terms, omega >= 0.
// With D = w0^2 - w^2 - i*damping(w):  d(eps-term) = -S_e w0^2 D'/D^2 and
// d(kappa-term) = S_k w0 (D - w D')/D^2, where D' = dD/dw.
template <class Real = double>
void eval_dispersion_derivatives_t(const MaterialModel& m, Real omega,
                                   std::complex<Real>& deps, std::complex<Real>& dmu,
                                   std::complex<Real>& dkappa) {
    detail::check_finite_omega(omega);
    if (!(omega >= Real(0)))
        throw DomainError("dispersion derivatives: frequency must be >= 0");
    deps = dmu = dkappa = {Real(0), Real(0)};
    for (const auto& r : m.resonances) {
        const std::complex<Real> den = detail::lorentz_denominator(r, omega, m.damping);
        const std::complex<Real> den2 = den * den;
        const Real w0 = static_cast<Real>(r.omega0);
        const Real g = static_cast<Real>(r.gamma);
        const std::complex<Real> dden =
            (m.damping == DampingConvention::gamma_omega)
                ? std::complex<Real>(Real(-2) * omega, -g)
                : std::complex<Real>(Real(-2) * omega, Real(0));
        deps += -static_cast<Real>(r.strength_e) * w0 * w0 * dden / den2;
        dmu += -static_cast<Real>(r.strength_m) * w0 * w0 * dden / den2;
        dkappa += static_cast<Real>(r.strength_kappa) * w0 * (den - omega * dden) / den2;
    }
}

inline DispersionDerivatives eval_dispersion_derivatives(const MaterialModel& m,
                                                         double omega) {
    DispersionDerivatives d;
    eval_dispersion_derivatives_t<double>(m, omega, d.deps, d.dmu, d.dkappa);
    return d;
}

// ---------------------------------------------------------------------------
// Material description files.  Plain-text key/value grammar:
//
//   # comment
//   eps_b 3.1736
//   mu_b 0.9798
//   damping gamma_omega          (optional; gamma_omega | gamma_omega0)
//   resonance {
//     omega0_rad_s 1.8713e12     (or omega0_hz, converted by 2*pi)
//     gamma_rel 0.05463          (gamma/omega0; or gamma_rad_s, absolute)
//     strength_e 0.1560
//     strength_m 0.0625
//     strength_kappa 0.0993
//   }
//
// Unknown keys and malformed numbers are configuration errors naming the key.

namespace detail {

inline double parse_number(const std::string& key, const std::string& text, int lineno) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("material:" + std::to_string(lineno) + ": bad numeric value for '" +
                          key + "': " + text);
    }
}

}  // namespace detail

inline MaterialModel parse_material(std::istream& in) {
    MaterialModel m;
    bool in_resonance = false;
    LorentzResonance res;
    bool have_omega0 = false, have_gamma = false;
    double gamma_rel = 0.0;
    bool gamma_is_rel = false;

    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ConfigError("material:" + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;

        if (key == "resonance") {
            std::string brace;
            if (in_resonance) fail("nested resonance block");
            if (!(ls >> brace) || brace != "{") fail("expected '{' after 'resonance'");
            in_resonance = true;
            res = LorentzResonance{};
            have_omega0 = have_gamma = gamma_is_rel = false;
            continue;
        }
        if (key == "}") {
            if (!in_resonance) fail("unmatched '}'");
            if (!have_omega0) fail("resonance block missing omega0_rad_s/omega0_hz");
            if (!have_gamma) fail("resonance block missing gamma_rel/gamma_rad_s");
            if (gamma_is_rel) res.gamma = gamma_rel * res.omega0;
            m.resonances.push_back(res);
            in_resonance = false;
            continue;
        }

        std::string value;
        if (!(ls >> value)) fail("key '" + key + "' has no value");
        std::string extra;
        if (ls >> extra) fail("trailing text after value for '" + key + "'");

        if (!in_resonance) {
            if (key == "eps_b")
                m.eps_b = detail::parse_number(key, value, lineno);
            else if (key == "mu_b")
                m.mu_b = detail::parse_number(key, value, lineno);
            else if (key == "damping") {
                if (value == "gamma_omega")
                    m.damping = DampingConvention::gamma_omega;
                else if (value == "gamma_omega0")
                    m.damping = DampingConvention::gamma_omega0;
                else
                    fail("damping must be gamma_omega or gamma_omega0");
            } else
                fail("unknown key '" + key + "'");
        } else {
            if (key == "omega0_rad_s") {
                if (have_omega0) fail("duplicate omega0 in resonance block");
                res.omega0 = detail::parse_number(key, value, lineno);
                have_omega0 = true;
            } else if (key == "omega0_hz") {
                if (have_omega0) fail("duplicate omega0 in resonance block");
                res.omega0 = 2.0 * kPi * detail::parse_number(key, value, lineno);
                have_omega0 = true;
            } else if (key == "gamma_rel") {
                if (have_gamma) fail("duplicate gamma in resonance block");
                gamma_rel = detail::parse_number(key, value, lineno);
                gamma_is_rel = true;
                have_gamma = true;
            } else if (key == "gamma_rad_s") {
                if (have_gamma) fail("duplicate gamma in resonance block");
                res.gamma = detail::parse_number(key, value, lineno);
                have_gamma = true;
            } else if (key == "strength_e")
                res.strength_e = detail::parse_number(key, value, lineno);
            else if (key == "strength_m")
                res.strength_m = detail::parse_number(key, value, lineno);
            else if (key == "strength_kappa")
                res.strength_kappa = detail::parse_number(key, value, lineno);
            else
                fail("unknown resonance key '" + key + "'");
        }
    }
    if (in_resonance)
        throw ConfigError("material: unterminated resonance block");
    m.validate();
    return m;
}

inline MaterialModel parse_material(const std::string& text) {
    std::istringstream in(text);
    return parse_material(in);
}

}  // namespace ccthrust
