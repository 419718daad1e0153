#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ccthrust/errors.hpp"
#include "ccthrust/force_kernel.hpp"

namespace ccthrust {

enum class SweepVariable { rotation, temperature, omega0, kappa_strength, radius };

// Variable units per axis: rotation in Hz (ordinary frequency), temperature
// in K (sets T_env = T_particle jointly), omega0 in Hz acting on the first
// resonance (gamma rescales to keep gamma/omega0 fixed unless frozen),
// kappa_strength dimensionless on the first resonance, radius in m.
struct SweepSpec {
    SweepVariable variable = SweepVariable::rotation;
    double from = 0.0;
    double to = 0.0;
    int points = 0;
    bool log_spacing = false;
    bool freeze_gamma = false;
    RunContext base;

    void validate() const {
        base.validate();
        if (points < 2) throw ConfigError("sweep: needs at least 2 grid points");
        if (!std::isfinite(from) || !std::isfinite(to))
            throw ConfigError("sweep: non-finite endpoints");
        if (log_spacing && !(from > 0.0 && to > 0.0))
            throw ConfigError("sweep: log spacing needs positive endpoints");
        if (!(from < to)) throw ConfigError("sweep: requires from < to");
    }
};

struct SweepRow {
    double value = 0.0;
    ForceBreakdown force;
    bool converged = true;
    std::string message;
};

struct LinearFit {
    double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};

struct SweepMarkers {
    bool has_fit = false;
    LinearFit fit;  // f_tot against the variable
    bool has_crossing = false;
    double crossing = 0.0;  // variable value where f_tot changes sign
    int sign_changes = 0;
    bool has_peak = false;
    double peak = 0.0;  // variable value maximizing |f_tot|
    double peak_value = 0.0;
};

struct SweepOutcome {
    SweepVariable variable = SweepVariable::rotation;
    std::vector<SweepRow> rows;
    SweepMarkers markers;
};

inline const char* sweep_variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::rotation: return "rot_freq_hz";
        case SweepVariable::temperature: return "t_k";
        case SweepVariable::omega0: return "omega0_hz";
        case SweepVariable::kappa_strength: return "strength_kappa";
        case SweepVariable::radius: return "radius_m";
    }
    return "value";
}

// One grid point: clone the base context with the variable applied.
inline RunContext apply_sweep_value(const RunContext& base, SweepVariable var,
                                    double value, bool freeze_gamma) {
    RunContext ctx = base;
    switch (var) {
        case SweepVariable::rotation:
            ctx.Omega = 2.0 * kPi * value;
            break;
        case SweepVariable::temperature:
            ctx.T_env = value;
            ctx.T_particle = value;
            break;
        case SweepVariable::omega0: {
            auto& r = ctx.particle.material.resonances.front();
            const double gamma_rel = r.gamma / r.omega0;
            r.omega0 = 2.0 * kPi * value;
            if (!freeze_gamma) r.gamma = gamma_rel * r.omega0;
            break;
        }
        case SweepVariable::kappa_strength:
            ctx.particle.material.resonances.front().strength_kappa = value;
            break;
        case SweepVariable::radius:
            ctx.particle.radius = value;
            break;
    }
    return ctx;
}

namespace detail {

inline double sweep_f_tot(const SweepSpec& spec, double value) {
    return compute_force(apply_sweep_value(spec.base, spec.variable, value,
                                           spec.freeze_gamma))
        .f_tot;
}

inline LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit fit;
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
    return fit;
}

}  // namespace detail

inline SweepOutcome run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepOutcome out;
    out.variable = spec.variable;
    out.rows.reserve(static_cast<std::size_t>(spec.points));

    for (int i = 0; i < spec.points; ++i) {
        const double t = spec.points == 1 ? 0.0
                                          : static_cast<double>(i) /
                                                static_cast<double>(spec.points - 1);
        const double value = spec.log_spacing
                                 ? spec.from * std::pow(spec.to / spec.from, t)
                                 : spec.from + (spec.to - spec.from) * t;
        SweepRow row;
        row.value = value;
        try {
            row.force = compute_force(
                apply_sweep_value(spec.base, spec.variable, value, spec.freeze_gamma));
        } catch (const ConvergenceError& e) {
            row.converged = false;
            row.message = e.what();
        } catch (const PoleError& e) {
            row.converged = false;
            row.message = e.what();
        } catch (const NumericError& e) {
            row.converged = false;
            row.message = e.what();
        }
        out.rows.push_back(std::move(row));
    }

    std::vector<double> xs, ys;
    for (const auto& r : out.rows)
        if (r.converged) {
            xs.push_back(r.value);
            ys.push_back(r.force.f_tot);
        }
    if (xs.size() < 2) return out;  // nothing derivable; caller checks rows

    if (spec.variable == SweepVariable::rotation ||
        spec.variable == SweepVariable::temperature ||
        spec.variable == SweepVariable::kappa_strength) {
        out.markers.has_fit = true;
        out.markers.fit = detail::least_squares(xs, ys);
    }

    if (spec.variable == SweepVariable::omega0) {
        // Zero crossing: bracket on the grid, then bisect the actual force.
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            if (!(ys[i] * ys[i + 1] < 0.0)) continue;
            ++out.markers.sign_changes;
            if (out.markers.has_crossing) continue;  // report the first
            double lo = xs[i], hi = xs[i + 1], flo = ys[i];
            for (int it = 0; it < 200 && (hi - lo) > 1e-4 * std::abs(0.5 * (lo + hi));
                 ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = detail::sweep_f_tot(spec, mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (flo * fm < 0.0)
                    hi = mid;
                else {
                    lo = mid;
                    flo = fm;
                }
            }
            out.markers.has_crossing = true;
            out.markers.crossing = 0.5 * (lo + hi);
        }

        // Extremum of |f_tot|: golden-section refinement around the grid peak.
        std::size_t best = 0;
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (std::abs(ys[i]) > std::abs(ys[best])) best = i;
        out.markers.has_peak = true;
        out.markers.peak = xs[best];
        out.markers.peak_value = ys[best];
        if (best > 0 && best + 1 < xs.size()) {
            const double invphi = 0.6180339887498949;
            double a = xs[best - 1], b = xs[best + 1];
            double c = b - invphi * (b - a), d = a + invphi * (b - a);
            double fc = std::abs(detail::sweep_f_tot(spec, c));
            double fd = std::abs(detail::sweep_f_tot(spec, d));
            for (int it = 0; it < 200 && (b - a) > 1e-4 * std::abs(0.5 * (a + b)); ++it) {
                if (fc > fd) {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - invphi * (b - a);
                    fc = std::abs(detail::sweep_f_tot(spec, c));
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + invphi * (b - a);
                    fd = std::abs(detail::sweep_f_tot(spec, d));
                }
            }
            const double xm = 0.5 * (a + b);
            const double fm = detail::sweep_f_tot(spec, xm);
            if (std::abs(fm) >= std::abs(out.markers.peak_value)) {
                out.markers.peak = xm;
                out.markers.peak_value = fm;
            }
        }
    }
    return out;
}

}  // namespace ccthrust
