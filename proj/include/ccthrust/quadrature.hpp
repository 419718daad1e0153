#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "ccthrust/errors.hpp"

namespace ccthrust {

struct QuadratureSettings {
    double rel_tol = 1e-9;
    double abs_tol_floor = 1e-40;       // same unit as the integral (N here)
    int max_subdivisions = 2000;
    double tail_cut_multiplier = 40.0;  // thermal cutoff, units of k_B*max(T,1K)/hbar
    double resonance_halfwidths = 8.0;  // breakpoint ladder span in units of gamma

    void validate() const {
        if (!(rel_tol > 0.0)) throw ConfigError("quadrature: rel_tol must be > 0");
        if (max_subdivisions < 8)
            throw ConfigError("quadrature: max_subdivisions must be >= 8");
        if (!(abs_tol_floor >= 0.0))
            throw ConfigError("quadrature: abs_tol_floor must be >= 0");
        if (!(tail_cut_multiplier > 0.0) || !(resonance_halfwidths > 0.0))
            throw ConfigError("quadrature: multipliers must be > 0");
    }
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
    int subdivisions = 0;
    bool converged = true;
};

namespace detail {

// Gauss-7 / Kronrod-15 embedded pair.  xgk holds the positive abscissae of
// the 15-point Kronrod rule; odd indices are the embedded Gauss-7 nodes.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
    double value = 0.0;
    double err = 0.0;
};

// One G7K15 application on [lo, hi] with the QUADPACK-style sharpened
// error estimate (the raw |K-G| measures the Gauss error, not Kronrod's).
template <class F>
PanelEstimate g7k15(F&& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double halfw = 0.5 * (hi - lo);
    const double fc = f(center);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double resabs = kWgk[7] * std::abs(fc);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = halfw * kXgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double fsum = fv1[j] + fv2[j];
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[(j - 1) / 2] * fsum;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    resasc *= std::abs(halfw);
    resabs *= std::abs(halfw);

    PanelEstimate out;
    out.value = resk * halfw;
    double err = std::abs((resk - resg) * halfw);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(eps50 * resabs, err);
    out.err = err;
    return out;
}

struct Panel {
    int dom = 0;  // 0: integrand axis, 1: mapped-tail t axis
    double lo = 0.0, hi = 0.0;
    double value = 0.0, err = 0.0;
};

// Ordered compensated (Neumaier) sum; makes the reported value independent
// of the subdivision history.
inline double neumaier_sum(const std::vector<Panel>& panels, bool errors) {
    std::vector<std::size_t> order(panels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (panels[a].dom != panels[b].dom) return panels[a].dom < panels[b].dom;
        if (panels[a].lo != panels[b].lo) return panels[a].lo < panels[b].lo;
        return panels[a].hi < panels[b].hi;
    });
    double s = 0.0, comp = 0.0;
    for (std::size_t i : order) {
        const double x = errors ? panels[i].err : panels[i].value;
        const double t = s + x;
        comp += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    return s + comp;
}

}  // namespace detail

// Adaptive integration of f over (0, inf).  The positive breakpoints carve
// the finite part into panels; past the last breakpoint a the substitution
// omega = a/(1-t), t in [0,1) maps the algebraic tail onto a finite panel.
// Worst panel is bisected first; ties broken by insertion order, so the
// result is bit-reproducible for fixed inputs.
template <class F>
QuadratureResult integrate_half_line(F&& f, const std::vector<double>& breakpoints,
                                     const QuadratureSettings& settings) {
    settings.validate();
    std::vector<double> bps;
    bps.reserve(breakpoints.size());
    for (double b : breakpoints) {
        if (!std::isfinite(b)) throw DomainError("integrate_half_line: non-finite breakpoint");
        if (b > 0.0) bps.push_back(b);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    if (bps.empty()) bps.push_back(1.0);

    const double a = bps.back();
    auto tail = [&f, a](double t) {
        const double om = a / (1.0 - t);
        return f(om) * a / ((1.0 - t) * (1.0 - t));
    };
    auto eval_panel = [&](int dom, double lo, double hi) {
        return dom == 0 ? detail::g7k15(f, lo, hi) : detail::g7k15(tail, lo, hi);
    };

    std::vector<detail::Panel> panels;
    double prev = 0.0;
    for (double b : bps) {
        panels.push_back({0, prev, b, 0.0, 0.0});
        prev = b;
    }
    panels.push_back({1, 0.0, 1.0, 0.0, 0.0});

    QuadratureResult res;
    double total = 0.0, total_err = 0.0;
    for (auto& p : panels) {
        const auto est = eval_panel(p.dom, p.lo, p.hi);
        p.value = est.value;
        p.err = est.err;
        total += p.value;
        total_err += p.err;
        res.evaluations += 15;
    }

    auto tolerance = [&](double v) {
        return std::max(settings.rel_tol * std::abs(v), settings.abs_tol_floor);
    };

    while (total_err > tolerance(total) && res.subdivisions < settings.max_subdivisions) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err) worst = i;
        detail::Panel& w = panels[worst];
        const double mid = 0.5 * (w.lo + w.hi);
        if (!(mid > w.lo) || !(mid < w.hi)) break;  // width at rounding limit

        const auto left = eval_panel(w.dom, w.lo, mid);
        const auto right = eval_panel(w.dom, mid, w.hi);
        res.evaluations += 30;
        ++res.subdivisions;
        total += left.value + right.value - w.value;
        total_err += left.err + right.err - w.err;
        detail::Panel right_panel{w.dom, mid, w.hi, right.value, right.err};
        w.hi = mid;
        w.value = left.value;
        w.err = left.err;
        panels.push_back(right_panel);
    }

    res.value = detail::neumaier_sum(panels, false);
    res.abs_error_estimate = detail::neumaier_sum(panels, true);
    res.converged = res.abs_error_estimate <= tolerance(res.value);
    if (!res.converged) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err) worst = i;
        const detail::Panel& w = panels[worst];
        double lo = w.lo, hi = w.hi;
        if (w.dom == 1) {  // map back to the integrand axis
            lo = a / (1.0 - w.lo);
            hi = (w.hi < 1.0) ? a / (1.0 - w.hi) : std::numeric_limits<double>::infinity();
        }
        char msg[192];
        std::snprintf(msg, sizeof(msg),
                      "integrate_half_line: tolerance not reached after %d subdivisions; "
                      "worst panel [%g, %g] local error %g",
                      res.subdivisions, lo, hi, w.err);
        throw ConvergenceError(msg, lo, hi, w.err);
    }
    return res;
}

}  // namespace ccthrust
