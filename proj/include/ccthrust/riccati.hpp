#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "ccthrust/errors.hpp"

namespace ccthrust {

// Order-1 Riccati-Bessel functions and derivatives at complex argument:
//   psi(z) = z j1(z) = sin z / z - cos z
//   chi(z) = -z y1(z) = cos z / z + sin z
// The closed forms lose all digits for |z| << 1 (psi ~ z^2/3 from ~1-sized
// terms), so a Taylor series takes over below |z| = 0.5.
template <class Real>
struct Riccati1 {
    std::complex<Real> psi, dpsi, chi, dchi;
};

template <class Real>
Riccati1<Real> riccati1(std::complex<Real> z) {
    using C = std::complex<Real>;
    if (!std::isfinite(static_cast<double>(z.real())) ||
        !std::isfinite(static_cast<double>(z.imag())))
        throw NumericError("riccati1: non-finite argument");
    if (std::abs(static_cast<double>(z.imag())) > 300.0)
        throw NumericError("riccati1: |Im z| too large for sin/cos, Im z = " +
                           std::to_string(static_cast<double>(z.imag())));

    Riccati1<Real> r;
    const Real az = std::abs(z);
    if (!(az > Real(1e-150)))
        throw NumericError("riccati1: argument too close to 0");
    if (az < Real(0.5)) {
        // psi  = sum_k (-1)^k (2k+2)   z^{2k+2} / (2k+3)!
        // psi' = sum_k (-1)^k (2k+2)^2 z^{2k+1} / (2k+3)!
        const C z2 = z * z;
        C term = z2 / Real(3);  // k = 0: 2 z^2 / 3!
        C psi1 = term, dpsi = Real(2) * term / z;
        for (int k = 1; k < 40; ++k) {
            term *= -z2 * Real(2 * k + 2) /
                    Real((2 * k) * (2 * k + 2) * (2 * k + 3));
            psi1 += term;
            dpsi += Real(2 * k + 2) * term / z;
            if (std::abs(term) <= std::abs(psi1) * std::numeric_limits<Real>::epsilon())
                break;
        }
        r.psi = psi1;
        r.dpsi = dpsi;
    } else {
        const C s = std::sin(z), c = std::cos(z);
        r.psi = s / z - c;
        r.dpsi = s - r.psi / z;
    }
    // chi has a 1/z leading term; the closed form is well conditioned everywhere.
    {
        const C s = std::sin(z), c = std::cos(z);
        r.chi = c / z + s;
        r.dchi = c - r.chi / z;
    }
    return r;
}

}  // namespace ccthrust
