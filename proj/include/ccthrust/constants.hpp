#pragma once

namespace ccthrust {

// CODATA-2018 exact/recommended values. Immutable by construction.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;   // J*s
    double k_B  = 1.380649e-23;      // J/K
    double c    = 299792458.0;       // m/s
    double eps0 = 8.8541878128e-12;  // F/m
    double mu0  = 1.25663706212e-6;  // N/A^2
};

inline constexpr PhysicalConstants constants{};

inline constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace ccthrust
