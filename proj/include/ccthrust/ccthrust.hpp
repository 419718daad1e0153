#pragma once

// Vacuum/thermal-fluctuation thrust on a rotating chiral sphere:
// dispersion models, dipolar (Mie) polarizabilities, force spectral
// densities, adaptive quadrature, parameter sweeps, and table output.

#include "ccthrust/constants.hpp"
#include "ccthrust/errors.hpp"
#include "ccthrust/force_kernel.hpp"
#include "ccthrust/io.hpp"
#include "ccthrust/material.hpp"
#include "ccthrust/polarizability.hpp"
#include "ccthrust/quadrature.hpp"
#include "ccthrust/riccati.hpp"
#include "ccthrust/sweep.hpp"
