#pragma once

#include <cstdint>

#include "diskbond/field.hpp"

namespace diskbond {

/// The transverse-drive conductive-interface solution with surface
/// conductance alpha = gamma reuses the resistive-drive coefficients: the
/// harmonic conjugate v = Im(W) satisfies the conductive law exactly when u
/// satisfies the resistive one. Returns the evaluator flipped to hc_x2.
ComplexPotential conjugate_potential(const ComplexPotential& pot);

/// max over m boundary points of both circles (equiangular in the physical
/// angle) of the conductance-law defect |dv/dnu + alpha (Delta_S v)| written
/// via W', W''. Zero (to roundoff) at alpha equal to the gamma of the
/// underlying coefficients.
double hc_boundary_residual(const ComplexPotential& pot, double alpha,
                            std::int64_t m);

}  // namespace diskbond
