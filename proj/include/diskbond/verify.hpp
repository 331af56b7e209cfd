#pragma once

#include <cstdint>
#include <vector>

#include "diskbond/field.hpp"

namespace diskbond {

/// Per-circle interface check u - gamma du/dnu = const (resistive law):
/// residual is the max deviation from the sample mean, const the mean.
struct RobinResult {
    double residual_d1 = 0.0;
    double const_d1 = 0.0;
    double residual_d2 = 0.0;
    double const_d2 = 0.0;
};
RobinResult robin_residual(const ComplexPotential& pot, double gamma,
                           std::int64_t m);

/// Net flux of the active field through each circle, trapezoid in the
/// conformal angle. m is raised to a power of two covering the boundary
/// bandwidth ~ 48/(1 - rho), capped at 2^21.
struct FluxResult {
    double d1 = 0.0;
    double d2 = 0.0;
};
FluxResult flux_integral(const ComplexPotential& pot, std::int64_t m);

/// max over 16 rays and the given radii of |z| * |u(z) - h(z)|; bounded for
/// a decaying perturbation. Requires every radius >= 10 r.
double decay_check(const ComplexPotential& pot,
                   const std::vector<double>& radii);

/// Dense LU reference solve of the same truncated system, textbook assembly
/// with partial pivoting. N capped at 4000 (memory guard).
std::vector<double> dense_oracle(const ConformalFrame& frame, double gamma,
                                 std::int64_t N);

struct VerificationReport {
    // Resistive-law fields, filled in lc_x1 mode only.
    double robin_residual_d1 = 0.0;
    double robin_residual_d2 = 0.0;
    double robin_const_d1 = 0.0;
    double robin_const_d2 = 0.0;
    // Conductance-law fields, filled in hc_x2 mode only.
    double hc_residual = 0.0;
    // Mode-independent checks.
    double flux_d1 = 0.0;
    double flux_d2 = 0.0;
    double decay_product = 0.0;
    // Componentwise relative gap tridiagonal vs dense at N' = min(500, N);
    // 0 when gamma = 0 (no system to cross-check).
    double oracle_gap = 0.0;
};

/// Runs every check appropriate to the mode of pot.
VerificationReport verify_solution(const ComplexPotential& pot, double gamma);

}  // namespace diskbond
