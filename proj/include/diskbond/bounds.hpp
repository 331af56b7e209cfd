#pragma once

#include <cstdint>
#include <string>

#include "diskbond/geometry.hpp"
#include "diskbond/spectral.hpp"

namespace diskbond {

/// Closed-form a-priori bounds. All are monotone envelopes of the exact
/// (untruncated) coefficients; checks against truncated solves therefore add
/// the tail certificate of the solve to the allowed slack.
struct BoundSet {
    double b1 = 0.0;   // lower sandwich factor 2 / (1 + gamma/r)
    double b2 = 0.0;   // upper sandwich factor 2 / (1+gamma/r - rho^2(1-gamma/r))
    double c_d = 0.0;  // decay constant 1 / (1 - rho + gamma/r)
    double contrast_radius = 0.0;  // 2 r rho (1-gamma/r)/(1+gamma/r), >= 0
    double grad_bound = 0.0;       // uniform gradient bound, inf at gamma = 0
    double r = 0.0;
    double eps = 0.0;
    double rho = 0.0;
    double beta = 0.0;
    double one_minus_rho = 0.0;
    double gamma = 0.0;

    /// |a(n+1) - 2a(n) + a(n-1)| envelope.
    double lap_bound(std::int64_t n) const;
    /// |a(n+1) - a(n)| envelope.
    double diff_bound(std::int64_t n) const;
};

BoundSet compute_bounds(const ConformalFrame& frame, double gamma);

struct BoundCheck {
    std::string name;
    bool passed = false;
    double worst_margin = 0.0;  // most negative slack-adjusted margin
    std::int64_t worst_n = 0;
};

/// B1 beta n rho^n <= a(n) <= B2 beta n rho^n within slack.
BoundCheck check_sandwich(const SpectralSolution& sol, const BoundSet& bounds);

/// a(n) <= 2 C_D beta n rho^n and the c(n) envelope
/// |c(n)| <= beta rho^{2n}/(1+rho^{2n}) max{|1-B1|, |1-B2|} within slack.
BoundCheck check_envelopes(const SpectralSolution& sol, const BoundSet& bounds);

/// Second- and first-difference envelopes within slack.
BoundCheck check_difference_bounds(const SpectralSolution& sol,
                                   const BoundSet& bounds);

/// 180 (1 + (1 + |1-gamma/r|)/(1-rho+gamma/r) + (r+eps)/gamma); inf at
/// gamma = 0.
double gradient_sup_bound(const ConformalFrame& frame, double gamma);

}  // namespace diskbond
