#include "diskbond/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace diskbond {

namespace {

constexpr double k_rel_slack = 1e-10;

// Certified pointwise Dirichlet-cutoff defect of the truncated solve:
// |a_true(n) - a(n)| <= E_N rho^{N+1-n} / (1 - rho^2) with
// E_N = 2 C_D beta (N+1) rho^{N+1} = tail_bound (1 - rho). The inequalities
// being checked hold for a_true; slack must absorb the defect where it is
// no longer small against beta n rho^n (the last few indices).
double cutoff_defect(const SpectralSolution& sol, const BoundSet& bounds,
                     std::int64_t n) {
    const double one_minus_rho2 =
        bounds.one_minus_rho * (1.0 + bounds.rho);
    const double e_n = sol.tail_bound * bounds.one_minus_rho;
    return e_n *
           std::exp(static_cast<double>(sol.N + 1 - n) *
                    std::log1p(-bounds.one_minus_rho)) /
           one_minus_rho2;
}

struct Accumulator {
    double worst_margin = std::numeric_limits<double>::infinity();
    std::int64_t worst_n = 0;

    void feed(double margin, std::int64_t n) {
        if (margin < worst_margin) {
            worst_margin = margin;
            worst_n = n;
        }
    }

    BoundCheck finish(std::string name) const {
        BoundCheck check;
        check.name = std::move(name);
        check.passed = worst_margin >= 0.0;
        check.worst_margin = worst_margin;
        check.worst_n = worst_n;
        return check;
    }
};

double rho_pow(const BoundSet& bounds, std::int64_t n) {
    return std::exp(static_cast<double>(n) *
                    std::log1p(-bounds.one_minus_rho));
}

}  // namespace

double BoundSet::lap_bound(std::int64_t n) const {
    return 2.0 * one_minus_rho * one_minus_rho *
               (beta * static_cast<double>(n) + r) * rho_pow(*this, n - 1) +
           6.0 * beta * beta * rho_pow(*this, n) / gamma;
}

double BoundSet::diff_bound(std::int64_t n) const {
    return (6.0 * r * beta / gamma) *
           (one_minus_rho * static_cast<double>(n) + 4.0) * rho_pow(*this, n - 1);
}

BoundSet compute_bounds(const ConformalFrame& frame, double gamma) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("compute_bounds: gamma must be positive");
    }
    const double contrast = gamma / frame.r;
    BoundSet b;
    b.r = frame.r;
    b.eps = frame.eps;
    b.rho = frame.rho;
    b.beta = frame.beta;
    b.one_minus_rho = frame.one_minus_rho;
    b.gamma = gamma;
    b.b1 = 2.0 / (1.0 + contrast);
    b.b2 = 2.0 / (1.0 + contrast - frame.rho * frame.rho * (1.0 - contrast));
    b.c_d = 1.0 / (frame.one_minus_rho + contrast);
    b.contrast_radius =
        contrast < 1.0
            ? 2.0 * frame.r * frame.rho * (1.0 - contrast) / (1.0 + contrast)
            : 0.0;
    b.grad_bound = gradient_sup_bound(frame, gamma);
    return b;
}

BoundCheck check_sandwich(const SpectralSolution& sol, const BoundSet& bounds) {
    const double lo_c = std::min(bounds.b1, bounds.b2);
    const double hi_c = std::max(bounds.b1, bounds.b2);
    Accumulator acc;
    for (std::int64_t n = 1; n <= sol.N; ++n) {
        const double g = bounds.beta * static_cast<double>(n) *
                         rho_pow(bounds, n);
        const double a = sol.coeff_a(n);
        const double slack = k_rel_slack * hi_c * g +
                             cutoff_defect(sol, bounds, n);
        acc.feed(a - (lo_c * g - slack), n);
        acc.feed((hi_c * g + slack) - a, n);
    }
    return acc.finish("sandwich");
}

BoundCheck check_envelopes(const SpectralSolution& sol,
                           const BoundSet& bounds) {
    const double c_amp =
        std::max(std::abs(1.0 - bounds.b1), std::abs(1.0 - bounds.b2));
    Accumulator acc;
    for (std::int64_t n = 1; n <= sol.N; ++n) {
        const double rn = rho_pow(bounds, n);
        const double g = bounds.beta * static_cast<double>(n) * rn;
        const double defect = cutoff_defect(sol, bounds, n);
        const double a = sol.coeff_a(n);
        acc.feed(a + k_rel_slack * g + defect, n);  // a(n) >= 0
        const double rough = 2.0 * bounds.c_d * g;
        acc.feed(rough + k_rel_slack * rough + defect - a, n);
        const double sharp =
            2.0 * (bounds.beta * static_cast<double>(n) + bounds.r) * rn;
        acc.feed(sharp + k_rel_slack * sharp + defect - a, n);
        const double r2n = rn * rn;
        const double c_env = bounds.beta * r2n / (1.0 + r2n) * c_amp;
        const double c_defect = defect * rn / static_cast<double>(n);
        acc.feed(c_env + k_rel_slack * bounds.beta * r2n + c_defect -
                     std::abs(sol.coeff_c(n)),
                 n);
    }
    return acc.finish("envelopes");
}

BoundCheck check_difference_bounds(const SpectralSolution& sol,
                                   const BoundSet& bounds) {
    Accumulator acc;
    for (std::int64_t n = 1; n + 1 <= sol.N; ++n) {
        const double grad = sol.coeff_a(n + 1) - sol.coeff_a(n);
        const double slack =
            k_rel_slack * bounds.diff_bound(n) +
            cutoff_defect(sol, bounds, n) + cutoff_defect(sol, bounds, n + 1);
        acc.feed(bounds.diff_bound(n) + slack - std::abs(grad), n);
        if (n >= 2) {
            const double lap = sol.coeff_a(n + 1) - 2.0 * sol.coeff_a(n) +
                               sol.coeff_a(n - 1);
            const double lap_slack = k_rel_slack * bounds.lap_bound(n) +
                                     cutoff_defect(sol, bounds, n - 1) +
                                     2.0 * cutoff_defect(sol, bounds, n) +
                                     cutoff_defect(sol, bounds, n + 1);
            acc.feed(bounds.lap_bound(n) + lap_slack - std::abs(lap), n);
        }
    }
    return acc.finish("difference_bounds");
}

double gradient_sup_bound(const ConformalFrame& frame, double gamma) {
    if (gamma == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double contrast = gamma / frame.r;
    return 180.0 * (1.0 +
                    (1.0 + std::abs(1.0 - contrast)) /
                        (frame.one_minus_rho + contrast) +
                    (frame.r + frame.eps) / gamma);
}

}  // namespace diskbond
