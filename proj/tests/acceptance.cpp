// Acceptance gate: ten end-to-end criteria, one PASS/FAIL line each.
// Exits nonzero when any criterion (including its runtime cap) fails.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "diskbond/bounds.hpp"
#include "diskbond/duality.hpp"
#include "diskbond/field.hpp"
#include "diskbond/geometry.hpp"
#include "diskbond/spectral.hpp"
#include "diskbond/verify.hpp"

using namespace diskbond;

namespace {

// Pinned acceptance thresholds.
constexpr double k_neutral_grad_tol = 1e-10;
constexpr double k_neutral_c_tol = 1e-12;  // times beta
constexpr double k_grad_bound_scale = 180.0;
constexpr double k_sup_ratio_cap = 3.0;
constexpr double k_slope_lo = -0.55;
constexpr double k_slope_hi = -0.45;
constexpr double k_robin_tol = 1e-8;
constexpr double k_flux_tol = 1e-10;
constexpr double k_oracle_tol = 1e-12;
constexpr double k_hc_tol = 1e-8;
constexpr double k_grad_pair_tol = 1e-12;
constexpr double k_symmetry_tol = 1e-12;
constexpr double k_fd_tol = 1e-7;
constexpr double k_fd_step = 1e-6;
constexpr double k_solve_tol = 1e-12;

using steady = std::chrono::steady_clock;

double seconds_since(steady::time_point t0) {
    return std::chrono::duration<double>(steady::now() - t0).count();
}

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double loglog_slope(const std::vector<double>& x,
                    const std::vector<double>& y) {
    const auto n = x.size();
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

// The full verification sweep shared by criteria 3, 6, 8, 9 and 10.
struct SweepEntry {
    ConformalFrame frame;
    double gamma = 0.0;
    SpectralSolution sol;
    ComplexPotential pot;
    double sup = 0.0;
};

bool criterion_neutral(std::string* detail) {
    double worst_grad = 0.0;
    double worst_c = 0.0;
    double slowest = 0.0;
    const double configs[3][2] = {{2.0, 1.0}, {1.0, 1e-4}, {1.0, 1e-6}};
    for (const auto& p : configs) {
        const auto t0 = steady::now();
        const ConformalFrame fr = derive_frame(p[0], p[1]);
        const SpectralSolution sol = solve_coefficients(fr, fr.r, k_solve_tol);
        const ComplexPotential pot = make_potential(fr, sol, HMode::lc_x1);
        for (std::int64_t n = 1; n <= sol.N; ++n) {
            worst_c = std::max(worst_c, std::abs(sol.coeff_c(n)) / fr.beta);
        }
        const BBox box{-4.0 * fr.r, -4.0 * fr.r, 4.0 * fr.r, 4.0 * fr.r,
                       21, 21};
        for (const auto& s : field_grid(pot, box)) {
            if (!s) {
                continue;
            }
            worst_grad =
                std::max(worst_grad, std::hypot(s->ux - 1.0, s->uy));
        }
        const FieldSample gap = eval_grad(pot, complexd{0.0, 0.0});
        worst_grad = std::max(worst_grad, std::hypot(gap.ux - 1.0, gap.uy));
        slowest = std::max(slowest, seconds_since(t0));
    }
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "worst |grad u - e1| %.2e (tol %.0e), worst |c|/beta %.2e "
                  "(tol %.0e), slowest %.2f s (cap 1 s)",
                  worst_grad, k_neutral_grad_tol, worst_c, k_neutral_c_tol,
                  slowest);
    *detail = buf;
    return worst_grad <= k_neutral_grad_tol && worst_c <= k_neutral_c_tol &&
           slowest < 1.0;
}

bool criterion_sandwich(std::string* detail) {
    const auto t0 = steady::now();
    std::mt19937_64 rng(0x5a5d51c401ull);
    bool ok = true;
    double min_margin = 1e300;
    for (int k = 0; k < 50; ++k) {
        const double r = 0.5 + 1.5 * u01(rng);
        const double eps = std::pow(10.0, -4.0 * u01(rng));
        const double gamma = r * std::pow(10.0, 2.0 * u01(rng) - 1.0);
        const ConformalFrame fr = derive_frame(r, eps);
        const SpectralSolution sol = solve_coefficients(fr, gamma, k_solve_tol);
        const BoundCheck chk = check_sandwich(sol, compute_bounds(fr, gamma));
        ok = ok && chk.passed;
        min_margin = std::min(min_margin, chk.worst_margin);
    }
    const double t = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "50 random configs, min margin %.2e, %.1f s (cap 30 s)",
                  min_margin, t);
    *detail = buf;
    return ok && t < 30.0;
}

bool criterion_gradient_bound(std::vector<SweepEntry>* sweep,
                              std::string* detail) {
    const auto t0 = steady::now();
    bool ok = true;
    double min_slack = 1e300;
    for (const double r : {0.5, 1.0, 2.0}) {
        for (const double eps : {1.0, 1e-2, 1e-4, 1e-6}) {
            for (const double factor : {0.25, 1.0, 4.0}) {
                SweepEntry e;
                e.frame = derive_frame(r, eps);
                e.gamma = factor * r;
                e.sol = solve_coefficients(e.frame, e.gamma, k_solve_tol);
                e.pot = make_potential(e.frame, e.sol, HMode::lc_x1);
                e.sup = sup_grad(e.pot);
                const double cap =
                    k_grad_bound_scale *
                    (1.0 +
                     (1.0 + std::abs(1.0 - e.gamma / r)) /
                         (e.frame.one_minus_rho + e.gamma / r) +
                     (r + eps) / e.gamma);
                ok = ok && e.sup <= cap;
                min_slack = std::min(min_slack, cap - e.sup);
                sweep->push_back(std::move(e));
            }
        }
    }
    const double t = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "36 sweep configs, min (bound - sup) %.3g, %.1f s "
                  "(cap 120 s)",
                  min_slack, t);
    *detail = buf;
    return ok && t < 120.0;
}

bool criterion_bounded_sup(std::string* detail) {
    const auto t0 = steady::now();
    double lo = 1e300;
    double hi = 0.0;
    for (const double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        const ConformalFrame fr = derive_frame(1.0, eps);
        const ComplexPotential pot = make_potential(
            fr, solve_coefficients(fr, 1.0, k_solve_tol), HMode::lc_x1);
        const double s = sup_grad(pot);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    const double t = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "sup over five gap decades: max/min %.6f (cap %.1f), "
                  "%.1f s (cap 60 s)",
                  hi / lo, k_sup_ratio_cap, t);
    *detail = buf;
    return hi / lo <= k_sup_ratio_cap && t < 60.0;
}

bool criterion_baseline_blowup(std::string* detail) {
    const auto t0 = steady::now();
    std::vector<double> eps_list = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    std::vector<double> sup_list;
    for (const double eps : eps_list) {
        const ConformalFrame fr = derive_frame(1.0, eps);
        const ComplexPotential pot = make_potential(
            fr, solve_coefficients(fr, 0.0, k_solve_tol), HMode::lc_x1);
        sup_list.push_back(sup_grad(pot));
    }
    const double slope = loglog_slope(eps_list, sup_list);
    const double t = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "gamma = 0 blow-up slope %.4f (window [%.2f, %.2f]), "
                  "%.1f s (cap 60 s)",
                  slope, k_slope_lo, k_slope_hi, t);
    *detail = buf;
    return slope >= k_slope_lo && slope <= k_slope_hi && t < 60.0;
}

bool criterion_residuals(const std::vector<SweepEntry>& sweep,
                         std::string* detail) {
    double worst_robin = 0.0;
    double worst_flux = 0.0;
    bool decay_ok = true;
    for (const SweepEntry& e : sweep) {
        const RobinResult rr = robin_residual(e.pot, e.gamma, 1024);
        worst_robin = std::max(
            worst_robin, std::max(rr.residual_d1, rr.residual_d2));
        const FluxResult fx = flux_integral(e.pot, 1024);
        worst_flux = std::max(worst_flux,
                              std::max(std::abs(fx.d1), std::abs(fx.d2)));
        const double near = decay_check(e.pot, {100.0 * e.frame.r});
        const double far = decay_check(e.pot, {10000.0 * e.frame.r});
        decay_ok = decay_ok &&
                   far <= 2.0 * near + 1e-12 * e.frame.r * e.frame.r;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "worst robin %.2e (tol %.0e), worst flux %.2e (tol %.0e), "
                  "decay bounded %s",
                  worst_robin, k_robin_tol, worst_flux, k_flux_tol,
                  decay_ok ? "yes" : "no");
    *detail = buf;
    return worst_robin <= k_robin_tol && worst_flux <= k_flux_tol && decay_ok;
}

bool criterion_oracle(std::string* detail) {
    const auto t0 = steady::now();
    std::mt19937_64 rng(0x0c0ffee707ull);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double r = 0.5 + 1.5 * u01(rng);
        const double eps = std::pow(10.0, -2.0 * u01(rng));
        const double gamma = r * std::pow(10.0, 2.0 * u01(rng) - 1.0);
        const ConformalFrame fr = derive_frame(r, eps);
        const std::vector<double> dense = dense_oracle(fr, gamma, 500);
        const SpectralSolution tri = solve_at_truncation(fr, gamma, 500);
        for (std::int64_t n = 1; n <= 500; ++n) {
            const double d = dense[static_cast<std::size_t>(n - 1)];
            worst = std::max(worst,
                             std::abs(tri.coeff_a(n) - d) / std::abs(d));
        }
    }
    const double t = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "10 random configs at N = 500, worst relative gap %.2e "
                  "(tol %.0e), %.1f s (cap 10 s)",
                  worst, k_oracle_tol, t);
    *detail = buf;
    return worst <= k_oracle_tol && t < 10.0;
}

bool criterion_duality(const std::vector<SweepEntry>& sweep,
                       std::string* detail) {
    double worst_hc = 0.0;
    double worst_flux = 0.0;
    double worst_pair = 0.0;
    std::mt19937_64 rng(0xd0a11701ull);
    for (const SweepEntry& e : sweep) {
        const ComplexPotential conj = conjugate_potential(e.pot);
        worst_hc = std::max(worst_hc,
                            hc_boundary_residual(conj, e.gamma, 256));
        const FluxResult fx = flux_integral(conj, 4096);
        worst_flux = std::max(worst_flux,
                              std::max(std::abs(fx.d1), std::abs(fx.d2)));
        const double lo = 2.5 * e.frame.r + e.frame.eps;
        for (int k = 0; k < 25; ++k) {
            const double radius = lo * (1.0 + 3.0 * u01(rng));
            const double angle = 6.283185307179586 * u01(rng);
            const complexd z{radius * std::cos(angle),
                             radius * std::sin(angle)};
            const FieldSample a = eval_grad(e.pot, z);
            const FieldSample b = eval_grad(conj, z);
            worst_pair = std::max(worst_pair,
                                  std::abs(b.grad_norm - a.grad_norm));
        }
    }
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "worst conductance residual %.2e (tol %.0e), worst flux "
                  "%.2e (tol %.0e), worst ||grad v| - |grad u|| %.2e",
                  worst_hc, k_hc_tol, worst_flux, k_flux_tol, worst_pair);
    *detail = buf;
    return worst_hc <= k_hc_tol && worst_flux <= k_flux_tol &&
           worst_pair <= k_grad_pair_tol;
}

bool criterion_antisymmetry(const std::vector<SweepEntry>& sweep,
                            std::string* detail) {
    double worst = 0.0;
    std::mt19937_64 rng(0x0dd5e77eull);
    for (const SweepEntry& e : sweep) {
        const double lo = 2.5 * e.frame.r + e.frame.eps;
        for (int k = 0; k < 100; ++k) {
            const double radius = lo * (1.0 + 3.0 * u01(rng));
            const double angle = 6.283185307179586 * u01(rng);
            const complexd z{radius * std::cos(angle),
                             radius * std::sin(angle)};
            const complexd zm{-z.real(), z.imag()};
            worst = std::max(worst,
                             std::abs(eval_u(e.pot, z) + eval_u(e.pot, zm)));
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "worst |u(-x1, x2) + u(x1, x2)| %.2e (tol %.0e)", worst,
                  k_symmetry_tol);
    *detail = buf;
    return worst <= k_symmetry_tol;
}

bool criterion_finite_difference(const std::vector<SweepEntry>& sweep,
                                 std::string* detail) {
    double worst = 0.0;
    std::mt19937_64 rng(0xfd5a3b19ull);
    for (const SweepEntry& e : sweep) {
        const double lo = 2.2 * (e.frame.r + e.frame.eps);
        const double hi = std::max(4.0 * e.frame.r, 2.0 * lo);
        for (int k = 0; k < 100; ++k) {
            const double radius = lo + (hi - lo) * u01(rng);
            const double angle = 6.283185307179586 * u01(rng);
            const complexd z{radius * std::cos(angle),
                             radius * std::sin(angle)};
            const FieldSample g = eval_grad(e.pot, z);
            const double fdx = (eval_u(e.pot, z + complexd{k_fd_step, 0.0}) -
                                eval_u(e.pot, z - complexd{k_fd_step, 0.0})) /
                               (2.0 * k_fd_step);
            const double fdy = (eval_u(e.pot, z + complexd{0.0, k_fd_step}) -
                                eval_u(e.pot, z - complexd{0.0, k_fd_step})) /
                               (2.0 * k_fd_step);
            worst = std::max(worst, std::abs(g.ux - fdx));
            worst = std::max(worst, std::abs(g.uy - fdy));
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "worst |analytic - central difference| %.2e (tol %.0e)",
                  worst, k_fd_tol);
    *detail = buf;
    return worst <= k_fd_tol;
}

}  // namespace

int main() {
    const char* names[10] = {
        "neutral exactness",     "coefficient sandwich",
        "gradient bound",        "bounded sup across gaps",
        "baseline blow-up rate", "boundary residuals",
        "oracle equivalence",    "conductance duality",
        "anti-symmetry",         "gradient vs finite difference",
    };
    bool pass[10] = {};
    std::string detail[10];

    std::vector<SweepEntry> sweep;
    pass[0] = criterion_neutral(&detail[0]);
    pass[1] = criterion_sandwich(&detail[1]);
    pass[2] = criterion_gradient_bound(&sweep, &detail[2]);
    pass[3] = criterion_bounded_sup(&detail[3]);
    pass[4] = criterion_baseline_blowup(&detail[4]);
    pass[5] = criterion_residuals(sweep, &detail[5]);
    pass[6] = criterion_oracle(&detail[6]);
    pass[7] = criterion_duality(sweep, &detail[7]);
    pass[8] = criterion_antisymmetry(sweep, &detail[8]);
    pass[9] = criterion_finite_difference(sweep, &detail[9]);

    bool all = true;
    for (int i = 0; i < 10; ++i) {
        std::printf("%s criterion %2d (%s): %s\n", pass[i] ? "PASS" : "FAIL",
                    i + 1, names[i], detail[i].c_str());
        all = all && pass[i];
    }
    std::printf("acceptance: %s\n", all ? "all criteria passed"
                                        : "at least one criterion failed");
    return all ? 0 : 1;
}
