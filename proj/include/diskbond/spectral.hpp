#pragma once

#include <cstdint>
#include <vector>

#include "diskbond/geometry.hpp"

namespace diskbond {

/// Interface-law parameters. gamma scales the interfacial resistance of the
/// low-conductivity (Robin) closure, alpha the surface conductance of the
/// high-conductivity closure. The coefficient problem depends on gamma only.
struct BondingConfig {
    double gamma = 0.0;
    double alpha = 0.0;
};

/// Symmetric tridiagonal system H a = f over n = 1..N with a(0) = 0 and the
/// Dirichlet cutoff a(N+1) = 0. diag stores K*(2 + mu) + V(n) split as
/// 2K + shifted_diag(n) so solvers can avoid forming fl(2 + mu); off is the
/// constant -K with K = gamma / beta^2.
struct TridiagonalSystem {
    std::int64_t N = 0;
    double K = 0.0;
    std::vector<double> shifted_diag;  // K*mu + V(n), n = 1..N
    std::vector<double> rhs;           // f(n), n = 1..N

    double diag_at(std::int64_t n) const;  // 2K + shifted_diag(n)
    double off() const { return -K; }
};

/// Coefficients and derived interface constants of a truncated solve.
struct SpectralSolution {
    std::int64_t N = 0;
    double gamma = 0.0;
    std::vector<double> a;  // a(1..N), index 0 holds a(1)
    std::vector<double> c;  // c(1..N)
    double lambda_i = 0.0;  // -beta/2 - (gamma/beta) a(1)
    double lambda_e = 0.0;  // +beta/2 + (gamma/beta) a(1)
    double tail_bound = 0.0;     // sup_n n rho^n coefficient tail certificate
    double residual_norm = 0.0;  // max_n |H a - f| of the computed vector

    double coeff_a(std::int64_t n) const;  // a(n), zero past N
    double coeff_c(std::int64_t n) const;  // c(n), zero past N
};

/// V(n) = (1 - rho^{2n}) / (beta n (1 + rho^{2n})), positive, increasing to
/// the limit 1/(beta n) ~ 0.
double potential_V(const ConformalFrame& frame, std::int64_t n);

/// f(n) = 2 rho^n / (1 + rho^{2n}).
double source_f(const ConformalFrame& frame, std::int64_t n);

TridiagonalSystem assemble_system(const ConformalFrame& frame, double gamma,
                                  std::int64_t N);

/// Least N >= 16 making the tail certificate
/// 2 C_D beta (N+1) rho^{N+1} / (1 - rho) <= tol * beta with
/// C_D = 1 / (1 - rho + gamma/r). Throws TruncationCapError past 2'000'000.
std::int64_t choose_truncation(const ConformalFrame& frame, double gamma,
                               double tol);

/// Solves the truncated system at N = choose_truncation(frame, gamma, tol).
/// gamma = 0 dispatches to the closed form a(n) = 2 beta n rho^n/(1-rho^{2n});
/// gamma equal to r (exactly) dispatches to the neutral form a(n) = beta n
/// rho^n, c = 0.
SpectralSolution solve_coefficients(const ConformalFrame& frame, double gamma,
                                    double tol);

/// Solves the gamma > 0 system at a caller-chosen truncation N, bypassing the
/// tail certificate and the neutral dispatch (the literal finite system is
/// solved). Intended for cross-checks against alternative solvers.
SpectralSolution solve_at_truncation(const ConformalFrame& frame, double gamma,
                                     std::int64_t N);

/// gamma = 0 coefficients at a caller-chosen truncation.
SpectralSolution perfect_bonding_coefficients(const ConformalFrame& frame,
                                              std::int64_t N);

/// |a(n) - RHS(n)| of the summation fixed-point identity, plus the truncation
/// majorant of the dropped tail. Requires gamma > 0 and 2 <= n <= N/2.
double fixed_point_residual(const ConformalFrame& frame,
                            const SpectralSolution& sol, std::int64_t n);

}  // namespace diskbond
