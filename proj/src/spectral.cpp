#include "diskbond/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diskbond {

namespace {

constexpr std::int64_t k_truncation_floor = 16;
constexpr std::int64_t k_truncation_cap = 2'000'000;

double decay_constant(const ConformalFrame& frame, double gamma) {
    return 1.0 / (frame.one_minus_rho + gamma / frame.r);
}

// 2 C_D beta (N+1) rho^{N+1}: certified bound on the Dirichlet-cutoff defect
// |a_true - a_trunc| at every index (sup over the dropped tail is attained
// within one factor 1/(1-rho), folded into choose_truncation's test).
double cutoff_defect(const ConformalFrame& frame, double gamma,
                     std::int64_t N) {
    return 2.0 * decay_constant(frame, gamma) * frame.beta *
           static_cast<double>(N + 1) * frame.rho_pow(N + 1);
}

}  // namespace

double TridiagonalSystem::diag_at(std::int64_t n) const {
    if (n < 1 || n > N) {
        throw std::out_of_range("TridiagonalSystem::diag_at: index");
    }
    return 2.0 * K + shifted_diag[static_cast<std::size_t>(n - 1)];
}

double SpectralSolution::coeff_a(std::int64_t n) const {
    if (n < 1) {
        throw std::out_of_range("SpectralSolution::coeff_a: index");
    }
    if (n > N) {
        return 0.0;
    }
    return a[static_cast<std::size_t>(n - 1)];
}

double SpectralSolution::coeff_c(std::int64_t n) const {
    if (n < 1) {
        throw std::out_of_range("SpectralSolution::coeff_c: index");
    }
    if (n > N) {
        return 0.0;
    }
    return c[static_cast<std::size_t>(n - 1)];
}

double potential_V(const ConformalFrame& frame, std::int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("potential_V: n must be >= 1");
    }
    const double num = frame.one_minus_rho_pow2n(n);
    const double den = frame.beta * static_cast<double>(n) *
                       (1.0 + frame.rho_pow(2 * n));
    return num / den;
}

double source_f(const ConformalFrame& frame, std::int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("source_f: n must be >= 1");
    }
    const double rn = frame.rho_pow(n);
    return 2.0 * rn / (1.0 + rn * rn);
}

TridiagonalSystem assemble_system(const ConformalFrame& frame, double gamma,
                                  std::int64_t N) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("assemble_system: gamma must be positive");
    }
    if (N < 1) {
        throw std::invalid_argument("assemble_system: N must be >= 1");
    }
    TridiagonalSystem sys;
    sys.N = N;
    sys.K = gamma / (frame.beta * frame.beta);
    sys.shifted_diag.resize(static_cast<std::size_t>(N));
    sys.rhs.resize(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
        sys.shifted_diag[static_cast<std::size_t>(n - 1)] =
            sys.K * frame.mu + potential_V(frame, n);
        sys.rhs[static_cast<std::size_t>(n - 1)] = source_f(frame, n);
    }
    return sys;
}

std::int64_t choose_truncation(const ConformalFrame& frame, double gamma,
                               double tol) {
    if (!(gamma >= 0.0)) {
        throw std::invalid_argument(
            "choose_truncation: gamma must be nonnegative");
    }
    if (!(tol > 0.0) || !(tol < 1.0)) {
        throw std::invalid_argument("choose_truncation: tol must be in (0,1)");
    }
    const auto certified = [&](std::int64_t N) {
        return cutoff_defect(frame, gamma, N) / frame.one_minus_rho <=
               tol * frame.beta;
    };
    if (certified(k_truncation_floor)) {
        return k_truncation_floor;
    }
    if (!certified(k_truncation_cap)) {
        throw TruncationCapError(
            "choose_truncation: tail certificate unreachable below the "
            "2000000-term cap for this eps/tol");
    }
    // The tail majorant is unimodal in N, so the failing prefix is
    // contiguous: bisect for the first certified N.
    std::int64_t lo = k_truncation_floor;  // not certified
    std::int64_t hi = k_truncation_cap;    // certified
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (certified(mid) ? hi : lo) = mid;
    }
    return hi;
}

namespace {

// Thomas elimination keeping the pivot in the split form d'(n) = K + p(n),
// p(n) = e(n) + p(n-1) K/(K + p(n-1)) with e(n) = K mu + V(n). Algebraically
// identical to d'(n) = d(n) - K^2/d'(n-1) but every operand stays positive,
// so no term fl(2 + mu) ever forms; absorbing mu ~ eps/r into 2 would leave
// the neutral-case cancellation b n rho^n - a(n) with coherent error eps/mu.
std::vector<double> solve_split_thomas(const TridiagonalSystem& sys) {
    const auto N = static_cast<std::size_t>(sys.N);
    const double K = sys.K;
    std::vector<double> p(N);
    std::vector<double> y(N);
    p[0] = K + sys.shifted_diag[0];
    y[0] = sys.rhs[0];
    for (std::size_t i = 1; i < N; ++i) {
        const double q = K / (K + p[i - 1]);
        p[i] = sys.shifted_diag[i] + q * p[i - 1];
        y[i] = sys.rhs[i] + q * y[i - 1];
    }
    std::vector<double> a(N);
    a[N - 1] = y[N - 1] / (K + p[N - 1]);
    for (std::size_t i = N - 1; i-- > 0;) {
        a[i] = (y[i] + K * a[i + 1]) / (K + p[i]);
    }
    return a;
}

std::vector<double> coefficients_c_from_a(const ConformalFrame& frame,
                                          const std::vector<double>& a) {
    std::vector<double> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto n = static_cast<std::int64_t>(i + 1);
        const double rn = frame.rho_pow(n);
        const double r2n = rn * rn;
        c[i] = rn * (frame.beta * static_cast<double>(n) * rn - a[i]) /
               (static_cast<double>(n) * (1.0 + r2n));
    }
    return c;
}

double residual_inf_norm(const TridiagonalSystem& sys,
                         const std::vector<double>& a) {
    const auto N = a.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double left = i > 0 ? a[i - 1] : 0.0;
        const double right = i + 1 < N ? a[i + 1] : 0.0;
        const double res = sys.K * (2.0 * a[i] - left - right) +
                           sys.shifted_diag[i] * a[i] - sys.rhs[i];
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

void finish_solution(const ConformalFrame& frame, double gamma,
                     SpectralSolution& sol) {
    sol.gamma = gamma;
    sol.c = coefficients_c_from_a(frame, sol.a);
    const double shift =
        gamma > 0.0 ? (gamma / frame.beta) * sol.a.front() : 0.0;
    sol.lambda_i = -0.5 * frame.beta - shift;
    sol.lambda_e = 0.5 * frame.beta + shift;
    sol.tail_bound =
        cutoff_defect(frame, gamma, sol.N) / frame.one_minus_rho;
}

}  // namespace

SpectralSolution solve_coefficients(const ConformalFrame& frame, double gamma,
                                    double tol) {
    if (!(gamma >= 0.0)) {
        throw std::invalid_argument(
            "solve_coefficients: gamma must be nonnegative");
    }
    const std::int64_t N = choose_truncation(frame, gamma, tol);
    if (gamma == 0.0) {
        return perfect_bonding_coefficients(frame, N);
    }
    if (gamma == frame.r) {
        // Neutral contrast: a(n) = beta n rho^n solves the infinite system
        // exactly (the identity (1/rho - rho)/beta = 1/r turns H(beta n
        // rho^n) into f(n)) and every reflection coefficient vanishes.
        // Dispatching keeps c at zero instead of eps-level noise, which the
        // conformal factor (beta/|z - beta/2|^2)^2 would amplify at the gap.
        SpectralSolution sol;
        sol.N = N;
        sol.a.resize(static_cast<std::size_t>(N));
        for (std::int64_t n = 1; n <= N; ++n) {
            sol.a[static_cast<std::size_t>(n - 1)] =
                frame.beta * static_cast<double>(n) * frame.rho_pow(n);
        }
        sol.residual_norm = 0.0;
        finish_solution(frame, frame.r, sol);
        return sol;
    }
    return solve_at_truncation(frame, gamma, N);
}

SpectralSolution solve_at_truncation(const ConformalFrame& frame, double gamma,
                                     std::int64_t N) {
    const TridiagonalSystem sys = assemble_system(frame, gamma, N);
    SpectralSolution sol;
    sol.N = N;
    sol.a = solve_split_thomas(sys);
    sol.residual_norm = residual_inf_norm(sys, sol.a);
    finish_solution(frame, gamma, sol);
    return sol;
}

SpectralSolution perfect_bonding_coefficients(const ConformalFrame& frame,
                                              std::int64_t N) {
    if (N < 1) {
        throw std::invalid_argument(
            "perfect_bonding_coefficients: N must be >= 1");
    }
    SpectralSolution sol;
    sol.N = N;
    sol.a.resize(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
        // a = f/V termwise: the gamma = 0 system is diagonal.
        sol.a[static_cast<std::size_t>(n - 1)] =
            2.0 * frame.beta * static_cast<double>(n) * frame.rho_pow(n) /
            frame.one_minus_rho_pow2n(n);
    }
    sol.residual_norm = 0.0;
    finish_solution(frame, 0.0, sol);
    return sol;
}

double fixed_point_residual(const ConformalFrame& frame,
                            const SpectralSolution& sol, std::int64_t n) {
    if (!(sol.gamma > 0.0)) {
        throw std::invalid_argument(
            "fixed_point_residual: needs a gamma > 0 solution");
    }
    if (n < 2 || n > sol.N / 2) {
        throw std::invalid_argument(
            "fixed_point_residual: n must lie in [2, N/2]");
    }
    const double scale = frame.r * frame.beta / sol.gamma;
    // g(k) = rho^k (V a - f)(k); the identity resums the solved system into
    //   a(n) = -scale rho^{-n} sum_{k>=n} g(k)
    //          + scale rho^n (sum_{k>=1} g(k) - sum_{k<n} rho^{-2k} g(k)).
    double upper = 0.0;  // sum_{k=n}^{N} g(k)
    for (std::int64_t k = sol.N; k >= n; --k) {
        upper += frame.rho_pow(k) *
                 (potential_V(frame, k) * sol.coeff_a(k) - source_f(frame, k));
    }
    double full = upper;  // sum_{k=1}^{N} g(k)
    double lower = 0.0;   // sum_{k=1}^{n-1} rho^{-k} (V a - f)(k)
    for (std::int64_t k = n - 1; k >= 1; --k) {
        const double diff =
            potential_V(frame, k) * sol.coeff_a(k) - source_f(frame, k);
        full += frame.rho_pow(k) * diff;
        lower += frame.rho_pow(-k) * diff;
    }
    const double rhs = -scale * frame.rho_pow(-n) * upper +
                       scale * frame.rho_pow(n) * (full - lower);
    // Dropped k > N tail, majorized through |V a - f|(k) <= 6 rho^k.
    const double tail = scale * (frame.rho_pow(-n) + frame.rho_pow(n)) * 6.0 *
                        frame.rho_pow(2 * (sol.N + 1)) /
                        frame.one_minus_rho_pow2n(1);
    return std::abs(sol.coeff_a(n) - rhs) + tail;
}

}  // namespace diskbond
