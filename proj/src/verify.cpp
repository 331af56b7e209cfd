#include "diskbond/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/fft.hpp"
#include "diskbond/duality.hpp"

namespace diskbond {

RobinResult robin_residual(const ComplexPotential& pot, double gamma,
                           std::int64_t m) {
    if (pot.h_mode != HMode::lc_x1) {
        throw std::invalid_argument("robin_residual: needs an lc_x1 potential");
    }
    if (m < 256) {
        throw std::invalid_argument("robin_residual: m must be >= 256");
    }
    RobinResult out;
    for (int disk = 1; disk <= 2; ++disk) {
        const BoundarySamples bs = boundary_samples(pot, disk, m);
        const std::size_t count = bs.z.size();
        std::vector<double> g(count);
        double mean = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            const double u = bs.w[j].real();
            const double dnu = (bs.wp[j] * bs.normal[j]).real();
            g[j] = u - gamma * dnu;
            mean += g[j];
        }
        mean /= static_cast<double>(count);
        double dev = 0.0;
        for (const double v : g) {
            dev = std::max(dev, std::abs(v - mean));
        }
        if (disk == 1) {
            out.residual_d1 = dev;
            out.const_d1 = mean;
        } else {
            out.residual_d2 = dev;
            out.const_d2 = mean;
        }
    }
    return out;
}

FluxResult flux_integral(const ComplexPotential& pot, std::int64_t m) {
    if (m < 1024) {
        throw std::invalid_argument("flux_integral: m must be >= 1024");
    }
    // Boundary data holds spectral content up to ~1/(1-rho) in the conformal
    // angle; the trapezoid rule needs the node count above that for its
    // aliasing error to sit below the 1e-10 flux target.
    const auto needed = static_cast<std::int64_t>(48.0 / pot.frame.one_minus_rho);
    const std::size_t m_eff = std::min<std::size_t>(
        std::size_t{1} << 21,
        detail::next_pow2(static_cast<std::size_t>(std::max(m, needed))));
    const bool lc = pot.h_mode == HMode::lc_x1;
    FluxResult out;
    const double two_pi = 6.283185307179586476925286766559;
    for (int disk = 1; disk <= 2; ++disk) {
        const BoundarySamples bs =
            boundary_samples(pot, disk, static_cast<std::int64_t>(m_eff));
        double acc = 0.0;
        for (std::size_t j = 0; j < bs.z.size(); ++j) {
            const complexd wn = bs.wp[j] * bs.normal[j];
            const double dnu = lc ? wn.real() : wn.imag();
            acc += dnu * bs.jac[j];
        }
        const double flux =
            acc * two_pi / static_cast<double>(bs.z.size());
        (disk == 1 ? out.d1 : out.d2) = flux;
    }
    return out;
}

double decay_check(const ComplexPotential& pot,
                   const std::vector<double>& radii) {
    if (radii.empty()) {
        throw std::invalid_argument("decay_check: need at least one radius");
    }
    for (const double radius : radii) {
        if (!(radius >= 10.0 * pot.frame.r)) {
            throw std::invalid_argument("decay_check: radii must be >= 10 r");
        }
    }
    const double two_pi = 6.283185307179586476925286766559;
    double worst = 0.0;
    for (const double radius : radii) {
        for (int k = 0; k < 16; ++k) {
            const double th = two_pi * static_cast<double>(k) / 16.0;
            const complexd z{radius * std::cos(th), radius * std::sin(th)};
            worst = std::max(worst,
                             std::abs(z) * std::abs(eval_delta(pot, z)));
        }
    }
    return worst;
}

std::vector<double> dense_oracle(const ConformalFrame& frame, double gamma,
                                 std::int64_t N) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("dense_oracle: gamma must be positive");
    }
    if (N < 1 || N > 4000) {
        throw std::invalid_argument("dense_oracle: N must be in [1, 4000]");
    }
    // Deliberately textbook: full matrix, fl(2 + mu) diagonal, partial
    // pivoting. Shares no arithmetic shortcuts with the tridiagonal path.
    const auto n = static_cast<std::size_t>(N);
    const double k = gamma / (frame.beta * frame.beta);
    std::vector<double> A(n * n, 0.0);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        A[i * n + i] = k * (2.0 + frame.mu) +
                       potential_V(frame, static_cast<std::int64_t>(i + 1));
        if (i + 1 < n) {
            A[i * n + i + 1] = -k;
            A[(i + 1) * n + i] = -k;
        }
        b[i] = source_f(frame, static_cast<std::int64_t>(i + 1));
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(A[row * n + col]) > std::abs(A[piv * n + col])) {
                piv = row;
            }
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(A[col * n + j], A[piv * n + j]);
            }
            std::swap(b[col], b[piv]);
        }
        const double d = A[col * n + col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const double factor = A[row * n + col] / d;
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t j = col; j < n; ++j) {
                A[row * n + j] -= factor * A[col * n + j];
            }
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            s -= A[i * n + j] * x[j];
        }
        x[i] = s / A[i * n + i];
    }
    return x;
}

VerificationReport verify_solution(const ComplexPotential& pot, double gamma) {
    VerificationReport rep;
    if (pot.h_mode == HMode::lc_x1) {
        const RobinResult robin = robin_residual(pot, gamma, 1024);
        rep.robin_residual_d1 = robin.residual_d1;
        rep.robin_residual_d2 = robin.residual_d2;
        rep.robin_const_d1 = robin.const_d1;
        rep.robin_const_d2 = robin.const_d2;
    } else {
        rep.hc_residual = hc_boundary_residual(pot, gamma, 256);
    }
    const FluxResult flux = flux_integral(pot, 1024);
    rep.flux_d1 = flux.d1;
    rep.flux_d2 = flux.d2;
    const double r = pot.frame.r;
    rep.decay_product = decay_check(pot, {100.0 * r, 1000.0 * r, 10000.0 * r});
    if (gamma > 0.0) {
        // Re-solve both paths at the same truncation so the gap measures
        // algorithmic agreement, not truncation.
        const std::int64_t n_ref = std::min<std::int64_t>(500, pot.sol.N);
        const SpectralSolution tri = solve_at_truncation(pot.frame, gamma, n_ref);
        const std::vector<double> dense = dense_oracle(pot.frame, gamma, n_ref);
        double gap = 0.0;
        for (std::int64_t n = 1; n <= n_ref; ++n) {
            const double d = dense[static_cast<std::size_t>(n - 1)];
            gap = std::max(gap, std::abs(tri.coeff_a(n) - d) / std::abs(d));
        }
        rep.oracle_gap = gap;
    }
    return rep;
}

}  // namespace diskbond
