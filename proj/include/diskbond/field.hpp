#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "diskbond/geometry.hpp"
#include "diskbond/spectral.hpp"

namespace diskbond {

/// Which background drive the potential represents: lc_x1 is the real part
/// (drive along the line of centers, resistive interface), hc_x2 the
/// imaginary part (transverse drive, conductive interface).
enum class HMode { lc_x1, hc_x2 };

struct FieldSample {
    double x = 0.0;
    double y = 0.0;
    double u = 0.0;
    double ux = 0.0;
    double uy = 0.0;
    double grad_norm = 0.0;
};

struct BBox {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    std::int64_t nx = 0, ny = 0;
};

/// Evaluator of the analytic completion
///   Phi(zeta) = beta/2 + beta/(zeta - 1) + F(zeta) - F(1/zeta),
///   F(zeta)   = sum_n c(n) zeta^n   (radius >= rho^-2 > 1/rho),
/// with u = Re(Phi o T) (lc_x1) or v = Im(Phi o T) (hc_x2). n_eval truncates
/// the Horner chains where the dropped series tail falls under 1e-17 * beta
/// anywhere on the closed annulus.
struct ComplexPotential {
    ConformalFrame frame;
    SpectralSolution sol;
    HMode h_mode = HMode::lc_x1;
    std::int64_t n_eval = 0;
};

ComplexPotential make_potential(const ConformalFrame& frame,
                                const SpectralSolution& sol, HMode h_mode);

/// F and its first two derivatives, one Horner sweep.
/// Rejects |zeta| > (1/rho)(1 + 1e-12).
struct SeriesValue {
    complexd F{};
    complexd Fp{};
    complexd Fpp{};
};
SeriesValue eval_F(const ComplexPotential& pot, complexd zeta);

/// Harmonic annulus potential
/// U(zeta) = beta/2 + Re(beta/(zeta-1) + F(zeta) - F(1/zeta)).
/// Rejects zeta outside the closed annulus or within 1e-14 of 1.
double eval_U(const ComplexPotential& pot, complexd zeta);

/// Full analytic Phi(zeta); same domain as eval_U.
complexd eval_phi(const ComplexPotential& pot, complexd zeta);

/// u(z) for z in the closed matrix; throws std::domain_error strictly inside
/// a disk.
double eval_u(const ComplexPotential& pot, complexd z);

/// u(z) - h(z) with h the background drive, cancellation-free at large |z|.
/// The series value is accumulated with compensated arithmetic, so u carries
/// only a few ulp of noise even where tens of thousands of terms contribute;
/// small-step finite differences of u stay meaningful.
double eval_delta(const ComplexPotential& pot, complexd z);

/// W'(z) and W''(z) of the analytic completion W = Phi o T.
struct WDerivs {
    complexd wp{};
    complexd wpp{};
};
WDerivs wderivs(const ComplexPotential& pot, complexd z);

/// Gradient sample at z; throws std::domain_error strictly inside a disk or
/// within 1e-14 of a boundary circle (side ambiguous there).
FieldSample eval_grad(const ComplexPotential& pot, complexd z);

/// W'(z_j) for a batch of points, blocked for throughput. Every point must
/// satisfy the eval_grad domain.
void wprime_batch(const ComplexPotential& pot, const complexd* z,
                  std::int64_t count, complexd* out);

/// Row-major (y outer, x inner) samples; nodes inside a disk or within 1e-14
/// of a circle yield nullopt.
std::vector<std::optional<FieldSample>> field_grid(const ComplexPotential& pot,
                                                   const BBox& box);

/// Samples of one boundary circle (disk 1 or 2), equiangular in the
/// conformal angle phi of zeta = rho^{-+1} e^{i phi}. m is rounded up to a
/// power of two. normal is the outward unit normal of the disk as a complex
/// number, jac = |dz/dphi|, w the value of Phi.
struct BoundarySamples {
    std::vector<double> phi;
    std::vector<complexd> z;
    std::vector<complexd> w;
    std::vector<complexd> wp;
    std::vector<complexd> wpp;
    std::vector<complexd> normal;
    std::vector<double> jac;
};
BoundarySamples boundary_samples(const ComplexPotential& pot, int disk,
                                 std::int64_t m);

/// Sampled sup of |grad u| over the gap segment (512 points), circles offset
/// 1e-3 r outside each boundary (1024 angles each), and a 64x64 grid on a box
/// 4r wide; samples landing outside the matrix are skipped. A lower estimate
/// of the true sup.
double sup_grad(const ComplexPotential& pot);

}  // namespace diskbond
