#pragma once

#include <complex>
#include <cstdint>

#include "diskbond/errors.hpp"

namespace diskbond {

using complexd = std::complex<double>;

/// Two equal disks of radius r separated by a gap of width eps, centered at
/// (-r - eps/2, 0) and (r + eps/2, 0).
struct DiskPair {
    double r = 0.0;
    double eps = 0.0;

    double center1() const { return -(r + 0.5 * eps); }
    double center2() const { return r + 0.5 * eps; }
};

/// Frame quantities of the Moebius map T(z) = beta/(z - beta/2) + 1, which
/// sends the matrix (disk exterior) onto the annulus rho < |zeta| < 1/rho.
/// one_minus_rho and log_rho are carried separately: 1 - rho is the smallest
/// geometric scale and must not be recovered by subtraction from rho.
struct ConformalFrame {
    double r = 0.0;
    double eps = 0.0;
    double rho = 0.0;
    double beta = 0.0;           // sqrt(eps * (4r + eps))
    double mu = 0.0;             // rho + 1/rho - 2 = (1 - rho)^2 / rho
    double one_minus_rho = 0.0;  // 2 sqrt(eps) / (sqrt(4r+eps) + sqrt(eps))
    double log_rho = 0.0;

    /// rho^n, stable for n up to the truncation cap.
    double rho_pow(std::int64_t n) const;
    /// 1 - rho^(2n) without cancellation.
    double one_minus_rho_pow2n(std::int64_t n) const;
};

/// Point on the Riemann sphere.
struct ExtPoint {
    complexd value{};
    bool infinite = false;

    static ExtPoint at(complexd z) { return {z, false}; }
    static ExtPoint inf() { return {complexd{}, true}; }
};

enum class Region { matrix, in_d1, in_d2, near_boundary };

/// Validates the pair and derives the frame.
/// Throws std::invalid_argument on non-finite or non-positive r, eps and
/// ConditioningError when eps/r < 1e-12.
ConformalFrame derive_frame(const DiskPair& pair);
inline ConformalFrame derive_frame(double r, double eps) {
    return derive_frame(DiskPair{r, eps});
}

/// T(z); the pole z = beta/2 maps to infinity, infinity maps to 1.
ExtPoint moebius(const ConformalFrame& frame, const ExtPoint& z);
ExtPoint moebius(const ConformalFrame& frame, complexd z);

/// T^{-1}(zeta); zeta = 1 maps to infinity, infinity maps to beta/2.
ExtPoint moebius_inv(const ConformalFrame& frame, const ExtPoint& zeta);
ExtPoint moebius_inv(const ConformalFrame& frame, complexd zeta);

/// Region tag for z; distance to either circle below tol wins.
Region classify(const DiskPair& pair, complexd z, double tol);

}  // namespace diskbond
