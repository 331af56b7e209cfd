#include "diskbond/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace diskbond {

double ConformalFrame::rho_pow(std::int64_t n) const {
    return std::exp(static_cast<double>(n) * log_rho);
}

double ConformalFrame::one_minus_rho_pow2n(std::int64_t n) const {
    return -std::expm1(2.0 * static_cast<double>(n) * log_rho);
}

ConformalFrame derive_frame(const DiskPair& pair) {
    if (!std::isfinite(pair.r) || !std::isfinite(pair.eps) || pair.r <= 0.0 ||
        pair.eps <= 0.0) {
        throw std::invalid_argument(
            "derive_frame: r and eps must be finite and positive");
    }
    if (pair.eps / pair.r < 1e-12) {
        throw ConditioningError(
            "derive_frame: eps/r below 1e-12 leaves mu without relative "
            "accuracy in binary64");
    }
    const double s = std::sqrt(4.0 * pair.r + pair.eps);
    const double t = std::sqrt(pair.eps);
    ConformalFrame frame;
    frame.r = pair.r;
    frame.eps = pair.eps;
    // rho = (s - t)/(s + t) rewritten as 4r/(s+t)^2: the direct subtraction
    // s - t loses digits when eps >> r and would break the 1e-14 identity
    // (1/rho - rho)/beta = 1/r.
    frame.rho = 4.0 * pair.r / ((s + t) * (s + t));
    frame.one_minus_rho = 2.0 * t / (s + t);
    frame.beta = s * t;
    frame.mu = frame.one_minus_rho * frame.one_minus_rho / frame.rho;
    frame.log_rho = std::log1p(-frame.one_minus_rho);
    return frame;
}

ExtPoint moebius(const ConformalFrame& frame, const ExtPoint& z) {
    if (z.infinite) {
        return ExtPoint::at(complexd{1.0, 0.0});
    }
    return moebius(frame, z.value);
}

ExtPoint moebius(const ConformalFrame& frame, complexd z) {
    const complexd zc = z - 0.5 * frame.beta;
    if (zc == complexd{}) {
        return ExtPoint::inf();
    }
    return ExtPoint::at(frame.beta / zc + 1.0);
}

ExtPoint moebius_inv(const ConformalFrame& frame, const ExtPoint& zeta) {
    if (zeta.infinite) {
        return ExtPoint::at(complexd{0.5 * frame.beta, 0.0});
    }
    return moebius_inv(frame, zeta.value);
}

ExtPoint moebius_inv(const ConformalFrame& frame, complexd zeta) {
    const complexd d = zeta - 1.0;
    if (d == complexd{}) {
        return ExtPoint::inf();
    }
    return ExtPoint::at(frame.beta / d + 0.5 * frame.beta);
}

Region classify(const DiskPair& pair, complexd z, double tol) {
    if (tol < 0.0) {
        throw std::invalid_argument("classify: tol must be nonnegative");
    }
    const double d1 = std::abs(z - complexd{pair.center1(), 0.0});
    const double d2 = std::abs(z - complexd{pair.center2(), 0.0});
    if (std::abs(d1 - pair.r) < tol || std::abs(d2 - pair.r) < tol) {
        return Region::near_boundary;
    }
    if (d1 < pair.r) {
        return Region::in_d1;
    }
    if (d2 < pair.r) {
        return Region::in_d2;
    }
    return Region::matrix;
}

}  // namespace diskbond
