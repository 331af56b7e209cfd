#include "diskbond/duality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diskbond {

ComplexPotential conjugate_potential(const ComplexPotential& pot) {
    ComplexPotential conj = pot;
    conj.h_mode = HMode::hc_x2;
    return conj;
}

double hc_boundary_residual(const ComplexPotential& pot, double alpha,
                            std::int64_t m) {
    if (pot.h_mode != HMode::hc_x2) {
        throw std::invalid_argument(
            "hc_boundary_residual: potential must be in the transverse mode");
    }
    if (m < 64) {
        throw std::invalid_argument("hc_boundary_residual: m must be >= 64");
    }
    // Conductance law d_nu v + alpha Delta_S v = 0 with
    // d_nu v = Im(W' nu) and Delta_S v = -Im(W'' nu^2) - Im(W' nu)/r on a
    // circle of radius r, nu the outward unit normal. Sampling is equiangular
    // in the physical angle: W'' swings like 1/gap^2 only inside an O(sqrt(r
    // eps)) arc around the gap, so the nodes stay where the series evaluation
    // holds full relative accuracy.
    const double r = pot.frame.r;
    const double offset = r + 0.5 * pot.frame.eps;
    const double step = 2.0 * std::acos(-1.0) / static_cast<double>(m);
    double worst = 0.0;
    for (int disk = 1; disk <= 2; ++disk) {
        const double center = disk == 1 ? -offset : offset;
        for (std::int64_t k = 0; k < m; ++k) {
            const double theta = step * static_cast<double>(k);
            const complexd nu = std::polar(1.0, theta);
            const complexd z = center + r * nu;
            const WDerivs d = wderivs(pot, z);
            const double dnu = (d.wp * nu).imag();
            const double lap_s = -(d.wpp * nu * nu).imag() - dnu / r;
            worst = std::max(worst, std::abs(dnu + alpha * lap_s));
        }
    }
    return worst;
}

}  // namespace diskbond
