#include "diskbond/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "detail/fft.hpp"

namespace diskbond {

namespace {

constexpr double k_eval_tail_rel = 1e-17;  // series tail cut, units of beta

// |c(n)| rho^{-n} without forming rho^{-n} alone (it overflows long before
// the product does).
double scaled_coeff_mag(const ConformalFrame& frame, double cn,
                        std::int64_t n) {
    if (cn == 0.0) {
        return 0.0;
    }
    const double ln = static_cast<double>(n) * frame.log_rho;
    if (-ln < 700.0) {
        return std::abs(cn) * std::exp(-ln);
    }
    const double l = std::log(std::abs(cn)) - ln;
    return l > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(l);
}

DiskPair pair_of(const ConformalFrame& frame) {
    return DiskPair{frame.r, frame.eps};
}

}  // namespace

ComplexPotential make_potential(const ConformalFrame& frame,
                                const SpectralSolution& sol, HMode h_mode) {
    ComplexPotential pot;
    pot.frame = frame;
    pot.sol = sol;
    pot.h_mode = h_mode;
    // Least M whose dropped tail sum_{n>M} (n+1)^2 |c(n)| |zeta|^n stays
    // under 1e-17 beta on |zeta| <= 1/rho; (n+1)^2 majorizes the first two
    // derivative weights.
    const double threshold = k_eval_tail_rel * frame.beta;
    double acc = 0.0;
    std::int64_t M = 0;
    for (std::int64_t n = sol.N; n >= 1; --n) {
        const double np1 = static_cast<double>(n + 1);
        const double term =
            np1 * np1 * scaled_coeff_mag(frame, sol.coeff_c(n), n);
        if (acc + term > threshold) {
            M = n;
            break;
        }
        acc += term;
    }
    pot.n_eval = M;
    return pot;
}

namespace {

// P(w), P'(w), P''(w) for P(w) = sum_{n=1}^{M} c(n) w^{n-1}.
struct HornerTriple {
    complexd p{};
    complexd p1{};
    complexd p2{};
};

HornerTriple horner3(const ComplexPotential& pot, complexd w) {
    HornerTriple h;
    const auto& c = pot.sol.c;
    for (std::int64_t n = pot.n_eval; n >= 1; --n) {
        h.p2 = h.p2 * w + h.p1;
        h.p1 = h.p1 * w + h.p;
        h.p = h.p * w + c[static_cast<std::size_t>(n - 1)];
    }
    h.p2 *= 2.0;
    return h;
}

SeriesValue series_from_horner(const HornerTriple& h, complexd zeta) {
    SeriesValue s;
    s.F = zeta * h.p;
    s.Fp = h.p + zeta * h.p1;
    s.Fpp = 2.0 * h.p1 + zeta * h.p2;
    return s;
}

void require_annulus(const ComplexPotential& pot, complexd zeta) {
    const double az = std::abs(zeta);
    const double hi = (1.0 + 1e-12) / pot.frame.rho;
    const double lo = pot.frame.rho * (1.0 - 1e-12);
    if (az > hi || az < lo) {
        throw std::domain_error("eval: zeta outside the closed annulus");
    }
}

}  // namespace

SeriesValue eval_F(const ComplexPotential& pot, complexd zeta) {
    if (std::abs(zeta) > (1.0 + 1e-12) / pot.frame.rho) {
        throw std::domain_error("eval_F: |zeta| beyond the outer radius");
    }
    return series_from_horner(horner3(pot, zeta), zeta);
}

double eval_U(const ComplexPotential& pot, complexd zeta) {
    return eval_phi(pot, zeta).real();
}

complexd eval_phi(const ComplexPotential& pot, complexd zeta) {
    require_annulus(pot, zeta);
    if (std::abs(zeta - 1.0) < 1e-14) {
        throw std::domain_error("eval_phi: zeta at the pole 1");
    }
    const complexd Fz = eval_F(pot, zeta).F;
    const complexd Fw = eval_F(pot, 1.0 / zeta).F;
    return 0.5 * pot.frame.beta + pot.frame.beta / (zeta - 1.0) + Fz - Fw;
}

namespace {

Region matrix_region_or_throw(const ComplexPotential& pot, complexd z,
                              double boundary_tol, const char* who) {
    const Region reg = classify(pair_of(pot.frame), z, boundary_tol);
    if (reg == Region::in_d1 || reg == Region::in_d2) {
        throw std::domain_error(std::string(who) + ": point inside a disk");
    }
    return reg;
}

// Error-free transforms: Knuth's two_sum and Dekker's split/two_prod (no FMA
// assumed). Valid away from overflow, far beyond the magnitudes seen here.
double two_sum(double a, double b, double* err) {
    const double s = a + b;
    const double bb = s - a;
    *err = (a - (s - bb)) + (b - bb);
    return s;
}

void dk_split(double a, double* hi, double* lo) {
    const double c = 134217729.0 * a;  // 2^27 + 1
    *hi = c - (c - a);
    *lo = a - *hi;
}

double two_prod(double a, double b, double* err) {
    const double p = a * b;
    double ah, al, bh, bl;
    dk_split(a, &ah, &al);
    dk_split(b, &bh, &bl);
    *err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    return p;
}

// Compensated P(1+q) = sum_{n=1}^{M} c(n) (1+q)^{n-1} with the argument kept
// as the exact pair (1, q). Near the annulus edge tens of thousands of terms
// contribute, so a plain sweep at fl(1+q) loses ~1e-13 |P| twice over: the
// unit swallows the low bits of q, and the accumulation noise grows with the
// term count. Each step s -> s + s q + c(n) runs through error-free
// transforms whose residues feed a first-order error recurrence; the sum
// lands within a few ulp of the exact value.
complexd comp_horner_q(const std::vector<double>& c, std::int64_t M,
                       complexd q) {
    double sr = 0.0, si = 0.0, er = 0.0, ei = 0.0;
    const double qr = q.real();
    const double qi = q.imag();
    for (std::int64_t n = M; n >= 1; --n) {
        double e1, e2, e3, e4, e5, e6, e7, e8, e9;
        const double t1 = two_prod(sr, qr, &e1);
        const double t2 = two_prod(si, qi, &e2);
        const double mr = two_sum(t1, -t2, &e3);
        const double t3 = two_prod(sr, qi, &e4);
        const double t4 = two_prod(si, qr, &e5);
        const double mi = two_sum(t3, t4, &e6);
        const double u1 = two_sum(sr, mr, &e7);
        const double nsr = two_sum(u1, c[static_cast<std::size_t>(n - 1)], &e8);
        const double nsi = two_sum(si, mi, &e9);
        const double rr = ((e1 - e2) + e3) + (e7 + e8);
        const double ri = ((e4 + e5) + e6) + e9;
        const double ner = er + (er * qr - ei * qi) + rr;
        const double nei = ei + (er * qi + ei * qr) + ri;
        sr = nsr;
        si = nsi;
        er = ner;
        ei = nei;
    }
    return complexd{sr + er, si + ei};
}

}  // namespace

double eval_u(const ComplexPotential& pot, complexd z) {
    matrix_region_or_throw(pot, z, 0.0, "eval_u");
    const double h = pot.h_mode == HMode::lc_x1 ? z.real() : z.imag();
    return h + eval_delta(pot, z);
}

double eval_delta(const ComplexPotential& pot, complexd z) {
    matrix_region_or_throw(pot, z, 0.0, "eval_delta");
    // W(z) = Phi(T(z)) = z + F(zeta) - F(1/zeta) because
    // beta/(T(z) - 1) = z - beta/2 identically; the pole part cancels the
    // drive h exactly, keeping the far field free of cancellation.
    const complexd zc = z - 0.5 * pot.frame.beta;
    const complexd q = pot.frame.beta / zc;  // zeta - 1
    const complexd qt = -q / (1.0 + q);      // 1/zeta - 1
    const complexd pz = comp_horner_q(pot.sol.c, pot.n_eval, q);
    const complexd pw = comp_horner_q(pot.sol.c, pot.n_eval, qt);
    // F(zeta) - F(1/zeta) = (1 + q) P(1 + q) - (1 + qt) P(1 + qt)
    const complexd diff = (pz - pw) + (q * pz - qt * pw);
    return pot.h_mode == HMode::lc_x1 ? diff.real() : diff.imag();
}

WDerivs wderivs(const ComplexPotential& pot, complexd z) {
    const complexd zc = z - 0.5 * pot.frame.beta;
    const complexd q = pot.frame.beta / zc;  // zeta - 1
    const complexd zeta = 1.0 + q;
    const complexd zinv = 1.0 / zeta;
    const HornerTriple hz = horner3(pot, zeta);
    const HornerTriple hw = horner3(pot, zinv);
    const SeriesValue sz = series_from_horner(hz, zeta);
    const SeriesValue sw = series_from_horner(hw, zinv);
    const complexd zinv2 = zinv * zinv;
    const complexd a = sz.Fp + zinv2 * sw.Fp;
    const complexd b = sz.Fpp - 2.0 * zinv2 * zinv * sw.Fp -
                       zinv2 * zinv2 * sw.Fpp;
    const complexd c1 = pot.frame.beta / (zc * zc);  // (zeta-1)^2 / beta
    WDerivs d;
    d.wp = 1.0 - c1 * a;
    d.wpp = c1 * (2.0 * a / zc + c1 * b);
    return d;
}

namespace {

FieldSample sample_from(const ComplexPotential& pot, complexd z, double u,
                        complexd wp) {
    FieldSample s;
    s.x = z.real();
    s.y = z.imag();
    s.u = u;
    if (pot.h_mode == HMode::lc_x1) {
        s.ux = wp.real();
        s.uy = -wp.imag();
    } else {
        s.ux = wp.imag();
        s.uy = wp.real();
    }
    s.grad_norm = std::hypot(s.ux, s.uy);
    return s;
}

}  // namespace

FieldSample eval_grad(const ComplexPotential& pot, complexd z) {
    const Region reg = matrix_region_or_throw(pot, z, 1e-14, "eval_grad");
    if (reg == Region::near_boundary) {
        throw std::domain_error("eval_grad: point within 1e-14 of a circle");
    }
    return sample_from(pot, z, eval_u(pot, z), wderivs(pot, z).wp);
}

void wprime_batch(const ComplexPotential& pot, const complexd* z,
                  std::int64_t count, complexd* out) {
    // Two Horner chains (P, P') at two arguments (zeta, 1/zeta) per point.
    // Lanes of 4 points = 8 arguments keep independent dependency chains so
    // the coefficient loop pipelines; arithmetic per lane is identical to
    // the scalar path, so results match wderivs bit for bit.
    constexpr std::int64_t B = 4;
    const auto& c = pot.sol.c;
    for (std::int64_t base = 0; base < count; base += B) {
        const std::int64_t lanes = std::min(B, count - base);
        complexd arg[2 * B];
        complexd zc[B];
        for (std::int64_t j = 0; j < lanes; ++j) {
            zc[j] = z[base + j] - 0.5 * pot.frame.beta;
            const complexd zeta = 1.0 + pot.frame.beta / zc[j];
            arg[2 * j] = zeta;
            arg[2 * j + 1] = 1.0 / zeta;
        }
        for (std::int64_t j = lanes; j < B; ++j) {
            zc[j] = 1.0;
            arg[2 * j] = arg[2 * j + 1] = complexd{};
        }
        complexd p[2 * B];
        complexd p1[2 * B];
        for (auto& v : p) {
            v = complexd{};
        }
        for (auto& v : p1) {
            v = complexd{};
        }
        for (std::int64_t n = pot.n_eval; n >= 1; --n) {
            const double cn = c[static_cast<std::size_t>(n - 1)];
            for (std::int64_t k = 0; k < 2 * B; ++k) {
                p1[k] = p1[k] * arg[k] + p[k];
                p[k] = p[k] * arg[k] + cn;
            }
        }
        for (std::int64_t j = 0; j < lanes; ++j) {
            const complexd zeta = arg[2 * j];
            const complexd zinv = arg[2 * j + 1];
            const complexd fp_z = p[2 * j] + zeta * p1[2 * j];
            const complexd fp_w = p[2 * j + 1] + zinv * p1[2 * j + 1];
            const complexd a = fp_z + zinv * zinv * fp_w;
            out[base + j] = 1.0 - (pot.frame.beta / (zc[j] * zc[j])) * a;
        }
    }
}

std::vector<std::optional<FieldSample>> field_grid(const ComplexPotential& pot,
                                                   const BBox& box) {
    if (box.nx < 2 || box.ny < 2 || !(box.x1 > box.x0) || !(box.y1 > box.y0)) {
        throw std::invalid_argument("field_grid: degenerate grid spec");
    }
    const DiskPair pair = pair_of(pot.frame);
    std::vector<std::optional<FieldSample>> grid;
    grid.reserve(static_cast<std::size_t>(box.nx * box.ny));
    const double dx = (box.x1 - box.x0) / static_cast<double>(box.nx - 1);
    const double dy = (box.y1 - box.y0) / static_cast<double>(box.ny - 1);
    for (std::int64_t iy = 0; iy < box.ny; ++iy) {
        const double y = box.y0 + static_cast<double>(iy) * dy;
        for (std::int64_t ix = 0; ix < box.nx; ++ix) {
            const double x = box.x0 + static_cast<double>(ix) * dx;
            const complexd zp{x, y};
            if (classify(pair, zp, 1e-14) != Region::matrix) {
                grid.emplace_back(std::nullopt);
            } else {
                grid.emplace_back(eval_grad(pot, zp));
            }
        }
    }
    return grid;
}

BoundarySamples boundary_samples(const ComplexPotential& pot, int disk,
                                 std::int64_t m) {
    if (disk != 1 && disk != 2) {
        throw std::invalid_argument("boundary_samples: disk must be 1 or 2");
    }
    if (m < 1) {
        throw std::invalid_argument("boundary_samples: m must be positive");
    }
    const std::size_t mm = detail::next_pow2(static_cast<std::size_t>(m));
    const ConformalFrame& frame = pot.frame;
    const double center =
        disk == 1 ? pair_of(frame).center1() : pair_of(frame).center2();

    // Folded bins: exp(i n phi_j) depends only on n mod m on the equiangular
    // grid, so the full series collapses exactly into m bins per weight.
    // Side A is the circle's own radius R = rho^{r+-1}, side B the reflected
    // radius 1/R reached by the F(1/zeta) term.
    std::vector<double> ga(mm, 0.0), g1a(mm, 0.0), g2a(mm, 0.0);
    std::vector<double> gb(mm, 0.0), g1b(mm, 0.0), g2b(mm, 0.0);
    for (std::int64_t n = 1; n <= pot.n_eval; ++n) {
        const double cn = pot.sol.c[static_cast<std::size_t>(n - 1)];
        if (cn == 0.0) {
            continue;
        }
        // c(n) rho^n is safe directly; c(n) rho^{-n} needs the log form
        // because rho^{-n} alone overflows long before the product does.
        const double ln = static_cast<double>(n) * frame.log_rho;
        const double cn_shrink = cn * std::exp(ln);
        double cn_grow;
        if (-ln < 700.0) {
            cn_grow = cn * std::exp(-ln);
        } else {
            const double lg = std::log(std::abs(cn)) - ln;
            cn_grow = lg > 700.0 ? std::copysign(
                                       std::numeric_limits<double>::infinity(),
                                       cn)
                                 : std::copysign(std::exp(lg), cn);
        }
        const double cna = disk == 1 ? cn_shrink : cn_grow;
        const double cnb = disk == 1 ? cn_grow : cn_shrink;
        const double nn = static_cast<double>(n);
        const std::size_t bin = static_cast<std::size_t>(n) & (mm - 1);
        ga[bin] += cna;
        g1a[bin] += nn * cna;
        g2a[bin] += nn * (nn - 1.0) * cna;
        gb[bin] += cnb;
        g1b[bin] += nn * cnb;
        g2b[bin] += nn * (nn - 1.0) * cnb;
    }

    std::vector<complexd> buf(mm);
    auto run_fft = [&](const std::vector<double>& src,
                       std::vector<complexd>& dst) {
        for (std::size_t k = 0; k < mm; ++k) {
            buf[k] = complexd{src[k], 0.0};
        }
        detail::fft(buf);
        dst = buf;
    };
    std::vector<complexd> Fa, F1a, F2a, Fb, F1b, F2b;
    run_fft(ga, Fa);
    run_fft(g1a, F1a);
    run_fft(g2a, F2a);
    run_fft(gb, Fb);
    run_fft(g1b, F1b);
    run_fft(g2b, F2b);

    BoundarySamples out;
    out.phi.resize(mm);
    out.z.resize(mm);
    out.w.resize(mm);
    out.wp.resize(mm);
    out.wpp.resize(mm);
    out.normal.resize(mm);
    out.jac.resize(mm);
    const double two_pi = 6.283185307179586476925286766559;
    const double R = disk == 1 ? frame.rho : 1.0 / frame.rho;
    for (std::size_t j = 0; j < mm; ++j) {
        const double phi =
            two_pi * static_cast<double>(j) / static_cast<double>(mm);
        // e^{i phi} - 1 with the real part as -2 sin^2(phi/2): keeps
        // zeta - 1 fully accurate near phi = 0 where it shrinks to
        // -(1 - rho).
        const double sh = std::sin(0.5 * phi);
        const complexd eim1{-2.0 * sh * sh, std::sin(phi)};
        const complexd q =
            disk == 1
                ? frame.rho * eim1 - complexd{frame.one_minus_rho, 0.0}
                : (eim1 + complexd{frame.one_minus_rho, 0.0}) / frame.rho;
        const complexd zeta = R * complexd{std::cos(phi), std::sin(phi)};
        const complexd z = frame.beta / q + 0.5 * frame.beta;

        // zeta-side values: F(zeta) = sum c(n) R^n e^{i n phi} = conj(DFT)
        // of the folded real bins; the 1/zeta side is the plain DFT.
        const complexd fz = std::conj(Fa[j]);
        const complexd fpz = std::conj(F1a[j]) / zeta;
        const complexd fppz = std::conj(F2a[j]) / (zeta * zeta);
        const complexd fw = Fb[j];
        const complexd fpw = F1b[j] * zeta;   // argument is 1/zeta
        const complexd fppw = F2b[j] * zeta * zeta;

        const complexd zinv = 1.0 / zeta;
        const complexd zinv2 = zinv * zinv;
        const complexd a = fpz + zinv2 * fpw;
        const complexd b = fppz - 2.0 * zinv2 * zinv * fpw - zinv2 * zinv2 * fppw;
        const complexd c1 = q * q / frame.beta;

        out.phi[j] = phi;
        out.z[j] = z;
        out.w[j] = z + (fz - fw);
        out.wp[j] = 1.0 - c1 * a;
        out.wpp[j] = c1 * ((2.0 / frame.beta) * q * a + c1 * b);
        const complexd nu = (z - complexd{center, 0.0}) / frame.r;
        out.normal[j] = nu;
        out.jac[j] = frame.beta * R / std::norm(q);
    }
    return out;
}

double sup_grad(const ComplexPotential& pot) {
    const ConformalFrame& frame = pot.frame;
    const DiskPair pair = pair_of(frame);
    std::vector<complexd> pts;
    pts.reserve(512 + 2 * 1024 + 64 * 64);
    for (int k = 0; k < 512; ++k) {
        const double x =
            -0.5 * frame.eps + frame.eps * (static_cast<double>(k) + 0.5) / 512.0;
        pts.emplace_back(x, 0.0);
    }
    const double two_pi = 6.283185307179586476925286766559;
    const double r_off = frame.r * (1.0 + 1e-3);
    for (int disk = 0; disk < 2; ++disk) {
        const double cx = disk == 0 ? pair.center1() : pair.center2();
        for (int k = 0; k < 1024; ++k) {
            const double th = two_pi * static_cast<double>(k) / 1024.0;
            pts.emplace_back(cx + r_off * std::cos(th), r_off * std::sin(th));
        }
    }
    const double half = 2.0 * frame.r;
    for (int iy = 0; iy < 64; ++iy) {
        for (int ix = 0; ix < 64; ++ix) {
            pts.emplace_back(-half + 2.0 * half * static_cast<double>(ix) / 63.0,
                             -half + 2.0 * half * static_cast<double>(iy) / 63.0);
        }
    }
    // At tiny gaps the offset circle of one disk dips into the other disk;
    // such samples (and near-boundary ones) are dropped, the gap segment
    // already covers that region.
    std::vector<complexd> kept;
    kept.reserve(pts.size());
    for (const complexd& zp : pts) {
        if (classify(pair, zp, 1e-14) == Region::matrix) {
            kept.push_back(zp);
        }
    }
    std::vector<complexd> wp(kept.size());
    wprime_batch(pot, kept.data(), static_cast<std::int64_t>(kept.size()),
                 wp.data());
    double best = 0.0;
    for (const complexd& v : wp) {
        best = std::max(best, std::abs(v));
    }
    return best;
}

}  // namespace diskbond
