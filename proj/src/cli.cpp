#include "diskbond/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diskbond/bounds.hpp"
#include "diskbond/duality.hpp"
#include "diskbond/errors.hpp"
#include "diskbond/field.hpp"
#include "diskbond/geometry.hpp"
#include "diskbond/spectral.hpp"
#include "diskbond/verify.hpp"

namespace diskbond {
namespace {

using nlohmann::json;

constexpr int k_exit_ok = 0;
constexpr int k_exit_check_failed = 1;
constexpr int k_exit_validation = 2;
constexpr int k_exit_conditioning = 3;
constexpr int k_exit_io = 4;

// 17 significant digits: enough for binary64 round-trip, so CSV re-runs are
// byte-identical and re-importable without loss.
std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

double parse_double_strict(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (pos != s.size()) {
        throw std::invalid_argument("trailing text after number: '" + s + "'");
    }
    return v;
}

std::int64_t parse_int_strict(const std::string& s) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
    if (pos != s.size()) {
        throw std::invalid_argument("trailing text after integer: '" + s + "'");
    }
    return static_cast<std::int64_t>(v);
}

std::vector<std::string> split_on_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
}

int write_text_file(const std::string& path, const std::string& text,
                    std::ostream& out, std::ostream& err) {
    if (path.empty()) {
        out << text;
        return k_exit_ok;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        err << "error: cannot open '" << path << "' for writing\n";
        return k_exit_io;
    }
    f << text;
    f.flush();
    if (!f) {
        err << "error: write to '" << path << "' failed\n";
        return k_exit_io;
    }
    return k_exit_ok;
}

struct CommonOpts {
    double r = 0.0;
    double eps = 0.0;
    std::string mode = "lc";
    std::optional<double> gamma;
    std::optional<double> alpha;
    double tol = 1e-12;
};

bool is_hc(const CommonOpts& o) { return o.mode == "hc"; }

// The coefficient system depends on one interface parameter: gamma for the
// resistive law, alpha for the conductive one. Enforces mode-consistent
// flag usage and returns that parameter.
double interface_parameter(const CommonOpts& o) {
    if (!is_hc(o)) {
        if (o.alpha) {
            throw std::invalid_argument("--alpha applies to --mode hc only");
        }
        if (!o.gamma) {
            throw std::invalid_argument("--mode lc requires --gamma");
        }
        if (!std::isfinite(*o.gamma) || *o.gamma < 0.0) {
            throw std::invalid_argument("--gamma must be finite and >= 0");
        }
        return *o.gamma;
    }
    if (o.gamma) {
        throw std::invalid_argument("--gamma applies to --mode lc only");
    }
    if (!o.alpha) {
        throw std::invalid_argument("--mode hc requires --alpha");
    }
    if (!std::isfinite(*o.alpha) || *o.alpha < 0.0) {
        throw std::invalid_argument("--alpha must be finite and >= 0");
    }
    return *o.alpha;
}

struct SolveBundle {
    ConformalFrame frame;
    double iface = 0.0;  // gamma (lc) or alpha (hc)
    bool hc = false;
    SpectralSolution sol;
    ComplexPotential pot;
};

SolveBundle make_bundle(double r, double eps, double iface, bool hc,
                        double tol, const std::string& corrupt) {
    SolveBundle b;
    b.frame = derive_frame(r, eps);
    b.iface = iface;
    b.hc = hc;
    b.sol = solve_coefficients(b.frame, iface, tol);
    if (corrupt == "c1") {
        // Hidden negative-control hook: misprint one reflection coefficient
        // so the boundary-law residual must flag it.
        b.sol.c.front() += 1e-3;
    } else if (!corrupt.empty()) {
        throw std::invalid_argument("unknown --corrupt target '" + corrupt +
                                    "'");
    }
    const ComplexPotential base = make_potential(b.frame, b.sol, HMode::lc_x1);
    b.pot = hc ? conjugate_potential(base) : base;
    return b;
}

// 53-bit uniform in [0, 1); fixed mapping so byte-identical output does not
// hinge on the library's distribution internals.
double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Worst mirror defect over random matrix points well clear of both disks:
// u of the resistive drive is odd under x -> -x, v of the conductive one
// even.
double symmetry_defect(const ComplexPotential& pot, std::int64_t samples,
                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double lo = 2.5 * pot.frame.r + pot.frame.eps;
    const double two_pi = 6.283185307179586476925286766559;
    double worst = 0.0;
    for (std::int64_t k = 0; k < samples; ++k) {
        const double radius = lo * (1.0 + 3.0 * u01(rng));
        const double angle = two_pi * u01(rng);
        const complexd z{radius * std::cos(angle), radius * std::sin(angle)};
        const complexd zm{-z.real(), z.imag()};
        const double a = eval_u(pot, z);
        const double b = eval_u(pot, zm);
        const double defect = pot.h_mode == HMode::lc_x1 ? a + b : a - b;
        worst = std::max(worst, std::abs(defect));
    }
    return worst;
}

// Tolerated tridiagonal-vs-dense gap. The dense path deliberately forms
// fl(2 + mu); that absolute diagonal perturbation ~2u*K spreads through the
// resolvent mass ~(1 - rho)^-2 and the gamma-dependent row scaling. The
// constant 64 holds a factor >= 8 over the worst case measured across the
// default sweep.
double oracle_threshold(const ConformalFrame& frame, double gamma) {
    const double u = 2.220446049250313e-16;
    const double omr = frame.one_minus_rho;
    return 1e-12 + 64.0 * u * std::max(1.0, frame.r / gamma) / (omr * omr);
}

json check_config(double r, double eps, double iface, bool hc, double tol,
                  const std::string& corrupt, bool* all_ok) {
    const SolveBundle b = make_bundle(r, eps, iface, hc, tol, corrupt);
    bool ok = true;
    json checks = json::array();
    const auto push = [&](const std::string& name, bool passed,
                          double margin) {
        json c;
        c["name"] = name;
        c["passed"] = passed;
        c["margin"] = std::isfinite(margin) ? json(margin) : json();
        checks.push_back(c);
        ok = ok && passed;
    };

    const BoundSet bounds = compute_bounds(b.frame, b.iface);
    for (const BoundCheck& bc :
         {check_sandwich(b.sol, bounds), check_envelopes(b.sol, bounds),
          check_difference_bounds(b.sol, bounds)}) {
        push(bc.name, bc.passed, bc.worst_margin);
    }

    const double sg = sup_grad(b.pot);
    push("gradient_bound", sg <= bounds.grad_bound, bounds.grad_bound - sg);

    const VerificationReport rep = verify_solution(b.pot, b.iface);
    if (!hc) {
        const double rr =
            std::max(rep.robin_residual_d1, rep.robin_residual_d2);
        push("robin_residual", rr <= 1e-8, 1e-8 - rr);
    } else {
        push("hc_residual", rep.hc_residual <= 1e-8, 1e-8 - rep.hc_residual);
    }
    const double fx = std::max(std::abs(rep.flux_d1), std::abs(rep.flux_d2));
    push("flux", fx <= 1e-10, 1e-10 - fx);

    // |z (u - h)| tends to 2 beta |F'(1)| <= 2 beta sum n |c(n)|; the extra
    // factor covers curvature at the finite check radii (>= 100 r).
    // |z| |u - x_1| tends to a constant; boundedness shows as the far probe
    // staying within twice the near probe (plus a roundoff floor).
    const double decay_near = decay_check(b.pot, {100.0 * b.frame.r});
    const double decay_far = decay_check(b.pot, {10000.0 * b.frame.r});
    const double decay_limit =
        2.0 * decay_near + 1e-12 * b.frame.r * b.frame.r;
    push("decay", decay_far <= decay_limit, decay_limit - decay_far);

    if (b.iface > 0.0) {
        const double thr = oracle_threshold(b.frame, b.iface);
        push("oracle", rep.oracle_gap <= thr, thr - rep.oracle_gap);
        double fpr = 0.0;
        const std::int64_t hi = std::min<std::int64_t>(8, b.sol.N / 2);
        for (std::int64_t n = 2; n <= hi; ++n) {
            fpr = std::max(fpr, fixed_point_residual(b.frame, b.sol, n));
        }
        const double fpr_limit = 10.0 * tol * b.frame.beta;
        push("fixed_point", fpr <= fpr_limit, fpr_limit - fpr);
    }

    const double sym = symmetry_defect(b.pot, 64, 0x5d15c0b0ull);
    push("symmetry", sym <= 1e-12, 1e-12 - sym);

    json cfg;
    cfg["r"] = r;
    cfg["eps"] = eps;
    cfg[hc ? "alpha" : "gamma"] = iface;
    cfg["N"] = b.sol.N;
    cfg["checks"] = checks;
    cfg["passed"] = ok;
    *all_ok = *all_ok && ok;
    return cfg;
}

int cmd_solve_impl(const CommonOpts& o, const std::string& out_path,
                   std::ostream& out, std::ostream& err) {
    const double iface = interface_parameter(o);
    const SolveBundle b = make_bundle(o.r, o.eps, iface, is_hc(o), o.tol, "");
    const double sg = sup_grad(b.pot);
    const double gb = gradient_sup_bound(b.frame, b.iface);
    const VerificationReport rep = verify_solution(b.pot, b.iface);

    json params;
    params["r"] = b.frame.r;
    params["eps"] = b.frame.eps;
    params["mode"] = b.hc ? "hc" : "lc";
    params[b.hc ? "alpha" : "gamma"] = b.iface;
    params["tol"] = o.tol;

    json res;
    if (!b.hc) {
        res["robin_residual_d1"] = rep.robin_residual_d1;
        res["robin_residual_d2"] = rep.robin_residual_d2;
        res["robin_const_d1"] = rep.robin_const_d1;
        res["robin_const_d2"] = rep.robin_const_d2;
    } else {
        res["hc_residual"] = rep.hc_residual;
    }
    res["flux_d1"] = rep.flux_d1;
    res["flux_d2"] = rep.flux_d2;
    res["decay_product"] = rep.decay_product;
    res["oracle_gap"] = rep.oracle_gap;
    res["solver_residual"] = b.sol.residual_norm;
    res["tail_bound"] = b.sol.tail_bound;

    json j;
    j["schema_version"] = 1;
    j["params"] = params;
    j["rho"] = b.frame.rho;
    j["beta"] = b.frame.beta;
    j["mu"] = b.frame.mu;
    j["N"] = b.sol.N;
    j["lambda_i"] = b.sol.lambda_i;
    j["lambda_e"] = b.sol.lambda_e;
    j["sup_grad"] = sg;
    j["grad_bound"] = std::isfinite(gb) ? json(gb) : json();
    j["residuals"] = res;
    return write_text_file(out_path, j.dump(2) + "\n", out, err);
}

BBox parse_grid_spec(const std::string& spec) {
    const std::vector<std::string> parts = split_on_commas(spec);
    if (parts.size() != 6) {
        throw std::invalid_argument("--grid expects x0,y0,x1,y1,nx,ny");
    }
    BBox box;
    box.x0 = parse_double_strict(parts[0]);
    box.y0 = parse_double_strict(parts[1]);
    box.x1 = parse_double_strict(parts[2]);
    box.y1 = parse_double_strict(parts[3]);
    box.nx = parse_int_strict(parts[4]);
    box.ny = parse_int_strict(parts[5]);
    return box;
}

int cmd_field_impl(const CommonOpts& o, const std::string& grid_spec,
                   const std::string& out_path, std::ostream& out,
                   std::ostream& err) {
    const double iface = interface_parameter(o);
    const BBox box = parse_grid_spec(grid_spec);
    const SolveBundle b = make_bundle(o.r, o.eps, iface, is_hc(o), o.tol, "");
    const auto samples = field_grid(b.pot, box);
    std::string text = "x,y,u,ux,uy,grad_norm\n";
    text.reserve(text.size() + samples.size() * 96);
    for (const auto& s : samples) {
        if (!s) {
            continue;
        }
        text += fmt17(s->x);
        text += ',';
        text += fmt17(s->y);
        text += ',';
        text += fmt17(s->u);
        text += ',';
        text += fmt17(s->ux);
        text += ',';
        text += fmt17(s->uy);
        text += ',';
        text += fmt17(s->grad_norm);
        text += '\n';
    }
    return write_text_file(out_path, text, out, err);
}

struct SweepOpts {
    double r = 0.0;
    double gamma = 0.0;
    std::vector<double> eps;
    bool baseline = false;
    std::string summary_path;
    std::string out_path;
    double tol = 1e-12;
};

double fit_loglog_slope(const std::vector<double>& eps,
                        const std::vector<double>& sup) {
    const auto n = eps.size();
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(eps[i]);
        my += std::log(sup[i]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(eps[i]) - mx;
        sxy += dx * (std::log(sup[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

int cmd_sweep_impl(const SweepOpts& o, std::ostream& out, std::ostream& err) {
    if (!std::isfinite(o.gamma) || o.gamma < 0.0) {
        throw std::invalid_argument("--gamma must be finite and >= 0");
    }
    if (o.eps.size() < 3) {
        throw std::invalid_argument("--eps needs at least 3 values");
    }
    if (!o.summary_path.empty() && !o.baseline) {
        throw std::invalid_argument(
            "--summary reports the baseline slope; add --baseline");
    }
    std::string text = "eps,gamma,sup_grad,grad_bound\n";
    std::vector<double> sup_main;
    std::vector<double> sup_base;
    for (const double eps : o.eps) {
        const SolveBundle b = make_bundle(o.r, eps, o.gamma, false, o.tol, "");
        const double sg = sup_grad(b.pot);
        const double gb = gradient_sup_bound(b.frame, o.gamma);
        sup_main.push_back(sg);
        text += fmt17(eps);
        text += ',';
        text += fmt17(o.gamma);
        text += ',';
        text += fmt17(sg);
        text += ',';
        text += std::isfinite(gb) ? fmt17(gb) : std::string("inf");
        text += '\n';
        if (o.baseline) {
            const SolveBundle b0 = make_bundle(o.r, eps, 0.0, false, o.tol, "");
            const double sg0 = sup_grad(b0.pot);
            sup_base.push_back(sg0);
            text += fmt17(eps);
            text += ",0,";
            text += fmt17(sg0);
            text += ",inf\n";
        }
    }
    const int code = write_text_file(o.out_path, text, out, err);
    if (code != k_exit_ok) {
        return code;
    }
    if (!o.summary_path.empty()) {
        json j;
        j["schema_version"] = 1;
        j["r"] = o.r;
        j["gamma"] = o.gamma;
        j["eps"] = o.eps;
        j["sup_grad"] = sup_main;
        j["baseline_sup_grad"] = sup_base;
        j["baseline_slope"] = fit_loglog_slope(o.eps, sup_base);
        j["sup_grad_max_min_ratio"] =
            *std::max_element(sup_main.begin(), sup_main.end()) /
            *std::min_element(sup_main.begin(), sup_main.end());
        return write_text_file(o.summary_path, j.dump(2) + "\n", out, err);
    }
    return k_exit_ok;
}

struct CheckOpts {
    std::optional<double> r;
    std::optional<double> eps;
    std::optional<double> gamma;
    std::optional<double> alpha;
    std::string mode = "lc";
    double tol = 1e-12;
    std::string sweep_file;
    std::string corrupt;
    std::string out_path;
};

int cmd_check_impl(const CheckOpts& o, std::ostream& out, std::ostream& err) {
    const bool hc = o.mode == "hc";
    struct Cfg {
        double r;
        double eps;
        double iface;
    };
    std::vector<Cfg> cfgs;
    if (!o.sweep_file.empty()) {
        if (o.r || o.eps || o.gamma || o.alpha) {
            throw std::invalid_argument(
                "--sweep-file replaces --r/--eps/--gamma/--alpha");
        }
        std::ifstream f(o.sweep_file);
        if (!f) {
            err << "error: cannot read '" << o.sweep_file << "'\n";
            return k_exit_io;
        }
        std::string line;
        while (std::getline(f, line)) {
            const std::size_t first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') {
                continue;
            }
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            const std::vector<std::string> parts = split_on_commas(line);
            if (parts.size() != 3) {
                throw std::invalid_argument(
                    "sweep file lines are r,eps,<gamma|alpha>: '" + line +
                    "'");
            }
            cfgs.push_back({parse_double_strict(parts[0]),
                            parse_double_strict(parts[1]),
                            parse_double_strict(parts[2])});
        }
        if (cfgs.empty()) {
            throw std::invalid_argument("sweep file has no configurations");
        }
    } else if (o.r || o.eps || o.gamma || o.alpha) {
        if (!o.r || !o.eps) {
            throw std::invalid_argument(
                "single-configuration check needs --r and --eps");
        }
        CommonOpts co;
        co.r = *o.r;
        co.eps = *o.eps;
        co.mode = o.mode;
        co.gamma = o.gamma;
        co.alpha = o.alpha;
        co.tol = o.tol;
        cfgs.push_back({co.r, co.eps, interface_parameter(co)});
    } else {
        // Default verification sweep: three radii, four gap decades, three
        // resistance contrasts around the neutral value gamma = r.
        for (const double r : {0.5, 1.0, 2.0}) {
            for (const double eps : {1.0, 1e-2, 1e-4, 1e-6}) {
                for (const double factor : {0.25, 1.0, 4.0}) {
                    cfgs.push_back({r, eps, factor * r});
                }
            }
        }
    }

    bool all_ok = true;
    json arr = json::array();
    for (const Cfg& c : cfgs) {
        if (!std::isfinite(c.iface) || c.iface < 0.0) {
            throw std::invalid_argument(
                "interface parameter must be finite and >= 0");
        }
        arr.push_back(
            check_config(c.r, c.eps, c.iface, hc, o.tol, o.corrupt, &all_ok));
    }

    json j;
    j["schema_version"] = 1;
    j["mode"] = hc ? "hc" : "lc";
    j["tol"] = o.tol;
    j["configs"] = arr;
    j["passed"] = all_ok;
    const int code = write_text_file(o.out_path, j.dump(2) + "\n", out, err);
    if (code != k_exit_ok) {
        return code;
    }
    return all_ok ? k_exit_ok : k_exit_check_failed;
}

void add_problem_flags(CLI::App* cmd, CommonOpts* o) {
    cmd->add_option("--r", o->r, "disk radius")->required();
    cmd->add_option("--eps", o->eps, "gap width between the disks")
        ->required();
    cmd->add_option("--mode", o->mode,
                    "interface law: lc (resistive) or hc (conductive)")
        ->check(CLI::IsMember({"lc", "hc"}))
        ->capture_default_str();
    cmd->add_option("--gamma", o->gamma, "interface resistance (lc mode)");
    cmd->add_option("--alpha", o->alpha, "surface conductance (hc mode)");
    cmd->add_option("--tol", o->tol, "coefficient tail tolerance")
        ->capture_default_str();
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    CLI::App app{
        "Conduction through two equal disks with an imperfectly bonded "
        "interface: solve, export fields, sweep gaps, verify."};
    app.require_subcommand(1);

    CommonOpts so;
    std::string solve_out;
    CLI::App* solve = app.add_subcommand(
        "solve", "Solve one configuration and emit a JSON report");
    add_problem_flags(solve, &so);
    solve->add_option("--output", solve_out,
                      "report path (stdout when omitted)");

    CommonOpts fo;
    std::string field_grid_spec;
    std::string field_out;
    CLI::App* field = app.add_subcommand(
        "field", "Sample the potential and its gradient on a grid (CSV)");
    add_problem_flags(field, &fo);
    field->add_option("--grid", field_grid_spec, "x0,y0,x1,y1,nx,ny")
        ->required();
    field->add_option("--output", field_out, "CSV path (stdout when omitted)");

    SweepOpts wo;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "sup|grad u| across a list of gap widths (CSV)");
    sweep->add_option("--r", wo.r, "disk radius")->required();
    sweep->add_option("--gamma", wo.gamma, "interface resistance")->required();
    sweep->add_option("--eps", wo.eps, "comma-separated gap widths (>= 3)")
        ->required()
        ->delimiter(',');
    sweep->add_flag("--baseline", wo.baseline,
                    "add a gamma = 0 row per gap width");
    sweep->add_option("--summary", wo.summary_path,
                      "also write a JSON summary (needs --baseline)");
    sweep->add_option("--output", wo.out_path, "CSV path (stdout when omitted)");
    sweep->add_option("--tol", wo.tol, "coefficient tail tolerance")
        ->capture_default_str();

    CheckOpts ko;
    CLI::App* check = app.add_subcommand(
        "check",
        "Run bound and residual checks; exit 1 when any check fails");
    check->add_option("--r", ko.r, "disk radius (single configuration)");
    check->add_option("--eps", ko.eps, "gap width (single configuration)");
    check->add_option("--gamma", ko.gamma, "interface resistance (lc mode)");
    check->add_option("--alpha", ko.alpha, "surface conductance (hc mode)");
    check->add_option("--mode", ko.mode, "lc or hc")
        ->check(CLI::IsMember({"lc", "hc"}))
        ->capture_default_str();
    check->add_option("--tol", ko.tol, "coefficient tail tolerance")
        ->capture_default_str();
    check->add_option("--sweep-file", ko.sweep_file,
                      "CSV of r,eps,<gamma|alpha> configurations");
    check->add_option("--output", ko.out_path,
                      "report path (stdout when omitted)");
    check->add_option("--corrupt", ko.corrupt)->group("");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("diskbond");
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return k_exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return k_exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return k_exit_validation;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve_impl(so, solve_out, out, err);
        }
        if (field->parsed()) {
            return cmd_field_impl(fo, field_grid_spec, field_out, out, err);
        }
        if (sweep->parsed()) {
            return cmd_sweep_impl(wo, out, err);
        }
        return cmd_check_impl(ko, out, err);
    } catch (const ConditioningError& e) {
        err << "error: " << e.what() << "\n";
        return k_exit_conditioning;
    } catch (const TruncationCapError& e) {
        err << "error: " << e.what() << "\n";
        return k_exit_conditioning;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return k_exit_validation;
    }
}

}  // namespace diskbond
