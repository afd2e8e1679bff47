#ifndef ZK_VERIFY_HPP
#define ZK_VERIFY_HPP

// Verification campaigns: transform oracles, the m(t) identity chain and the kernel
// property suite. Each produces rows with residual, tolerance and pass flag.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include "fredholm.hpp"
#include "io.hpp"
#include "kernel.hpp"
#include "reports.hpp"

namespace zk {

// ---------------------------------------------------------------------------
// Transform suite

/// sigma grid plus the large-sigma row at 6.
inline std::vector<double> transform_sigmas(const std::vector<double>& grid) {
    std::vector<double> s = grid;
    if (std::find(s.begin(), s.end(), 6.0) == s.end()) s.push_back(6.0);
    return s;
}

/// Same integral, compared against the exact transform of the truncated sum. Separates
/// quadrature error from the truncation error of the coefficient series.
inline TransformCheckReport against_finite_sum(TransformCheckReport r, const std::string& name, double exact,
                                               double tol) {
    r.name = name;
    r.rhs = exact;
    r.note = "exact transform of the N-term sum";
    finalize(r, tol);
    return r;
}

inline constexpr double kFiniteSumTol = 1e-9;

inline std::vector<TransformCheckReport> run_transform_suite(double theta, const std::vector<double>& sigma_grid,
                                                             const RunConfig& cfg) {
    for (double s : sigma_grid) {
        if (!(s >= 2 && s <= 6)) throw domain_error("run_transform_suite: sigma grid must lie in [2, 6]");
    }
    ArchModel model(ArchParams{theta, cfg.order, cfg.x_max});
    auto kernel = build_kernel(theta, cfg.order, cfg.x_max);
    std::vector<TransformCheckReport> out;
    for (double sigma : transform_sigmas(sigma_grid)) {
        out.push_back(laplace_check_psi0(theta, theta, sigma));
        out.push_back(laplace_check_psi1(model, sigma));
        auto psi = laplace_check_psi(model, sigma, cfg.tol_psi);
        out.push_back(psi);
        out.push_back(against_finite_sum(psi, "psiN_sum", model.psi_transform_exact(sigma), kFiniteSumTol));
        out.push_back(laplace_check_psi2(theta, theta, sigma));
        auto g = laplace_check_g(model, sigma, cfg.tol_transform);
        out.push_back(g);
        out.push_back(against_finite_sum(g, "gN_sum", model.g_transform_exact(sigma), kFiniteSumTol));
        out.push_back(kernel_laplace_check(*kernel, sigma, cfg.x_max, cfg.tol_transform));
    }
    return out;
}

/// Mean relative error of the psiN, gN and K rows, for order-convergence studies.
struct OrderResidual {
    int order = 0;
    double mean_psi = 0;
    double mean_g = 0;
    double mean_k = 0;
    double mean_all = 0;
};

inline OrderResidual mean_transform_residual(int order, const std::vector<double>& thetas,
                                             const std::vector<double>& sigmas, double x_max) {
    OrderResidual r;
    r.order = order;
    int n = 0;
    for (double th : thetas) {
        ArchModel model(ArchParams{th, order, x_max});
        auto kernel = build_kernel(th, order, x_max);
        for (double s : sigmas) {
            r.mean_psi += laplace_check_psi(model, s).rel_err;
            r.mean_g += laplace_check_g(model, s).rel_err;
            r.mean_k += kernel_laplace_check(*kernel, s, x_max).rel_err;
            ++n;
        }
    }
    r.mean_psi /= n;
    r.mean_g /= n;
    r.mean_k /= n;
    r.mean_all = (r.mean_psi + r.mean_g + r.mean_k) / 3;
    return r;
}

// ---------------------------------------------------------------------------
// m(t) identity chain

/// Relative scale used for identities between quantities that may be small or large.
inline double rel_scale(long double v) { return static_cast<double>(std::max<long double>(1, std::abs(v))); }

struct ChainProbe {
    std::unique_ptr<FredholmSolver> solver;
    Vector Phi;
    Vector Psi;
};

inline ChainProbe probe_at(const std::shared_ptr<const CausalKernel>& kernel, real t, const DiscretizationOptions& opt) {
    ChainProbe p;
    p.solver = std::make_unique<FredholmSolver>(discretize(kernel, t, opt));
    p.Phi = p.solver->solve_nodes(FieldKind::Phi);
    p.Psi = p.solver->solve_nodes(FieldKind::Psi);
    return p;
}

inline real probe_value(const ChainProbe& p, FieldKind kind, real x) {
    const Vector& v = kind == FieldKind::Phi ? p.Phi : p.Psi;
    if (p.solver->system().size() == 0) return p.solver->rhs(kind, x);
    return p.solver->interpolate(kind, v, x);
}

/// Solutions at t +- h (and t +- h/2 for Richardson), shared by all t-derivatives at one t.
struct TProbes {
    real t = 0;
    real h = 0;
    bool richardson = false;
    ChainProbe plus, minus, half_plus, half_minus;
};

inline TProbes make_probes(const std::shared_ptr<const CausalKernel>& kernel, real t, real h, const DiscretizationOptions& opt,
                           bool richardson) {
    TProbes p;
    p.t = t;
    p.h = h;
    p.richardson = richardson;
    p.plus = probe_at(kernel, t + h, opt);
    p.minus = probe_at(kernel, t - h, opt);
    if (richardson) {
        p.half_plus = probe_at(kernel, t + h / 2, opt);
        p.half_minus = probe_at(kernel, t - h / 2, opt);
    }
    return p;
}

/// Central difference in t of Phi or Psi at fixed x, optionally Richardson-extrapolated.
/// With diagonal = true the point moves with t: d/dt f(t, t).
inline real t_derivative(const TProbes& p, FieldKind kind, real x, bool diagonal = false) {
    auto central = [&](const ChainProbe& plus, const ChainProbe& minus, real hh) {
        real fp = probe_value(plus, kind, diagonal ? p.t + hh : x);
        real fm = probe_value(minus, kind, diagonal ? p.t - hh : x);
        return (fp - fm) / (2 * hh);
    };
    real d = central(p.plus, p.minus, p.h);
    if (p.richardson) d = (4 * central(p.half_plus, p.half_minus, p.h / 2) - d) / 3;
    return d;
}

inline std::vector<IdentityReport> run_theorem1_suite(const std::shared_ptr<const CausalKernel>& kernel, double theta,
                                                      const std::vector<double>& t_grid, const RunConfig& cfg) {
    std::vector<IdentityReport> out;
    const auto opt = cfg.discretization();
    const real h = cfg.fd_step;
    for (double td : t_grid) {
        const real t = td;
        if (t == 0) {
            FredholmSolver s(discretize(kernel, 0, opt));
            auto row = hamiltonian_row(s);
            auto Phi = solve_field(s, FieldKind::Phi);
            auto Psi = solve_field(s, FieldKind::Psi);
            const double tol0 = 1e-10;
            out.push_back(make_identity("m_at_zero", 0, theta, static_cast<double>(std::abs(row.m - 1)), tol0));
            out.push_back(make_identity("Phi_at_zero", 0, theta, static_cast<double>(std::abs(Phi.boundary - 1)), tol0));
            out.push_back(make_identity("Psi_at_zero", 0, theta, static_cast<double>(std::abs(Psi.boundary - 1)), tol0));
            out.push_back(make_identity(
                "det_at_zero", 0, theta,
                static_cast<double>(std::max(std::abs(row.det_plus - 1), std::abs(row.det_minus - 1))), tol0));
            continue;
        }
        if (t - h < 0) throw domain_error("run_theorem1_suite: t must exceed the finite-difference step");
        FredholmSolver s(discretize(kernel, t, opt));
        const auto row = hamiltonian_row(s);
        const std::string beyond = row.flag ? row.note : "";
        auto Phi = solve_field(s, FieldKind::Phi);
        auto Psi = solve_field(s, FieldKind::Psi);
        auto php = solve_field(s, FieldKind::phi_plus);
        auto phm = solve_field(s, FieldKind::phi_minus);
        const real m = row.m;

        out.push_back(make_identity("m_chain_Phi", td, theta, static_cast<double>(std::abs(m - 1 / Phi.boundary) / std::abs(m)),
                                    cfg.tol_chain, beyond));
        out.push_back(make_identity("m_chain_Psi", td, theta, static_cast<double>(std::abs(m - Psi.boundary) / std::abs(m)),
                                    cfg.tol_chain, beyond));

        // nodal residual of all four systems
        real nodal = 0;
        for (const auto* f : {&Phi, &Psi, &php, &phm}) {
            real mx = 0;
            for (real v : f->values) mx = std::max(mx, std::abs(v));
            nodal = std::max(nodal, f->residual / std::max<real>(1, mx));
        }
        out.push_back(make_identity("nodal_residual", td, theta, static_cast<double>(nodal), cfg.tol_nodal));

        // off-node residual of the Phi equation: the polynomial through the nodal values,
        // inserted into the equation, against the natural interpolant
        {
            std::mt19937_64 rng(20240601u + static_cast<unsigned>(td * 1000));
            std::uniform_real_distribution<double> U(-static_cast<double>(t), static_cast<double>(t));
            real mx = 0;
            for (real v : Phi.values) mx = std::max(mx, std::abs(v));
            real worst = 0;
            for (int i = 0; i < 50; ++i) {
                const real x = U(rng);
                worst = std::max(worst, std::abs(s.polynomial(Phi.coeffs, x) - s.interpolate(FieldKind::Phi, Phi.coeffs, x)));
            }
            out.push_back(make_identity("off_node_residual", td, theta, static_cast<double>(worst / std::max<real>(1, mx)),
                                        cfg.tol_interp));
        }

        // derivative identities at interior points
        const std::vector<real> xs{-0.6L * t, -0.2L * t, 0.3L * t, 0.7L * t};
        const auto probes = make_probes(kernel, t, h, opt, cfg.richardson);
        double r7a = 0, r7b = 0, r8a = 0, r8b = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const real x = xs[i];
            const real pp = s.interpolate(FieldKind::phi_plus, php.coeffs, x);
            const real pm = s.interpolate(FieldKind::phi_minus, phm.coeffs, x);
            const real dxPhi = s.interpolate_dx(FieldKind::Phi, Phi.coeffs, x);
            const real dxPsi = s.interpolate_dx(FieldKind::Psi, Psi.coeffs, x);
            r7a = std::max(r7a, static_cast<double>(std::abs(pp + t_derivative(probes, FieldKind::Phi, x) / Phi.boundary)) / rel_scale(pp));
            r7b = std::max(r7b, static_cast<double>(std::abs(pp - dxPsi / Psi.boundary)) / rel_scale(pp));
            r8a = std::max(r8a, static_cast<double>(std::abs(pm + dxPhi / Phi.boundary)) / rel_scale(pm));
            r8b = std::max(r8b, static_cast<double>(std::abs(pm - t_derivative(probes, FieldKind::Psi, x) / Psi.boundary)) / rel_scale(pm));
        }
        out.push_back(make_identity("phi_plus_dt_Phi", td, theta, r7a, cfg.tol_fd, beyond));
        out.push_back(make_identity("phi_plus_dx_Psi", td, theta, r7b, cfg.tol_fd, beyond));
        out.push_back(make_identity("phi_minus_dx_Phi", td, theta, r8a, cfg.tol_fd, beyond));
        out.push_back(make_identity("phi_minus_dt_Psi", td, theta, r8b, cfg.tol_fd, beyond));

        // d/dt Phi(t,t) + Phi(t,t) (phi+(t,t) + phi-(t,t)) = 0
        {
            const real d = t_derivative(probes, FieldKind::Phi, t, true);
            const real rhs = Phi.boundary * (php.boundary + phm.boundary);
            out.push_back(make_identity("boundary_derivative", td, theta,
                                        static_cast<double>(std::abs(d + rhs)) / rel_scale(rhs), cfg.tol_fd, beyond));
        }

        // m(t) = exp(int_0^t phi+(tau,tau) + phi-(tau,tau) dtau)
        {
            auto e = m_by_exp_integral(kernel, t, opt);
            if (e.crossed) {
                out.push_back(make_identity("exp_integral", td, theta, std::numeric_limits<double>::infinity(),
                                            cfg.tol_exp_integral,
                                            "integrand has a pole: m(tau) <= 0 at tau = " + format_double(e.crossed_before)));
            } else {
                out.push_back(make_identity("exp_integral", td, theta, static_cast<double>(std::abs(e.m - m) / std::abs(m)),
                                            cfg.tol_exp_integral, beyond));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Kernel property suite

struct SweepRow {
    double t = 0;
    double det_plus = 0;
    double det_minus = 0;
    double m = 0;
    double budget = 0;  // |log det| change against a coarser rule
    bool flag = false;
    std::string note;
};

struct KPropertiesReport {
    double theta = 0;
    // support
    bool support_exact = false;
    std::vector<double> support_samples;
    // growth
    double growth_constant = 0;
    double growth_rate = 0;
    bool growth_finite = false;
    // total variation on [0, kiv_x]
    double kiv_x = 0;
    double variation = 0;
    double variation_refined = 0;
    double variation_exact = 0;
    double variation_change = 0;
    bool variation_stable = false;
    // determinant sweep
    std::vector<SweepRow> sweep;
    std::optional<double> first_near_zero;
    std::optional<double> last_clear;
    bool sweep_produced = false;
    bool pass = false;
};

/// int over [a, b] of |K'|, with [a, b] split where K' changes sign and each monotone piece
/// further split into 2^level parts, integrated by tanh-sinh.
struct VariationResult {
    double quad = 0;
    double exact = 0;
};

inline std::vector<real> derivative_sign_changes(const CausalKernel& K, real a, real b, int samples = 96) {
    std::vector<real> roots;
    real prev_x = a + (b - a) * 1e-6L;
    real prev = K.derivative(prev_x);
    for (int i = 1; i <= samples; ++i) {
        real x = a + (b - a) * (static_cast<real>(i) / samples) * (1 - 2e-6L) + (b - a) * 1e-6L;
        real d = K.derivative(x);
        if ((prev < 0 && d > 0) || (prev > 0 && d < 0)) {
            std::uintmax_t it = 200;
            auto r = boost::math::tools::toms748_solve([&](real u) { return K.derivative(u); }, prev_x, x, prev, d,
                                                       boost::math::tools::eps_tolerance<real>(60), it);
            roots.push_back((r.first + r.second) / 2);
        }
        prev = d;
        prev_x = x;
    }
    return roots;
}

inline VariationResult total_variation(const CausalKernel& K, real a, real b, int level) {
    VariationResult out;
    std::vector<real> cuts{a};
    for (real c : K.breakpoints(b)) {
        if (c > a && c < b) cuts.push_back(c);
    }
    cuts.push_back(b);
    std::vector<real> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        pieces.push_back(cuts[i]);
        for (real r : derivative_sign_changes(K, cuts[i], cuts[i + 1])) pieces.push_back(r);
    }
    pieces.push_back(b);
    boost::math::quadrature::tanh_sinh<real> ts;
    const int parts = 1 << level;
    real q = 0;
    real e = 0;
    auto dK = [&](real u) { return K.derivative(u); };
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        const real lo = pieces[i];
        const real hi = pieces[i + 1];
        if (hi <= lo) continue;
        real piece = 0;
        for (int k = 0; k < parts; ++k) {
            piece += ts.integrate(dK, lo + (hi - lo) * k / parts, lo + (hi - lo) * (k + 1) / parts, 1e-14L);
        }
        q += std::abs(piece);
        // K is continuous, so on a monotone piece int |K'| = |K(hi) - K(lo)|
        const real eps = (hi - lo) * 1e-15L;
        e += std::abs(K.value(hi - eps) - K.value(lo));
    }
    out.quad = static_cast<double>(q);
    out.exact = static_cast<double>(e);
    return out;
}

inline KPropertiesReport run_k_properties(double theta, const RunConfig& cfg,
                                          std::shared_ptr<const KernelProfile> kernel = nullptr) {
    if (!(theta > 1)) throw domain_error("run_k_properties: theta must be > 1");
    if (!kernel) kernel = build_kernel(theta, cfg.order, cfg.x_max);
    const auto& K = *kernel;
    KPropertiesReport r;
    r.theta = theta;

    // support: exact zero for x < 0
    r.support_samples = {-1e-12, -0.5, -1, -2, -cfg.x_max};
    r.support_exact = true;
    for (double x : r.support_samples) {
        if (K.value(x) != 0 || K.derivative(x) != 0) r.support_exact = false;
    }

    // growth: C = max |K(x)| e^{-x/2} on a fine grid, and a log-linear fit of unit-window maxima
    {
        const int per_unit = 256;
        const int steps = static_cast<int>(cfg.x_max * per_unit);
        std::vector<double> wmax(static_cast<std::size_t>(std::ceil(cfg.x_max)), 0.0);
        for (int i = 0; i <= steps; ++i) {
            const double x = static_cast<double>(i) / per_unit;
            if (x > cfg.x_max) break;
            const double v = std::abs(static_cast<double>(K.value(x)));
            r.growth_constant = std::max(r.growth_constant, v * std::exp(-x / 2));
            auto w = std::min<std::size_t>(static_cast<std::size_t>(x), wmax.size() - 1);
            wmax[w] = std::max(wmax[w], v);
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (std::size_t j = 0; j < wmax.size(); ++j) {
            if (!(wmax[j] > 0)) continue;
            const double x = static_cast<double>(j) + 0.5;
            const double y = std::log(wmax[j]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        r.growth_rate = n > 1 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0;
        r.growth_finite = std::isfinite(r.growth_constant);
    }

    // local integrability of K'
    {
        r.kiv_x = std::min(cfg.kiv_x, cfg.x_max);
        auto v0 = total_variation(K, 0, r.kiv_x, 0);
        auto v1 = total_variation(K, 0, r.kiv_x, 1);
        r.variation = v0.quad;
        r.variation_refined = v1.quad;
        r.variation_exact = v1.exact;
        r.variation_change = std::abs(v1.quad - v0.quad) / std::max(std::abs(v1.quad), kRelFloor);
        r.variation_stable = std::isfinite(r.variation) && r.variation_change <= 1e-6;
    }

    // determinant sweep
    {
        DiscretizationOptions fine = cfg.discretization();
        fine.nodes_per_panel = cfg.sweep_nodes_per_panel;
        DiscretizationOptions coarse = fine;
        coarse.nodes_per_panel = std::max(4, fine.nodes_per_panel - 4);
        bool all_finite = true;
        int prev_sign_minus = 1;
        int prev_sign_plus = 1;
        for (int i = 1; i <= cfg.t_steps; ++i) {
            const double t = cfg.t_max * i / cfg.t_steps;
            FredholmSolver S(discretize(kernel, t, fine));
            FredholmSolver C(discretize(kernel, t, coarse));
            auto row = hamiltonian_row(S);
            auto crow = hamiltonian_row(C);
            SweepRow sr;
            sr.t = t;
            sr.det_plus = static_cast<double>(row.det_plus);
            sr.det_minus = static_cast<double>(row.det_minus);
            sr.m = static_cast<double>(row.m);
            sr.budget = static_cast<double>(std::max(std::abs(row.log_det_plus - crow.log_det_plus),
                                                     std::abs(row.log_det_minus - crow.log_det_minus)));
            sr.flag = row.flag;
            sr.note = row.note;
            const int sm = row.det_minus > 0 ? 1 : (row.det_minus < 0 ? -1 : 0);
            const int sp = row.det_plus > 0 ? 1 : (row.det_plus < 0 ? -1 : 0);
            if (sm != prev_sign_minus || sp != prev_sign_plus) {
                sr.flag = true;
                sr.note = "determinant changed sign since t = " + format_double(cfg.t_max * (i - 1) / cfg.t_steps);
            }
            prev_sign_minus = sm;
            prev_sign_plus = sp;
            if (!std::isfinite(sr.m) || !std::isfinite(sr.budget)) all_finite = false;
            if (sr.flag && !r.first_near_zero) r.first_near_zero = t;
            if (!r.first_near_zero) r.last_clear = t;
            r.sweep.push_back(sr);
        }
        r.sweep_produced = all_finite && !r.sweep.empty();
    }

    r.pass = r.support_exact && r.growth_finite && r.variation_stable && r.sweep_produced;
    return r;
}

// ---------------------------------------------------------------------------
// JSON reports

inline nlohmann::ordered_json to_json(const TransformCheckReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["theta"] = r.theta;
    j["order"] = r.order;
    j["sigma"] = r.sigma;
    j["lhs"] = json_number(r.lhs);
    j["rhs"] = json_number(r.rhs);
    j["rel_err"] = json_number(r.rel_err);
    j["tail_bound"] = json_number(r.tail_bound);
    j["quadrature_estimate_error"] = json_number(r.quadrature_estimate_error);
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline nlohmann::ordered_json to_json(const IdentityReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["t"] = r.t;
    j["theta"] = r.theta;
    j["residual"] = json_number(r.residual);
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline nlohmann::ordered_json to_json(const KPropertiesReport& r) {
    nlohmann::ordered_json j;
    j["support"] = {{"samples", r.support_samples}, {"exact_zero", r.support_exact}};
    j["growth"] = {{"constant_C", json_number(r.growth_constant)},
                   {"fitted_rate", json_number(r.growth_rate)},
                   {"finite", r.growth_finite}};
    j["derivative_integrability"] = {{"x", r.kiv_x},
                                     {"integral_abs_derivative", json_number(r.variation)},
                                     {"refined", json_number(r.variation_refined)},
                                     {"monotone_piece_oracle", json_number(r.variation_exact)},
                                     {"relative_change", json_number(r.variation_change)},
                                     {"stable", r.variation_stable}};
    auto rows = nlohmann::ordered_json::array();
    for (const auto& s : r.sweep) {
        nlohmann::ordered_json row;
        row["t"] = s.t;
        row["det_plus"] = json_number(s.det_plus);
        row["det_minus"] = json_number(s.det_minus);
        row["m"] = json_number(s.m);
        row["log_det_budget"] = json_number(s.budget);
        row["flag"] = s.flag;
        if (!s.note.empty()) row["note"] = s.note;
        rows.push_back(row);
    }
    j["determinant_sweep"] = rows;
    j["first_near_zero_t"] = r.first_near_zero ? nlohmann::ordered_json(*r.first_near_zero) : nlohmann::ordered_json(nullptr);
    j["last_clear_t"] = r.last_clear ? nlohmann::ordered_json(*r.last_clear) : nlohmann::ordered_json(nullptr);
    j["pass"] = r.pass;
    return j;
}

template <class Row>
nlohmann::ordered_json suite_json(const std::string& suite, double theta, const std::vector<Row>& rows, const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["theta"] = theta;
    auto arr = nlohmann::ordered_json::array();
    bool pass = true;
    for (const auto& r : rows) {
        arr.push_back(to_json(r));
        pass = pass && r.pass;
    }
    j["rows"] = arr;
    j["pass"] = pass;
    j["config"] = to_json(cfg);
    j["versions"] = versions_json();
    return j;
}

inline nlohmann::ordered_json suite_json(const KPropertiesReport& r, const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["suite"] = "kproperties";
    j["theta"] = r.theta;
    j["rows"] = nlohmann::ordered_json::array({to_json(r)});
    j["pass"] = r.pass;
    j["config"] = to_json(cfg);
    j["versions"] = versions_json();
    return j;
}

template <class Row>
bool all_pass(const std::vector<Row>& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
}

}  // namespace zk

#endif  // ZK_VERIFY_HPP
