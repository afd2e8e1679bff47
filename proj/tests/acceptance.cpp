// Acceptance run: one PASS/FAIL line per criterion, with detail lines underneath.
// Exit status is nonzero when any criterion fails; with --report it is zero once
// all seven lines have been printed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "zk/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;
    void note(const std::string& s) { details.push_back(s); }
    void check(bool ok, const std::string& s) {
        pass = pass && ok;
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + s);
    }
};

std::string fmt(double v) { return zk::format_double(v); }

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

const std::vector<double> kThetas{1.5, 2.0, 3.0};

Outcome coefficients() {
    using zk::Rational;
    using zk::RationalPoly;
    Outcome o;
    auto poly = [](Rational c2, Rational c1) {
        return RationalPoly::monomial(c2, 2) + RationalPoly::monomial(c1, 1);
    };
    auto ct = zk::derive_c_tilde(14);
    auto a = zk::derive_a(14);
    auto cv = zk::derive_c_v(14);
    auto same = [&](const RationalPoly& got, const RationalPoly& want, const std::string& label) {
        o.check(got == want, label + " = " + got.to_string() + " (expected " + want.to_string() + ")");
    };
    same(ct[0], RationalPoly::monomial(Rational(-1, 2), 1), "Ctilde_1");
    same(ct[1], poly(Rational(3, 24), Rational(2, 24)), "Ctilde_2");
    same(a[0], RationalPoly::monomial(Rational(-3, 2), 1), "A_1");
    same(a[1], poly(Rational(27, 24), Rational(-34, 24)), "A_2");
    same(cv[0], poly(Rational(3, 24), Rational(-10, 24)), "v-coefficient C_1");
    return o;
}

Outcome transforms(const zk::RunConfig& cfg) {
    Outcome o;
    for (double theta : kThetas) {
        zk::ArchModel model(zk::ArchParams{theta, cfg.order, cfg.x_max});
        auto kernel = zk::build_kernel(theta, cfg.order, cfg.x_max);
        for (double sigma : {2.0, 3.0, 4.0}) {
            auto p = zk::laplace_check_psi(model, sigma, 1e-7);
            auto g = zk::laplace_check_g(model, sigma, 1e-6);
            auto k = zk::kernel_laplace_check(*kernel, sigma, cfg.x_max, 1e-6);
            for (const auto* r : {&p, &g, &k}) {
                o.check(r->pass, r->name + " theta=" + fmt(theta) + " sigma=" + fmt(sigma) + " rel_err=" + sci(r->rel_err) +
                                     " tail=" + sci(r->tail_bound) + " tol=" + sci(r->tolerance));
            }
        }
    }
    return o;
}

Outcome theorem1(const zk::RunConfig& cfg) {
    Outcome o;
    const std::vector<std::string> listed{"m_chain_Phi",      "m_chain_Psi",      "phi_plus_dt_Phi", "phi_plus_dx_Psi",
                                          "phi_minus_dx_Phi", "phi_minus_dt_Psi", "exp_integral"};
    for (double theta : kThetas) {
        auto kernel = zk::build_kernel(theta, cfg.order, cfg.x_max);
        auto rows = zk::run_theorem1_suite(kernel, theta, {0.25, 0.5, 1, 1.5, 2}, cfg);
        for (const auto& r : rows) {
            const bool counted = std::find(listed.begin(), listed.end(), r.name) != listed.end();
            std::string line = r.name + " theta=" + fmt(theta) + " t=" + fmt(r.t) + " residual=" + sci(r.residual) +
                               " tol=" + sci(r.tolerance) + (r.note.empty() ? "" : " [" + r.note + "]");
            if (counted) o.check(r.pass, line);
            else o.note(std::string(r.pass ? "info " : "info FAIL ") + line);
        }
    }
    return o;
}

Outcome degenerate(const zk::RunConfig& cfg) {
    Outcome o;
    auto kernel = zk::build_kernel(2.0, cfg.order, cfg.x_max);
    for (const auto& r : zk::run_theorem1_suite(kernel, 2.0, {0}, cfg)) {
        o.check(r.residual <= 1e-12, r.name + " residual=" + sci(r.residual) + " tol=1e-12");
    }
    auto zero = std::make_shared<zk::ZeroKernel>();
    double worst = 0;
    for (const auto& r : zk::run_theorem1_suite(zero, 0, {0.25, 0.5, 1}, cfg)) worst = std::max(worst, r.residual);
    o.check(worst == 0, "zero kernel: largest identity residual " + sci(worst) + " (exact 0 required)");

    zk::DiscretizationOptions plain = cfg.discretization();
    plain.scheme = zk::Scheme::nystrom;
    double dmax = 0;
    for (zk::real c : {0.3L, -0.45L, 0.9L}) {
        auto k = std::make_shared<zk::SeparableExpKernel>(c);
        for (zk::real t : {0.25L, 0.5L, 1.0L, 2.0L}) {
            zk::FredholmSolver s(zk::discretize(k, t, plain));
            for (int sign : {1, -1}) {
                dmax = std::max(dmax, static_cast<double>(std::abs(s.determinant(sign).value - zk::separable_exp_det(c, t, sign))));
            }
        }
    }
    o.check(dmax <= 1e-10, "rank-one kernel c e^{-x-y}: max |det - (1 +- c sinh 2t)| = " + sci(dmax) + " tol=1e-10");

    double cmax = 0;
    for (zk::real c : {0.3L, -0.8L, 1.7L}) {
        auto k = std::make_shared<zk::ExpKernel>(c);
        for (zk::real t : {0.25L, 0.5L, 1.0L, 2.0L}) {
            zk::FredholmSolver s(zk::discretize(k, t, cfg.discretization()));
            for (int sign : {1, -1}) {
                cmax = std::max(cmax, static_cast<double>(std::abs(s.determinant(sign).value - zk::exp_kernel_det(c, t, sign))));
            }
        }
    }
    o.note("info causal exponential kernel: max |det - closed form| = " + sci(cmax));
    return o;
}

Outcome lambda_properties() {
    Outcome o;
    for (double theta : kThetas) {
        auto lam = zk::lambda_table(theta, 1'600'000);
        double worst = 0;
        long pairs = 0;
        for (std::int64_t a = 1; a <= 2000; ++a) {
            for (std::int64_t b = a; a * b <= 2000; ++b) {
                if (std::gcd(a, b) != 1) continue;
                const long double ab = lam.value_ld(a * b);
                const long double prod = lam.value_ld(a) * lam.value_ld(b);
                worst = std::max(worst, static_cast<double>(std::abs(ab - prod) / std::max<long double>(std::abs(ab), 1e-300L)));
                ++pairs;
            }
        }
        o.check(worst <= 1e-12, "multiplicativity theta=" + fmt(theta) + " pairs=" + std::to_string(pairs) +
                                    " max rel err=" + sci(worst));
        double pw = 0;
        for (int p : {2, 3, 5, 7, 11, 13}) {
            // exp(c x/(1-x)) = sum_k x^k sum_{j=1}^{k} C(k-1, j-1) c^j / j!
            const long double c = 2.0L * theta * std::log(static_cast<long double>(p));
            std::int64_t q = p;
            for (int k = 1; k <= 5; ++k, q *= p) {
                long double ref = 0;
                long double binom = 1;  // C(k-1, j-1)
                long double cj = 1;
                long double fact = 1;
                for (int j = 1; j <= k; ++j) {
                    cj *= c;
                    fact *= j;
                    ref += binom * cj / fact;
                    binom = binom * (k - j) / j;
                }
                pw = std::max(pw, static_cast<double>(std::abs(lam.value_ld(q) - ref) / ref));
            }
        }
        o.check(pw <= 1e-12, "prime powers p<=13, k<=5 theta=" + fmt(theta) + " max rel err=" + sci(pw));
    }
    return o;
}

Outcome kproperties(const zk::RunConfig& cfg) {
    Outcome o;
    auto r = zk::run_k_properties(2.0, cfg);
    o.check(r.support_exact, "support: K and K' vanish exactly at x < 0");
    o.check(r.growth_finite, "growth: C = max |K(x)| e^{-x/2} = " + sci(r.growth_constant) +
                                 ", fitted log-growth rate " + sci(r.growth_rate));
    o.check(r.variation_stable, "int_0^" + fmt(r.kiv_x) + " |K'| = " + fmt(r.variation) + ", refined " +
                                    fmt(r.variation_refined) + ", relative change " + sci(r.variation_change) +
                                    ", monotone-piece oracle " + fmt(r.variation_exact));
    o.check(r.sweep_produced, "determinant sweep produced: " + std::to_string(r.sweep.size()) + " points on (0, " +
                                  fmt(cfg.t_max) + "] with finite budgets");
    if (r.first_near_zero) {
        o.note("observation: first flagged t = " + fmt(*r.first_near_zero) + " (last clear t = " +
               (r.last_clear ? fmt(*r.last_clear) : std::string("none")) + ")");
        for (const auto& s : r.sweep) {
            if (s.flag) {
                o.note("observation: t=" + fmt(s.t) + " det+=" + sci(s.det_plus) + " det-=" + sci(s.det_minus) + " " + s.note);
                break;
            }
        }
    } else {
        o.note("observation: no near-zero determinant on the sweep");
    }
    return o;
}

Outcome convergence(const zk::RunConfig& cfg) {
    Outcome o;
    auto kernel = zk::build_kernel(2.0, cfg.order, cfg.x_max);
    // m(1) sits just past a zero of det(1 - K), so |det(1 - K[1])| ~ 2e-15 and the
    // relative change in m magnifies determinant errors; the check runs at a resolution
    // where doubling is resolved, the run defaults are reported alongside.
    auto doubling = [&](int ppu, int P) {
        zk::DiscretizationOptions opt = cfg.discretization();
        opt.panels_per_unit = ppu;
        opt.nodes_per_panel = P;
        auto coarse = zk::hamiltonian_row(zk::FredholmSolver(zk::discretize(kernel, 1.0L, opt)));
        opt.panels_per_unit *= 2;
        auto fine = zk::hamiltonian_row(zk::FredholmSolver(zk::discretize(kernel, 1.0L, opt)));
        const double rel = static_cast<double>(std::abs(fine.m - coarse.m) / std::abs(fine.m));
        const std::string text = "m(1) nodes_per_panel " + std::to_string(P) + ", panels_per_unit " + std::to_string(ppu) +
                                 " -> " + std::to_string(2 * ppu) + ": " + sci(static_cast<double>(coarse.m)) + " -> " +
                                 sci(static_cast<double>(fine.m)) + ", relative change " + sci(rel);
        return std::pair{rel, text};
    };
    o.note("info run defaults " + doubling(cfg.panels_per_unit, cfg.nodes_per_panel).second);
    auto [rel, text] = doubling(16, 24);
    o.check(rel < 1e-8, text);
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    std::string seq;
    for (int N = 10; N <= 14; ++N) {
        auto r = zk::mean_transform_residual(N, kThetas, {2, 3, 4}, cfg.x_max);
        monotone = monotone && r.mean_all < prev;
        prev = r.mean_all;
        seq += (seq.empty() ? "" : ", ") + std::string("N=") + std::to_string(N) + ": " + sci(r.mean_all);
        o.note("info N=" + std::to_string(N) + " mean rel err psiN " + sci(r.mean_psi) + " gN " + sci(r.mean_g) + " K " +
               sci(r.mean_k));
    }
    o.check(monotone, "mean transform residual decreasing in N: " + seq);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const bool report = argc > 1 && std::strcmp(argv[1], "--report") == 0;
    zk::RunConfig cfg;
    struct Criterion {
        int id;
        std::string title;
        double limit_s;  // 0 when no time limit is stated
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "coefficient exactness", 1, coefficients},
        {2, "transform oracles", 60, [&] { return transforms(cfg); }},
        {3, "m(t) identity chain", 300, [&] { return theorem1(cfg); }},
        {4, "boundary and degenerate cases", 0, [&] { return degenerate(cfg); }},
        {5, "lambda_theta properties", 10, lambda_properties},
        {6, "kernel property suite", 0, [&] { return kproperties(cfg); }},
        {7, "self-convergence", 0, [&] { return convergence(cfg); }},
    };
    bool all = true;
    int printed = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (c.limit_s > 0) o.check(secs < c.limit_s, "run time " + fmt(std::round(secs * 100) / 100) + " s, limit " + fmt(c.limit_s) + " s");
        all = all && o.pass;
        char head[160];
        std::snprintf(head, sizeof head, "CRITERION %d %s  %s  (%.2f s)", c.id, o.pass ? "PASS" : "FAIL", c.title.c_str(), secs);
        std::cout << head << "\n";
        for (const auto& d : o.details) std::cout << "    " << d << "\n";
        std::cout.flush();
        ++printed;
    }
    std::cout << "SUMMARY " << (all ? "all criteria PASS" : "one or more criteria FAIL") << "\n";
    if (report) return printed == static_cast<int>(criteria.size()) ? 0 : 1;
    return all ? 0 : 1;
}
