// zk: command-line front end for the kernel, determinant and verification code.
//
// Exit codes: 0 success, 1 identity failure, 2 configuration error, 3 degeneracy (strict mode).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zk/io.hpp"
#include "zk/verify.hpp"

namespace {

using zk::format_double;
using zk::RunConfig;
using zk::Table;

enum Exit { kOk = 0, kIdentityFailure = 1, kConfigError = 2, kDegenerate = 3 };

nlohmann::ordered_json meta(const std::string& command, const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config"] = zk::to_json(cfg);
    j["versions"] = zk::versions_json();
    return j;
}

void emit(const Table& t, const std::string& command, const RunConfig& cfg) {
    zk::with_output(cfg.output, [&](std::ostream& os) {
        if (cfg.format == "json") {
            t.write_json(os, meta(command, cfg));
        } else {
            t.write_csv(os, meta(command, cfg));
        }
    });
}

void emit_json(const nlohmann::ordered_json& j, const RunConfig& cfg) {
    zk::with_output(cfg.output, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
}

std::string fmt(long double v) { return format_double(static_cast<double>(v)); }

int cmd_lambda(const RunConfig& cfg, std::int64_t n_max) {
    if (n_max < 1 || n_max > zk::kSieveMax) throw std::invalid_argument("n_max must lie in [1, 1e7]");
    zk::LambdaTable lam(cfg.theta, n_max);
    Table t({"n", "lambda"});
    for (std::int64_t n = 1; n <= n_max; ++n) t.add({std::to_string(n), format_double(lam(n))});
    emit(t, "lambda", cfg);
    return kOk;
}

int cmd_kernel(const RunConfig& cfg, double step) {
    if (!(step > 0)) throw std::invalid_argument("step must be > 0");
    auto k = zk::build_kernel(cfg.theta, cfg.order, cfg.x_max);
    std::vector<long double> xs;
    for (long double x = -1; x <= cfg.x_max + 1e-12; x += step) xs.push_back(x);
    for (long double c : k->breakpoints(cfg.x_max)) xs.push_back(c);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(), [](long double a, long double b) { return std::abs(a - b) < 1e-15L; }), xs.end());
    const auto kinks = k->breakpoints(cfg.x_max);
    Table t({"x", "K", "dK_left", "dK_right", "kink"});
    for (long double x : xs) {
        const bool kink = std::binary_search(kinks.begin(), kinks.end(), x);
        t.add({fmt(x), fmt(k->value(x)), fmt(k->derivative_left(x)), fmt(k->derivative(x)), kink ? "1" : "0"});
    }
    emit(t, "kernel", cfg);
    return kOk;
}

int cmd_density(const RunConfig& cfg, double step) {
    if (!(step > 0)) throw std::invalid_argument("step must be > 0");
    zk::ArchModel m(zk::ArchParams{cfg.theta, cfg.order, cfg.x_max});
    Table t({"x", "psi0", "psi1N", "psiN", "psi2", "gN"});
    const int n = static_cast<int>(std::floor(cfg.x_max / step + 1e-9));
    for (int i = 0; i <= n; ++i) {
        const double x = i * step;
        t.add({format_double(x), format_double(zk::psi0(cfg.theta, cfg.theta, x)), format_double(m.psi1(x)),
               format_double(m.psi(x).value), format_double(zk::psi2(cfg.theta, cfg.theta, x)), format_double(m.g(x).value)});
    }
    emit(t, "density", cfg);
    return kOk;
}

std::shared_ptr<const zk::CausalKernel> make_kernel(const RunConfig& cfg) {
    if (cfg.synthetic_zero) return std::make_shared<zk::ZeroKernel>();
    return zk::build_kernel(cfg.theta, cfg.order, cfg.x_max);
}

int cmd_hamiltonian(const RunConfig& cfg) {
    auto k = make_kernel(cfg);
    std::vector<zk::real> grid;
    for (int i = 0; i <= cfg.t_steps; ++i) grid.push_back(static_cast<zk::real>(cfg.t_max) * i / cfg.t_steps);
    auto rows = zk::m_of_t(k, grid, cfg.discretization());
    Table t({"t", "m", "h11", "h22", "det_plus", "det_minus", "flag"});
    bool flagged = false;
    for (const auto& r : rows) {
        t.add({fmt(r.t), fmt(r.m), fmt(r.h11), fmt(r.h22), fmt(r.det_plus), fmt(r.det_minus), r.flag ? "1" : "0"});
        flagged = flagged || r.flag;
    }
    emit(t, "hamiltonian", cfg);
    return (cfg.strict && flagged) ? kDegenerate : kOk;
}

int cmd_solve(const RunConfig& cfg, double t) {
    if (!(t >= 0) || t > cfg.x_max / 2) throw std::invalid_argument("t must lie in [0, x_max/2]");
    auto k = make_kernel(cfg);
    zk::FredholmSolver s(zk::discretize(k, t, cfg.discretization()));
    auto Phi = zk::solve_field(s, zk::FieldKind::Phi);
    auto Psi = zk::solve_field(s, zk::FieldKind::Psi);
    auto pp = zk::solve_field(s, zk::FieldKind::phi_plus);
    auto pm = zk::solve_field(s, zk::FieldKind::phi_minus);
    Table tab({"x", "Phi", "Psi", "phi_plus", "phi_minus"});
    for (std::size_t i = 0; i < Phi.nodes.size(); ++i) {
        tab.add({fmt(Phi.nodes[i]), fmt(Phi.values[i]), fmt(Psi.values[i]), fmt(pp.values[i]), fmt(pm.values[i])});
    }
    tab.add({format_double(t), fmt(Phi.boundary), fmt(Psi.boundary), fmt(pp.boundary), fmt(pm.boundary)});
    emit(tab, "solve", cfg);
    const auto row = zk::hamiltonian_row(s);
    return (cfg.strict && row.flag) ? kDegenerate : kOk;
}

int cmd_coeffs(const RunConfig& cfg) {
    auto dump = [](const std::vector<zk::RationalPoly>& polys) {
        auto arr = nlohmann::ordered_json::array();
        for (std::size_t n = 0; n < polys.size(); ++n) {
            nlohmann::ordered_json e;
            e["n"] = n + 1;
            auto poly = nlohmann::ordered_json::array();
            for (const auto& c : polys[n].coeffs()) {
                poly.push_back({boost::multiprecision::numerator(c).str(), boost::multiprecision::denominator(c).str()});
            }
            e["poly"] = poly;
            e["text"] = polys[n].to_string();
            arr.push_back(e);
        }
        return arr;
    };
    nlohmann::ordered_json j;
    j["order"] = cfg.order;
    j["variable"] = "t stands for theta; poly[k] = [numerator, denominator] of the theta^k coefficient";
    j["c_tilde"] = dump(zk::derive_c_tilde(cfg.order));
    j["a"] = dump(zk::derive_a(cfg.order));
    j["config"] = zk::to_json(cfg);
    j["versions"] = zk::versions_json();
    emit_json(j, cfg);
    return kOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    bool pass = true;
    bool degenerate = false;
    if (suite == "transform" || suite == "all") {
        auto rows = zk::run_transform_suite(cfg.theta, cfg.sigma_grid, cfg);
        pass = pass && zk::all_pass(rows);
        out.push_back(zk::suite_json("transform", cfg.theta, rows, cfg));
    }
    if (suite == "theorem1" || suite == "all") {
        auto rows = zk::run_theorem1_suite(make_kernel(cfg), cfg.theta, cfg.t_grid, cfg);
        pass = pass && zk::all_pass(rows);
        out.push_back(zk::suite_json("theorem1", cfg.theta, rows, cfg));
    }
    if (suite == "kproperties" || suite == "all") {
        auto r = zk::run_k_properties(cfg.theta, cfg);
        pass = pass && r.pass;
        degenerate = r.first_near_zero.has_value();
        out.push_back(zk::suite_json(r, cfg));
    }
    emit_json(out.size() == 1 ? out[0] : out, cfg);
    if (!pass) return kIdentityFailure;
    if (cfg.strict && degenerate) return kDegenerate;
    return kOk;
}

CLI::Option* add_run_options(CLI::App& app, RunConfig& c) {
    app.add_option("--theta", c.theta, "theta > 1")->capture_default_str();
    app.add_option("--order", c.order, "expansion order N")->capture_default_str();
    app.add_option("--x_max", c.x_max, "kernel range")->capture_default_str();
    auto* t_max_opt = app.add_option("--t_max", c.t_max, "largest t of a sweep (default min(2, x_max/2))")->capture_default_str();
    app.add_option("--t_steps", c.t_steps, "number of sweep steps")->capture_default_str();
    app.add_option("--panels_per_unit", c.panels_per_unit)->capture_default_str();
    app.add_option("--nodes_per_panel", c.nodes_per_panel)->capture_default_str();
    app.add_option("--sigma_grid", c.sigma_grid)->delimiter(',')->capture_default_str();
    app.add_option("--t_grid", c.t_grid)->delimiter(',')->capture_default_str();
    app.add_option("--format", c.format, "csv or json")->capture_default_str();
    app.add_option("--output,-o", c.output, "output file, - for stdout")->capture_default_str();
    app.add_option("--fd_step", c.fd_step)->capture_default_str();
    app.add_flag("--richardson", c.richardson);
    app.add_option("--tol_psi", c.tol_psi)->capture_default_str();
    app.add_option("--tol_transform", c.tol_transform)->capture_default_str();
    app.add_option("--tol_chain", c.tol_chain)->capture_default_str();
    app.add_option("--tol_fd", c.tol_fd)->capture_default_str();
    app.add_option("--tol_exp_integral", c.tol_exp_integral)->capture_default_str();
    app.add_option("--tol_interp", c.tol_interp)->capture_default_str();
    app.add_option("--tol_nodal", c.tol_nodal)->capture_default_str();
    app.add_option("--kiv_x", c.kiv_x)->capture_default_str();
    app.add_option("--sweep_nodes_per_panel", c.sweep_nodes_per_panel)->capture_default_str();
    app.add_option("--grading_levels", c.grading_levels, "panel halvings toward cuts, -1 = automatic")->capture_default_str();
    app.add_flag("--strict", c.strict, "exit 3 on a determinant near-zero or sign change");
    app.add_flag("--synthetic_zero", c.synthetic_zero, "replace K by the zero kernel");
    return t_max_opt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zk: kernel, Fredholm determinant and identity checks"};
    app.set_config("--config", "", "key=value file supplying defaults; flags override");
    app.fallthrough();
    app.require_subcommand(1);
    RunConfig cfg;
    auto* t_max_opt = add_run_options(app, cfg);

    std::int64_t n_max = 100;
    double step = 1.0 / 64;
    double t_solve = 1;
    std::string suite = "all";

    auto* lam = app.add_subcommand("lambda", "lambda_theta(n) table");
    lam->add_option("--n_max", n_max)->capture_default_str();
    auto* ker = app.add_subcommand("kernel", "K_theta samples with one-sided derivatives at log n");
    ker->add_option("--step", step)->capture_default_str();
    auto* den = app.add_subcommand("density", "archimedean densities");
    den->add_option("--step", step)->capture_default_str();
    auto* ham = app.add_subcommand("hamiltonian", "m(t) and H(t) on [0, t_max]");
    auto* sol = app.add_subcommand("solve", "nodal solutions at one t");
    sol->add_option("--t", t_solve)->capture_default_str();
    auto* ver = app.add_subcommand("verify", "verification suites");
    ver->add_option("--suite", suite)->check(CLI::IsMember({"transform", "theorem1", "kproperties", "all"}))->capture_default_str();
    auto* coe = app.add_subcommand("coeffs", "exact coefficient polynomials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    if (t_max_opt->count() == 0) cfg.t_max = std::min(cfg.t_max, cfg.x_max / 2);
    if (app.get_option("--t_grid")->count() == 0) {
        std::erase_if(cfg.t_grid, [&](double t) { return t > cfg.x_max / 2; });
    }
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        if (lam->parsed()) return cmd_lambda(cfg, n_max);
        if (ker->parsed()) return cmd_kernel(cfg, step);
        if (den->parsed()) return cmd_density(cfg, step);
        if (ham->parsed()) return cmd_hamiltonian(cfg);
        if (sol->parsed()) return cmd_solve(cfg, t_solve);
        if (ver->parsed()) return cmd_verify(cfg, suite);
        if (coe->parsed()) return cmd_coeffs(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::out_of_range& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIdentityFailure;
    }
    return kOk;
}
