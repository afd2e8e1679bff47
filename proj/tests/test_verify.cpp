#include <cmath>

#include <gtest/gtest.h>

#include "zk/verify.hpp"

namespace {

zk::RunConfig small_config() {
    zk::RunConfig c;
    c.x_max = 4;
    c.t_max = 0.5;
    c.t_steps = 4;
    c.panels_per_unit = 4;
    c.nodes_per_panel = 12;
    c.sweep_nodes_per_panel = 10;
    c.kiv_x = 2;
    return c;
}

}  // namespace

TEST(Verify, TransformSuiteRowsAtLargeSigma) {
    auto cfg = small_config();
    cfg.x_max = 8;
    auto rows = zk::run_transform_suite(2.0, {6.0}, cfg);
    ASSERT_EQ(rows.size(), 8u);
    std::vector<std::string> names;
    for (const auto& r : rows) {
        names.push_back(r.name);
        EXPECT_TRUE(r.pass) << r.name << " " << r.rel_err;
    }
    EXPECT_EQ(names, (std::vector<std::string>{"psi0", "psi1N", "psiN", "psiN_sum", "psi2", "gN", "gN_sum", "K"}));
    EXPECT_EQ(zk::transform_sigmas({2, 3}), (std::vector<double>{2, 3, 6}));
    EXPECT_THROW(zk::run_transform_suite(2.0, {1.5}, cfg), zk::domain_error);
}

TEST(Verify, ZeroKernelIdentitiesAreExact) {
    auto cfg = small_config();
    auto z = std::make_shared<zk::ZeroKernel>();
    auto rows = zk::run_theorem1_suite(z, 2.0, {0, 0.25, 0.5}, cfg);
    ASSERT_FALSE(rows.empty());
    for (const auto& r : rows) {
        EXPECT_EQ(r.residual, 0.0) << r.name << " t=" << r.t;
        EXPECT_TRUE(r.pass) << r.name;
    }
}

TEST(Verify, ExponentialKernelIdentities) {
    auto cfg = small_config();
    cfg.panels_per_unit = 8;
    cfg.nodes_per_panel = 16;
    auto k = std::make_shared<zk::ExpKernel>(0.5L);
    auto rows = zk::run_theorem1_suite(k, 0, {0.5}, cfg);
    for (const auto& r : rows) {
        if (r.name == "m_chain_Phi" || r.name == "m_chain_Psi" || r.name == "exp_integral") {
            EXPECT_LT(r.residual, 1e-9) << r.name;
        }
        if (r.name.rfind("phi_", 0) == 0 || r.name == "boundary_derivative") {
            EXPECT_LT(r.residual, 1e-4) << r.name;
        }
    }
}

TEST(Verify, RichardsonRemovesTheLeadingDifferenceError) {
    auto cfg = small_config();
    cfg.panels_per_unit = 8;
    cfg.nodes_per_panel = 16;
    auto k = std::make_shared<zk::ExpKernel>(0.5L);
    auto plain = zk::run_theorem1_suite(k, 0, {0.5}, cfg);
    cfg.richardson = true;
    auto rich = zk::run_theorem1_suite(k, 0, {0.5}, cfg);
    for (std::size_t i = 0; i < plain.size(); ++i) {
        if (plain[i].name == "phi_plus_dt_Phi") {
            EXPECT_LT(rich[i].residual, plain[i].residual);
        }
    }
}

TEST(Verify, ChainSuiteAtZero) {
    auto cfg = small_config();
    auto k = zk::build_kernel(2.0, 14, 4.0);
    auto rows = zk::run_theorem1_suite(k, 2.0, {0}, cfg);
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& r : rows) EXPECT_EQ(r.residual, 0.0) << r.name;
}

TEST(Verify, TotalVariationOfExponential) {
    zk::ExpKernel e(2.0L);
    auto v = zk::total_variation(e, 0, 3, 1);
    EXPECT_NEAR(v.quad, 2 * (1 - std::exp(-3.0)), 1e-12);
    EXPECT_NEAR(v.exact, 2 * (1 - std::exp(-3.0)), 1e-12);
}

TEST(Verify, DerivativeSignChangesFindExtrema) {
    auto k = zk::build_kernel(2.0, 14, 4.0);
    auto roots = zk::derivative_sign_changes(*k, 1e-3L, std::log(2.0L));
    for (zk::real r : roots) EXPECT_NEAR(static_cast<double>(k->derivative(r)), 0.0, 1e-8);
}

TEST(Verify, KPropertiesSmallConfig) {
    auto cfg = small_config();
    auto r = zk::run_k_properties(2.0, cfg);
    EXPECT_TRUE(r.support_exact);
    EXPECT_TRUE(r.growth_finite);
    EXPECT_GT(r.growth_constant, 0);
    EXPECT_TRUE(r.variation_stable) << r.variation_change;
    EXPECT_NEAR(r.variation, r.variation_exact, 1e-9 * r.variation);
    ASSERT_EQ(r.sweep.size(), 4u);
    EXPECT_EQ(r.sweep[1].t, 0.25);
    EXPECT_TRUE(r.sweep_produced);
    EXPECT_TRUE(r.pass);
    EXPECT_FALSE(r.first_near_zero.has_value());

    auto j = zk::suite_json(r, cfg);
    EXPECT_EQ(j["suite"], "kproperties");
    EXPECT_TRUE(j.contains("config"));
    EXPECT_TRUE(j.contains("versions"));
    const auto& row = j["rows"][0];
    for (const char* key : {"support", "growth", "derivative_integrability", "determinant_sweep", "first_near_zero_t"}) {
        EXPECT_TRUE(row.contains(key)) << key;
    }
}

TEST(Verify, SuiteJsonCarriesRowsAndVerdict) {
    auto cfg = small_config();
    std::vector<zk::IdentityReport> rows{zk::make_identity("a", 0.5, 2, 1e-9, 1e-6),
                                         zk::make_identity("b", 0.5, 2, std::numeric_limits<double>::infinity(), 1e-6, "pole")};
    auto j = zk::suite_json("theorem1", 2.0, rows, cfg);
    EXPECT_EQ(j["rows"].size(), 2u);
    EXPECT_FALSE(j["pass"].get<bool>());
    EXPECT_EQ(j["rows"][1]["residual"], "inf");
    EXPECT_EQ(j["rows"][1]["note"], "pole");
    EXPECT_FALSE(zk::all_pass(rows));
}
