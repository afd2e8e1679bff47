#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <gtest/gtest.h>

#include "zk/archimedean.hpp"

namespace {

zk::ArchModel model(double theta, int order = 14) { return zk::ArchModel(zk::ArchParams{theta, order, 6.0}); }

}  // namespace

TEST(Archimedean, Psi0SeriesMatchesBesselForm) {
    for (double theta : {1.5, 2.0, 3.0, 7.5}) {
        for (double x = 0.05; x < 30; x *= 1.4) {
            double a = zk::psi0(theta, theta, x);
            double ref = std::exp(-x / 2) * std::pow(x / theta, (theta - 1) / 2) *
                         boost::math::cyl_bessel_i(theta - 1, 2 * std::sqrt(theta * x));
            EXPECT_NEAR(a / ref, 1.0, 1e-12) << theta << " " << x;
            EXPECT_NEAR(a / zk::psi0_bessel(theta, theta, x), 1.0, 1e-12) << theta << " " << x;
        }
    }
    EXPECT_EQ(zk::psi0(2.0, 2.0, -1.0), 0.0);
    EXPECT_EQ(zk::psi0(2.0, 2.0, 0.0), 0.0);
    EXPECT_EQ(zk::psi0(1.0, 2.0, 0.0), 1.0);
    EXPECT_THROW(zk::psi0(0.0, 1.0, 1.0), zk::domain_error);
}

TEST(Archimedean, Psi2IsScaledPsi0) {
    for (double x : {0.1, 1.0, 4.0}) {
        EXPECT_NEAR(zk::psi2(2.0, 2.0, x), 2 * std::exp(-1.5 * x) * zk::psi0(2.0, 2.0, 2 * x), 1e-16);
    }
    EXPECT_EQ(zk::psi2(2.0, 2.0, -0.1), 0.0);
}

TEST(Archimedean, MergedSumsMatchTermByTerm) {
    for (double theta : {1.5, 2.0, 3.0}) {
        auto m = model(theta);
        for (double x = 0.01; x < 12; x *= 1.5) {
            auto d = m.psi(x);
            EXPECT_NEAR(m.psi_fast(x), d.value, 1e-13 * (1 + std::abs(d.value))) << theta << " " << x;
            EXPECT_DOUBLE_EQ(d.value, d.leading + d.correction);
            auto g = m.g(x);
            EXPECT_NEAR(m.g_fast(x), g.value, 1e-12 * (1 + std::abs(g.value))) << theta << " " << x;
        }
        EXPECT_EQ(m.psi_fast(-1), 0.0);
        EXPECT_EQ(m.g_fast(-1), 0.0);
    }
}

TEST(Archimedean, PsiEqualsConvolutionRoute) {
    for (double theta : {1.5, 2.0, 3.0}) {
        auto m = model(theta);
        for (double x : {0.1, 0.5, 1.0, 2.5, 5.0}) {
            EXPECT_NEAR(m.psi_fast(x), m.psi_convolution(x), 1e-11 * (1 + std::abs(m.psi_fast(x)))) << theta << " " << x;
        }
    }
}

TEST(Archimedean, GAgreesWithBesselConvolutionFormula) {
    // Both routes truncate at order N; they agree closely near x = 0 and the
    // gap at larger x shrinks as N grows.
    auto gap = [](const zk::ArchModel& m, double x) {
        const double b = m.g_exact_formula(x, 96);
        return std::abs(m.g_fast(x) - b) / (1 + std::abs(b));
    };
    for (double theta : {1.5, 2.0, 3.0}) {
        auto m20 = model(theta, 20);
        for (double x : {0.1, 0.5, 1.0}) EXPECT_LT(gap(m20, x), 1e-10) << theta << " " << x;
        double prev = 1e300;
        for (int N : {10, 14, 20, 30}) {
            double g = gap(model(theta, N), 2.0);
            EXPECT_LT(g, prev) << theta << " " << N;
            prev = g;
        }
    }
}

TEST(Archimedean, Psi1ClosedFormTransformByQuadrature) {
    auto m = model(2.0);
    boost::math::quadrature::tanh_sinh<double> ts;
    const double sigma = 4;
    double lhs = ts.integrate([&](double x) { return m.psi1(x) * std::exp(-(sigma - 0.5) * x); }, 0.0, 200.0);
    double rhs = 0;
    for (int n = 1; n < 14; ++n) rhs += m.c_tilde()[static_cast<std::size_t>(n)] * std::pow(sigma, -n);
    EXPECT_NEAR(lhs / rhs, 1.0, 1e-12);
}

TEST(Archimedean, LaplaceChecksOfExactPieces) {
    for (double theta : {1.5, 2.0, 3.0}) {
        for (double sigma : {2.0, 3.0, 4.0}) {
            auto r0 = zk::laplace_check_psi0(theta, theta, sigma);
            EXPECT_TRUE(r0.pass) << theta << " " << sigma << " " << r0.rel_err;
            EXPECT_LT(r0.rel_err, 1e-8);
            auto r2 = zk::laplace_check_psi2(theta, theta, sigma);
            EXPECT_TRUE(r2.pass) << theta << " " << sigma << " " << r2.rel_err;
        }
    }
}

TEST(Archimedean, LaplaceChecksOfApproximations) {
    for (double theta : {1.5, 2.0, 3.0}) {
        auto m = model(theta);
        auto r1 = zk::laplace_check_psi1(m, 4.0);
        EXPECT_LT(r1.rel_err, 1e-7) << theta;
        auto r = zk::laplace_check_psi(m, 3.0);
        EXPECT_LT(r.rel_err, 1e-7) << theta;
        auto g = zk::laplace_check_g(m, 6.0);
        EXPECT_LT(g.rel_err, 1e-6) << theta;
        EXPECT_NEAR(m.psi_transform_exact(5.0) / zk::psi_transform_target(theta, 5.0), 1.0, 1e-9);
    }
}

TEST(Archimedean, TargetsAgainstBoostDigamma) {
    for (double s : {2.0, 3.5}) {
        EXPECT_NEAR(zk::psi_transform_target(2.0, s), std::exp(-2 * boost::math::digamma(s)), 1e-14);
        double gl = 1 / s + 1 / (s - 1) - std::log(M_PI) / 2 + boost::math::digamma(s / 2) / 2;
        EXPECT_NEAR(zk::gamma_factor_log_deriv(s), gl, 1e-14);
    }
}

TEST(Archimedean, OrderTwoUsesOnlyLeadingCorrection) {
    auto m = model(2.0, 2);
    ASSERT_EQ(m.c_tilde().size(), 2u);
    EXPECT_DOUBLE_EQ(m.c_tilde()[1], -1.0);
    EXPECT_DOUBLE_EQ(m.a()[1], -3.0);
    double x = 0.7;
    EXPECT_NEAR(m.psi1(x), -std::exp(-x / 2), 1e-16);
}

TEST(Archimedean, ParameterValidation) {
    EXPECT_THROW(zk::ArchModel(zk::ArchParams{1.0, 14, 6}), std::invalid_argument);
    EXPECT_THROW(zk::ArchModel(zk::ArchParams{2.0, 1, 6}), std::invalid_argument);
    EXPECT_THROW(zk::ArchModel(zk::ArchParams{2.0, 61, 6}), std::invalid_argument);
    EXPECT_THROW(zk::ArchModel(zk::ArchParams{2.0, 14, 0}), std::invalid_argument);
}

TEST(Archimedean, Psi0EventuallyDecays) {
    // Psi0_{theta,theta}(x) ~ e^{-x/2 + 2 sqrt(theta x)}, below e^{-0.4x} once x > 400 theta.
    double onset = zk::psi0_decay_onset(1.5, 1000);
    EXPECT_GT(onset, 0);
    EXPECT_LT(onset, 1000);
    for (double x = onset; x <= 1000; x += 50) EXPECT_LE(zk::psi0(1.5, 1.5, x), std::exp(-0.4 * x)) << x;
}
