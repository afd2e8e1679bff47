#include <cmath>
#include <numeric>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <gtest/gtest.h>

#include "zk/arith.hpp"

namespace {

// Returns (p, k) if n = p^k, else (0, 0), by trial division.
std::pair<std::int64_t, int> trial_prime_power(std::int64_t n) {
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        return n == 1 ? std::pair{p, k} : std::pair<std::int64_t, int>{0, 0};
    }
    return n >= 2 ? std::pair<std::int64_t, int>{n, 1} : std::pair<std::int64_t, int>{0, 0};
}

}  // namespace

TEST(Arith, SieveMatchesTrialDivision) {
    auto mt = zk::sieve_mangoldt(5000);
    for (std::int64_t n = 1; n <= 5000; ++n) {
        auto [p, k] = trial_prime_power(n);
        EXPECT_EQ(mt.prime(n), static_cast<std::uint32_t>(p)) << n;
        EXPECT_EQ(mt.exponent(n), k) << n;
        EXPECT_DOUBLE_EQ(mt(n), p ? std::log(double(p)) : 0.0) << n;
    }
}

TEST(Arith, SieveLimits) {
    EXPECT_THROW(zk::sieve_mangoldt(0), std::invalid_argument);
    EXPECT_THROW(zk::sieve_mangoldt(zk::kSieveMax + 1), std::out_of_range);
}

TEST(Arith, LambdaAtPrimes) {
    for (double theta : {1.5, 2.0, 3.0}) {
        auto lam = zk::lambda_table(theta, 200);
        EXPECT_DOUBLE_EQ(lam(1), 1.0);
        for (int p : {2, 3, 5, 7, 101, 199}) EXPECT_NEAR(lam(p), 2 * theta * std::log(double(p)), 1e-14 * lam(p)) << p;
    }
    EXPECT_NEAR(zk::lambda_table(2.0, 4)(2), 4 * std::log(2.0), 1e-15);
}

TEST(Arith, LambdaAtPrimePowersClosedForm) {
    // exp(c x/(1-x)) has x^k coefficient sum_j C(k-1, j-1) c^j / j!.
    for (double theta : {1.5, 2.0, 3.0}) {
        auto lam = zk::lambda_table(theta, 400000);
        for (int p : {2, 3, 5, 7, 11, 13}) {
            const double c = 2 * theta * std::log(double(p));
            std::int64_t q = p;
            for (int k = 1; k <= 5; ++k, q *= p) {
                double ref = 0;
                for (int j = 1; j <= k; ++j) {
                    ref += boost::math::binomial_coefficient<double>(k - 1, j - 1) * std::pow(c, j) / boost::math::factorial<double>(j);
                }
                EXPECT_NEAR(lam(q) / ref, 1.0, 1e-13) << p << "^" << k;
            }
        }
    }
}

TEST(Arith, LambdaIsMultiplicative) {
    auto lam = zk::lambda_table(2.5, 2000);
    for (std::int64_t a = 1; a <= 2000; ++a) {
        for (std::int64_t b = 1; a * b <= 2000; ++b) {
            if (std::gcd(a, b) != 1) continue;
            EXPECT_NEAR(lam(a * b), lam(a) * lam(b), 1e-12 * std::abs(lam(a * b))) << a << " " << b;
        }
    }
}

TEST(Arith, LambdaMatchesDivisorRecursion) {
    for (double theta : {1.5, 3.0}) {
        auto lam = zk::lambda_table(theta, 3000);
        auto f = zk::lambda_by_divisor_recursion(theta, 3000);
        for (std::int64_t n = 1; n <= 3000; ++n) {
            EXPECT_NEAR(static_cast<double>(f[static_cast<std::size_t>(n)]) / lam(n), 1.0, 1e-13) << n;
        }
    }
}

TEST(Arith, EulerMaclaurinZetaAgainstBoost) {
    for (double s : {1.1, 1.5, 2.0, 3.0, 4.5, 8.0}) {
        auto z = zk::zeta_euler_maclaurin(s);
        EXPECT_NEAR(static_cast<double>(z.zeta) / boost::math::zeta(s), 1.0, 1e-15) << s;
        const double h = 1e-5;
        double fd = (boost::math::zeta(s + h) - boost::math::zeta(s - h)) / (2 * h);
        EXPECT_NEAR(static_cast<double>(z.dzeta) / fd, 1.0, 1e-7) << s;
    }
    EXPECT_NEAR(static_cast<double>(zk::zeta_euler_maclaurin(2.0L).zeta), M_PI * M_PI / 6, 1e-16);
    EXPECT_THROW(zk::zeta_euler_maclaurin(1.0L), zk::domain_error);
}

TEST(Arith, ZetaLogDerivTwoRoutesAgree) {
    for (double s : {3.0, 4.0, 6.0}) {
        auto n_max = zk::zeta_log_deriv_cutoff(s, 1e-10);
        ASSERT_GT(n_max, 0);
        auto direct = zk::zeta_log_deriv(s, n_max, 1e-10);
        auto precise = zk::zeta_log_deriv_precise(s);
        EXPECT_NEAR(direct.value, precise.value, direct.tail_bound + precise.tail_bound + 1e-14) << s;
        EXPECT_LE(precise.tail_bound, 1e-14);
    }
    EXPECT_THROW(zk::zeta_log_deriv(1.1, 100), zk::domain_error);
    EXPECT_THROW(zk::zeta_log_deriv(2.0, 10, 1e-12), zk::domain_error);
}

TEST(Arith, DirichletSumMatchesEulerProductWithinTail) {
    for (double theta : {1.5, 2.0, 3.0}) {
        auto lam = zk::lambda_table(theta, 200000);
        for (double sigma : {3.0, 4.0, 6.0}) {
            auto s = zk::lambda_dirichlet_sum(lam, sigma);
            double exact = std::exp(-2 * theta * zk::zeta_log_deriv_precise(sigma).value);
            EXPECT_LE(exact - s.value, s.tail_bound * (1 + 1e-12) + 1e-13 * exact) << theta << " " << sigma;
            EXPECT_GE(exact - s.value, -1e-13 * exact) << theta << " " << sigma;
        }
    }
}
