#ifndef ZK_ARITH_HPP
#define ZK_ARITH_HPP

// Von Mangoldt sieve, the multiplicative coefficients lambda_theta(n) of
// exp(-2 theta zeta'/zeta(s)), and zeta'/zeta on the real axis.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "specfun.hpp"

namespace zk {

inline constexpr std::int64_t kSieveMax = 10'000'000;

/// Lambda(n) for 1 <= n <= n_max, stored as prime-power tags.
class MangoldtTable {
public:
    explicit MangoldtTable(std::int64_t n_max) : n_max_(n_max) {
        if (n_max < 1) throw std::invalid_argument("sieve_mangoldt: n_max must be >= 1");
        if (n_max > kSieveMax) throw std::out_of_range("sieve_mangoldt: n_max exceeds 1e7");
        const auto n = static_cast<std::size_t>(n_max);
        spf_.assign(n + 1, 0);
        prime_.assign(n + 1, 0);
        exponent_.assign(n + 1, 0);
        for (std::size_t i = 2; i <= n; ++i) {
            if (spf_[i] != 0) continue;
            spf_[i] = static_cast<std::uint32_t>(i);
            for (std::size_t j = i * i; j <= n; j += i) {
                if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
            }
        }
        for (std::size_t i = 2; i <= n; ++i) {
            std::uint32_t p = spf_[i];
            std::size_t m = i;
            int k = 0;
            while (m % p == 0) {
                m /= p;
                ++k;
            }
            if (m == 1) {
                prime_[i] = p;
                exponent_[i] = static_cast<std::uint8_t>(k);
            }
        }
    }

    std::int64_t n_max() const { return n_max_; }
    /// Smallest prime factor of n (0 for n = 1).
    std::uint32_t spf(std::int64_t n) const { return spf_.at(static_cast<std::size_t>(n)); }
    /// p if n = p^k, else 0.
    std::uint32_t prime(std::int64_t n) const { return prime_.at(static_cast<std::size_t>(n)); }
    /// k if n = p^k, else 0.
    int exponent(std::int64_t n) const { return exponent_.at(static_cast<std::size_t>(n)); }
    bool is_prime_power(std::int64_t n) const { return prime(n) != 0; }
    double operator()(std::int64_t n) const {
        std::uint32_t p = prime(n);
        return p ? std::log(static_cast<double>(p)) : 0.0;
    }

private:
    std::int64_t n_max_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> prime_;
    std::vector<std::uint8_t> exponent_;
};

inline MangoldtTable sieve_mangoldt(std::int64_t n_max) { return MangoldtTable(n_max); }

/// Coefficients of x^0..x^k in exp(c x / (1 - x)).
template <class T>
std::vector<T> local_factor_coeffs(T c, int k) {
    std::vector<T> e(static_cast<std::size_t>(k) + 1, T(0));
    e[0] = 1;
    for (int n = 1; n <= k; ++n) {
        T acc = 0;
        for (int j = 1; j <= n; ++j) acc += T(j) * e[static_cast<std::size_t>(n - j)];
        e[static_cast<std::size_t>(n)] = c * acc / T(n);
    }
    return e;
}

/// lambda_theta(n), n = 1..n_max.
class LambdaTable {
public:
    LambdaTable(double theta, std::int64_t n_max) : theta_(theta), n_max_(n_max) {
        if (!(theta > 0) || !std::isfinite(theta)) throw std::invalid_argument("lambda_table: theta must be > 0");
        MangoldtTable mt(n_max);
        const auto n = static_cast<std::size_t>(n_max);
        values_.assign(n + 1, 0.0L);
        values_[1] = 1;
        // Prime powers first, by the local-factor recursion.
        for (std::size_t p = 2; p <= n; ++p) {
            if (mt.spf(static_cast<std::int64_t>(p)) != p) continue;
            int kmax = 0;
            for (std::size_t q = p; q <= n; q *= p) {
                ++kmax;
                if (q > n / p) break;
            }
            const long double c = 2.0L * theta * std::log(static_cast<long double>(p));
            auto e = local_factor_coeffs<long double>(c, kmax);
            std::size_t q = p;
            for (int k = 1; k <= kmax; ++k, q *= p) values_[q] = e[static_cast<std::size_t>(k)];
        }
        // Then spread multiplicatively: n = p^k * m with gcd(p, m) = 1.
        for (std::size_t i = 2; i <= n; ++i) {
            if (mt.is_prime_power(static_cast<std::int64_t>(i))) continue;
            std::size_t p = mt.spf(static_cast<std::int64_t>(i));
            std::size_t q = 1;
            std::size_t m = i;
            while (m % p == 0) {
                m /= p;
                q *= p;
            }
            values_[i] = values_[q] * values_[m];
        }
    }

    double theta() const { return theta_; }
    std::int64_t n_max() const { return n_max_; }
    double operator()(std::int64_t n) const { return static_cast<double>(values_.at(static_cast<std::size_t>(n))); }
    long double value_ld(std::int64_t n) const { return values_.at(static_cast<std::size_t>(n)); }

private:
    double theta_;
    std::int64_t n_max_;
    std::vector<long double> values_;
};

inline LambdaTable lambda_table(double theta, std::int64_t n_max) { return LambdaTable(theta, n_max); }

/// Generic divisor recursion f(n) log n = sum_{d | n, d > 1} 2 theta Lambda(d) log d f(n/d),
/// used as an independent check of LambdaTable for small n.
inline std::vector<long double> lambda_by_divisor_recursion(double theta, std::int64_t n_max) {
    MangoldtTable mt(n_max);
    const auto n = static_cast<std::size_t>(n_max);
    std::vector<long double> f(n + 1, 0.0L);
    f[1] = 1;
    std::vector<long double> acc(n + 1, 0.0L);
    for (std::size_t m = 1; m <= n; ++m) {
        if (m >= 2) f[m] = acc[m] / std::log(static_cast<long double>(m));
        // Push f(m) forward to all multiples m*d with d a prime power.
        for (std::size_t d = 2; d * m <= n; ++d) {
            std::uint32_t p = mt.prime(static_cast<std::int64_t>(d));
            if (!p) continue;
            long double lp = std::log(static_cast<long double>(p));
            acc[d * m] += 2.0L * theta * lp * std::log(static_cast<long double>(d)) * f[m];
        }
    }
    return f;
}

/// Value of a truncated Dirichlet sum with a rigorous bound on the omitted tail.
struct BoundedSum {
    double value = 0;
    double tail_bound = 0;
};

/// Bound on sum_{n > N} log(n) n^{-sigma} by the integral from N.
inline double log_power_tail(double N, double sigma) {
    const double a = sigma - 1;
    return std::pow(N, -a) * (std::log(N) / a + 1.0 / (a * a));
}

/// zeta'/zeta(sigma) = -sum Lambda(n) n^{-sigma}, truncated at n_max. Throws if
/// the certified tail exceeds tol.
inline BoundedSum zeta_log_deriv(double sigma, std::int64_t n_max, double tol = 1e-12) {
    if (!(sigma >= 1.25)) throw domain_error("zeta_log_deriv: sigma must be >= 1.25");
    const double tail = log_power_tail(static_cast<double>(n_max), sigma);
    if (tail > tol) throw domain_error("zeta_log_deriv: tail bound not achievable within n_max");
    MangoldtTable mt(n_max);
    long double s = 0;
    for (std::int64_t n = n_max; n >= 2; --n) {
        std::uint32_t p = mt.prime(n);
        if (p) s += std::log(static_cast<long double>(p)) * std::pow(static_cast<long double>(n), -static_cast<long double>(sigma));
    }
    return {static_cast<double>(-s), tail};
}

/// Smallest n_max (capped at 1e7) with certified tail <= tol, or -1.
inline std::int64_t zeta_log_deriv_cutoff(double sigma, double tol) {
    std::int64_t n = 16;
    while (n <= kSieveMax) {
        if (log_power_tail(static_cast<double>(n), sigma) <= tol) return n;
        n *= 2;
    }
    return log_power_tail(static_cast<double>(kSieveMax), sigma) <= tol ? kSieveMax : -1;
}

/// zeta(sigma) and zeta'(sigma) for real sigma > 1 by Euler-Maclaurin summation
/// with cutoff M and K Bernoulli corrections. err bounds the first omitted term.
struct ZetaPair {
    long double zeta = 0;
    long double dzeta = 0;
    long double err = 0;
};

inline ZetaPair zeta_euler_maclaurin(long double s, int M = 24, int K = 12) {
    if (!(s > 1)) throw domain_error("zeta_euler_maclaurin: sigma must be > 1");
    ZetaPair r;
    for (int n = M - 1; n >= 1; --n) {
        long double ln = std::log(static_cast<long double>(n));
        long double t = std::exp(-s * ln);
        r.zeta += t;
        r.dzeta -= ln * t;
    }
    const long double N = M;
    const long double lN = std::log(N);
    const long double NsN = std::exp(-s * lN);  // N^{-s}
    r.zeta += N * NsN / (s - 1) + NsN / 2;
    r.dzeta += -lN * N * NsN / (s - 1) - N * NsN / ((s - 1) * (s - 1)) - lN * NsN / 2;
    // T_k = B_{2k}/(2k)! * P_k(s) * N^{-s-2k+1}, P_k(s) = s (s+1) ... (s+2k-2).
    long double P = s;
    long double dP = 1;
    long double fact = 2;  // (2k)!
    long double Npow = NsN / N;  // N^{-s-1}
    long double last = 0;
    for (int k = 1; k <= K + 1; ++k) {
        long double b = specfun::bernoulli_even(k).convert_to<long double>();
        long double coef = b / fact;
        long double term = coef * P * Npow;
        long double dterm = coef * (dP * Npow - lN * P * Npow);
        if (k == K + 1) {
            last = std::abs(term) + std::abs(dterm);
            break;
        }
        r.zeta += term;
        r.dzeta += dterm;
        // advance P_k -> P_{k+1} = P_k (s+2k-1)(s+2k)
        long double a1 = s + 2 * k - 1;
        long double a2 = s + 2 * k;
        dP = dP * a1 * a2 + P * (a1 + a2);
        P = P * a1 * a2;
        fact *= static_cast<long double>((2 * k + 1) * (2 * k + 2));
        Npow /= N * N;
    }
    r.err = last;
    return r;
}

/// zeta'/zeta(sigma) to near working precision via Euler-Maclaurin.
inline BoundedSum zeta_log_deriv_precise(double sigma) {
    ZetaPair z = zeta_euler_maclaurin(static_cast<long double>(sigma));
    long double v = z.dzeta / z.zeta;
    long double err = z.err * (1 + std::abs(v)) / z.zeta + 4 * std::numeric_limits<double>::epsilon() * std::abs(v);
    return {static_cast<double>(v), static_cast<double>(err)};
}

/// Rankin-type bound on sum_{n > N} lambda_theta(n) n^{-sigma}: for any
/// 1 < s' < sigma it is at most N^{s'-sigma} exp(-2 theta zeta'/zeta(s')).
inline double dirichlet_lambda_tail(double theta, double sigma, double N) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 200; ++i) {
        double sp = 1 + (sigma - 1) * i / 200.0;
        if (sp < 1.05) continue;
        double zl = zeta_log_deriv_precise(sp).value;
        double b = std::exp((sp - sigma) * std::log(N) - 2 * theta * zl);
        if (b < best) best = b;
    }
    return best;
}

/// sum_{n <= n_max} lambda_theta(n) n^{-sigma} with the Rankin tail bound.
inline BoundedSum lambda_dirichlet_sum(const LambdaTable& lam, double sigma) {
    long double s = 0;
    for (std::int64_t n = lam.n_max(); n >= 1; --n) {
        s += lam.value_ld(n) * std::pow(static_cast<long double>(n), -static_cast<long double>(sigma));
    }
    return {static_cast<double>(s), dirichlet_lambda_tail(lam.theta(), sigma, static_cast<double>(lam.n_max()))};
}

}  // namespace zk

#endif  // ZK_ARITH_HPP
