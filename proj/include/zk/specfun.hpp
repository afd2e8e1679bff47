#ifndef ZK_SPECFUN_HPP
#define ZK_SPECFUN_HPP

// Real-argument special functions: Gamma, digamma, modified Bessel I_nu,
// Bessel J_0 / J_1 and exact Bernoulli numbers.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace zk {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace specfun {

/// Largest Bernoulli index kept in the cached table (B_0 .. B_60).
inline constexpr int kBernoulliMax = 60;

/// Exact Bernoulli numbers B_0..B_60 (B_1 = -1/2 convention), built once from
/// sum_{k=0}^{m} C(m+1,k) B_k = 0.
inline const std::vector<Rational>& bernoulli_table() {
    static const std::vector<Rational> table = [] {
        std::vector<Rational> b(kBernoulliMax + 1);
        b[0] = 1;
        for (int m = 1; m <= kBernoulliMax; ++m) {
            Rational acc = 0;
            BigInt binom = 1;  // C(m+1, k), k = 0
            for (int k = 0; k < m; ++k) {
                acc += Rational(binom) * b[k];
                binom = binom * (m + 1 - k) / (k + 1);
            }
            b[m] = -acc / Rational(m + 1);
        }
        return b;
    }();
    return table;
}

/// B_{2n} as an exact rational, n >= 1.
inline const Rational& bernoulli_even(int n) {
    if (n < 1 || 2 * n > kBernoulliMax) {
        throw domain_error("bernoulli_even: index out of cached range");
    }
    return bernoulli_table()[2 * n];
}

namespace detail {

template <class T>
inline const std::vector<T>& bernoulli_even_float() {
    static const std::vector<T> values = [] {
        std::vector<T> v(kBernoulliMax / 2 + 1, T(0));
        for (int n = 1; 2 * n <= kBernoulliMax; ++n) {
            v[n] = bernoulli_table()[2 * n].template convert_to<T>();
        }
        return v;
    }();
    return values;
}

// Neumaier compensated accumulator.
template <class T>
struct CompensatedSum {
    T sum{0};
    T carry{0};
    void add(T x) {
        T t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    T value() const { return sum + carry; }
};

}  // namespace detail

/// log Gamma(x) for x > 0: shift to x >= 10, then Stirling with Bernoulli terms.
template <class T>
T lgamma_real(T x) {
    if (!(x > T(0))) throw domain_error("lgamma_real: x must be > 0");
    T shift_log = 0;
    T prod = 1;
    while (x < T(10)) {
        prod *= x;
        if (prod > T(1e200) || prod < T(1e-200)) {
            shift_log += std::log(prod);
            prod = 1;
        }
        x += T(1);
    }
    shift_log += std::log(prod);
    const auto& b = detail::bernoulli_even_float<T>();
    const T inv = T(1) / x;
    const T inv2 = inv * inv;
    T series = 0;
    T pw = inv;
    for (int k = 1; k <= 12; ++k) {
        series += b[k] / (T(2 * k) * T(2 * k - 1)) * pw;
        pw *= inv2;
    }
    const T half_log_2pi = T(0.5) * std::log(T(2) * std::numbers::pi_v<T>);
    return (x - T(0.5)) * std::log(x) - x + half_log_2pi + series - shift_log;
}

/// Gamma(x) on 0 < x <= 171.
template <class T>
T gamma_real(T x) {
    if (!(x > T(0))) throw domain_error("gamma_real: x must be > 0");
    if (x > T(171)) throw domain_error("gamma_real: x > 171 overflows");
    // Small integers and half-integers are common (Gamma(theta+m)); the
    // Stirling route is accurate there too, so no special-casing.
    return std::exp(lgamma_real(x));
}

/// Digamma psi(x) for x > 0: upward recurrence psi(x+1) = psi(x) + 1/x into
/// x >= 12, then the Bernoulli asymptotic expansion.
template <class T>
T digamma(T x) {
    if (!(x > T(0))) throw domain_error("digamma: x must be > 0");
    T shift = 0;
    while (x < T(12)) {
        shift += T(1) / x;
        x += T(1);
    }
    const auto& b = detail::bernoulli_even_float<T>();
    const T inv2 = T(1) / (x * x);
    T pw = inv2;
    T series = 0;
    for (int n = 1; n <= 12; ++n) {
        series += b[n] / T(2 * n) * pw;
        pw *= inv2;
    }
    return std::log(x) - T(0.5) / x - series - shift;
}

/// Modified Bessel function of the first kind I_nu(z), nu >= 0, 0 <= z <= 60,
/// by its power series. Terms are all positive, so the sum is stable.
template <class T>
T bessel_i(T nu, T z) {
    if (!(nu >= T(0)) || !std::isfinite(nu)) throw domain_error("bessel_i: order must be >= 0");
    if (!(z >= T(0)) || z > T(60)) throw domain_error("bessel_i: argument outside [0, 60]");
    if (z == T(0)) return nu == T(0) ? T(1) : T(0);
    const T half = z / T(2);
    const T q = half * half;
    T term = std::exp(nu * std::log(half) - lgamma_real(nu + T(1)));
    detail::CompensatedSum<T> acc;
    for (int m = 0; m < 400; ++m) {
        acc.add(term);
        term *= q / (T(m + 1) * (nu + T(m + 1)));
        if (term < T(1e-17) * acc.value() && T(m) > half) break;
    }
    return acc.value();
}

namespace detail {

template <class W>
W bessel_j_series(int kind, W z) {
    const W half = z / W(2);
    const W q = half * half;
    W term = kind == 0 ? W(1) : half;
    W sum = 0;
    for (int m = 0; m < 600; ++m) {
        sum += term;
        term *= -q / (W(m + 1) * W(m + 1 + kind));
        if (W(m) > half && abs(term) < W(1e-40) * (abs(sum) + W(1e-300))) break;
    }
    return sum;
}

}  // namespace detail

/// Bessel J_0 (kind = 0) or J_1 (kind = 1) on 0 <= z <= 60 by the alternating
/// series. Above z = 6 the series is summed in 50-digit arithmetic since the
/// largest term grows like e^z.
template <class T>
T bessel_j(int kind, T z) {
    if (kind != 0 && kind != 1) throw domain_error("bessel_j: kind must be 0 or 1");
    if (!(z >= T(0)) || z > T(60)) throw domain_error("bessel_j: argument outside [0, 60]");
    if (z <= T(6)) {
        const T half = z / T(2);
        const T q = half * half;
        T term = kind == 0 ? T(1) : half;
        detail::CompensatedSum<T> acc;
        for (int m = 0; m < 200; ++m) {
            acc.add(term);
            term *= -q / (T(m + 1) * T(m + 1 + kind));
            if (std::abs(term) < std::numeric_limits<T>::epsilon() * T(1e-3) * std::abs(acc.value())) break;
        }
        return acc.value();
    }
    using Wide = boost::multiprecision::cpp_bin_float_50;
    using boost::multiprecision::abs;
    Wide r = detail::bessel_j_series<Wide>(kind, Wide(z));
    return r.template convert_to<T>();
}

/// J_1(z) / z, evaluated by series so the z -> 0 limit 1/2 is exact.
template <class T>
T bessel_j1_over_z(T z) {
    if (!(z >= T(0)) || z > T(60)) throw domain_error("bessel_j1_over_z: argument outside [0, 60]");
    if (z > T(6)) return bessel_j(1, z) / z;
    const T q = z * z / T(4);
    T term = T(0.5);
    detail::CompensatedSum<T> acc;
    for (int m = 0; m < 200; ++m) {
        acc.add(term);
        term *= -q / (T(m + 1) * T(m + 2));
        if (std::abs(term) < std::numeric_limits<T>::epsilon() * T(1e-3) * std::abs(acc.value())) break;
    }
    return acc.value();
}

}  // namespace specfun
}  // namespace zk

#endif  // ZK_SPECFUN_HPP
