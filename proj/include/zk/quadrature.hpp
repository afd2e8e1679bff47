#ifndef ZK_QUADRATURE_HPP
#define ZK_QUADRATURE_HPP

// Gauss rules (Legendre, Jacobi), Chebyshev fits and a few composite helpers.

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "specfun.hpp"

namespace zk::quad {

template <class T>
struct Rule {
    std::vector<T> x;  // nodes on [-1, 1]
    std::vector<T> w;
};

/// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
template <class T>
Rule<T> gauss_legendre_build(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    Rule<T> r;
    r.x.resize(static_cast<std::size_t>(n));
    r.w.resize(static_cast<std::size_t>(n));
    const T pi = std::numbers::pi_v<T>;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        T z = std::cos(pi * (T(i) + T(0.75)) / (T(n) + T(0.5)));
        T dp = 0;
        for (int it = 0; it < 100; ++it) {
            T p0 = 1;
            T p1 = z;
            for (int k = 2; k <= n; ++k) {
                T p2 = (T(2 * k - 1) * z * p1 - T(k - 1) * p0) / T(k);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = T(n) * (z * p1 - p0) / (z * z - T(1));
            T dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < T(4) * std::numeric_limits<T>::epsilon()) {
                // one more pass to refresh dp at the converged node
                p0 = 1;
                p1 = z;
                for (int k = 2; k <= n; ++k) {
                    T p2 = (T(2 * k - 1) * z * p1 - T(k - 1) * p0) / T(k);
                    p0 = p1;
                    p1 = p2;
                }
                dp = T(n) * (z * p1 - p0) / (z * z - T(1));
                break;
            }
        }
        T w = T(2) / ((T(1) - z * z) * dp * dp);
        r.x[static_cast<std::size_t>(i)] = -z;
        r.x[static_cast<std::size_t>(n - 1 - i)] = z;
        r.w[static_cast<std::size_t>(i)] = w;
        r.w[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) r.x[static_cast<std::size_t>(n / 2)] = 0;
    return r;
}

template <class T>
const Rule<T>& gauss_legendre(int n) {
    static std::map<int, Rule<T>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_legendre_build<T>(n)).first;
    return it->second;
}

/// n-point Gauss-Jacobi rule for the weight (1 - x)^alpha (1 + x)^beta on [-1, 1]
/// by Golub-Welsch.
template <class T>
Rule<T> gauss_jacobi_build(int n, T alpha, T beta) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be >= 1");
    if (!(alpha > T(-1)) || !(beta > T(-1))) throw std::invalid_argument("gauss_jacobi: exponents must be > -1");
    using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
    Mat J = Mat::Zero(n, n);
    const T ab = alpha + beta;
    for (int k = 0; k < n; ++k) {
        T denom = (T(2 * k) + ab) * (T(2 * k) + ab + T(2));
        T a = k == 0 ? (beta - alpha) / (ab + T(2)) : (beta * beta - alpha * alpha) / denom;
        J(k, k) = a;
        if (k + 1 < n) {
            T kk = T(k + 1);
            T num = T(4) * kk * (kk + alpha) * (kk + beta) * (kk + ab);
            T d = (T(2) * kk + ab);
            T b2 = num / (d * d * (d + T(1)) * (d - T(1)));
            T b = std::sqrt(b2);
            J(k, k + 1) = b;
            J(k + 1, k) = b;
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(J);
    const T mu0 = std::exp((ab + T(1)) * std::log(T(2)) + specfun::lgamma_real(alpha + T(1)) +
                           specfun::lgamma_real(beta + T(1)) - specfun::lgamma_real(ab + T(2)));
    Rule<T> r;
    for (int k = 0; k < n; ++k) {
        r.x.push_back(es.eigenvalues()(k));
        T v0 = es.eigenvectors()(0, k);
        r.w.push_back(mu0 * v0 * v0);
    }
    return r;
}

template <class T>
const Rule<T>& gauss_jacobi(int n, T alpha, T beta) {
    static std::map<std::tuple<int, T, T>, Rule<T>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(n, alpha, beta);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, gauss_jacobi_build<T>(n, alpha, beta)).first;
    return it->second;
}

/// Integral of f over [a, b] with an n-point Gauss-Legendre rule.
template <class T, class F>
T integrate_gl(F&& f, T a, T b, int n) {
    const auto& r = gauss_legendre<T>(n);
    const T h = (b - a) / T(2);
    const T c = (b + a) / T(2);
    T s = 0;
    for (std::size_t k = 0; k < r.x.size(); ++k) s += r.w[k] * f(c + h * r.x[k]);
    return s * h;
}

/// Integral of (y - a)^beta f(y) over [a, b] with Gauss-Jacobi.
template <class T, class F>
T integrate_left_singular(F&& f, T a, T b, T beta, int n) {
    const auto& r = gauss_jacobi<T>(n, T(0), beta);
    const T h = (b - a) / T(2);
    const T c = (b + a) / T(2);
    T s = 0;
    for (std::size_t k = 0; k < r.x.size(); ++k) s += r.w[k] * f(c + h * r.x[k]);
    return s * std::pow(h, beta + T(1));
}

/// Chebyshev interpolant of degree deg on [a, b].
template <class T>
struct Chebyshev {
    T a = 0;
    T b = 1;
    std::vector<T> c;

    template <class F>
    static Chebyshev fit(F&& f, T a, T b, int deg) {
        Chebyshev ch;
        ch.a = a;
        ch.b = b;
        const int n = deg + 1;
        const T pi = std::numbers::pi_v<T>;
        std::vector<T> fv(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            T xk = std::cos(pi * (T(k) + T(0.5)) / T(n));
            fv[static_cast<std::size_t>(k)] = f((a + b) / T(2) + (b - a) / T(2) * xk);
        }
        ch.c.assign(static_cast<std::size_t>(n), T(0));
        for (int j = 0; j < n; ++j) {
            T s = 0;
            for (int k = 0; k < n; ++k) s += fv[static_cast<std::size_t>(k)] * std::cos(pi * T(j) * (T(k) + T(0.5)) / T(n));
            ch.c[static_cast<std::size_t>(j)] = T(2) * s / T(n);
        }
        ch.c[0] /= T(2);
        return ch;
    }

    T operator()(T x) const {
        const T u = (T(2) * x - a - b) / (b - a);
        T b1 = 0;
        T b2 = 0;
        for (std::size_t j = c.size(); j-- > 1;) {
            T t = T(2) * u * b1 - b2 + c[j];
            b2 = b1;
            b1 = t;
        }
        return u * b1 - b2 + c[0];
    }

    Chebyshev derivative() const {
        Chebyshev d;
        d.a = a;
        d.b = b;
        const std::size_t n = c.size();
        d.c.assign(n > 1 ? n - 1 : 1, T(0));
        if (n <= 1) return d;
        std::vector<T> cd(n + 1, T(0));
        for (std::size_t k = n - 1; k-- > 0;) cd[k] = cd[k + 2] + T(2) * T(k + 1) * c[k + 1];
        cd[0] /= T(2);
        const T scale = T(2) / (b - a);
        for (std::size_t k = 0; k + 1 < n; ++k) d.c[k] = cd[k] * scale;
        return d;
    }
};

/// Barycentric weights for Lagrange interpolation on the given nodes.
template <class T>
std::vector<T> barycentric_weights(const std::vector<T>& x) {
    std::vector<T> w(x.size(), T(1));
    for (std::size_t j = 0; j < x.size(); ++j) {
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (k != j) w[j] /= (x[j] - x[k]);
        }
    }
    return w;
}

/// Values L_j(u) of all Lagrange basis polynomials at u.
template <class T>
void lagrange_values(const std::vector<T>& x, const std::vector<T>& bw, T u, std::vector<T>& out) {
    out.assign(x.size(), T(0));
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (u == x[j]) {
            out[j] = 1;
            return;
        }
    }
    T denom = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        T q = bw[j] / (u - x[j]);
        out[j] = q;
        denom += q;
    }
    for (auto& v : out) v /= denom;
}

/// Second-form barycentric interpolant of the values f at u; reproduces constants exactly.
template <class T, class F>
T barycentric_eval(const std::vector<T>& x, const std::vector<T>& bw, T u, F&& f) {
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (u == x[j]) return f(j);
    }
    T num = 0, denom = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        T q = bw[j] / (u - x[j]);
        num += q * f(j);
        denom += q;
    }
    return num / denom;
}

/// Derivatives L_j'(u) of the Lagrange basis at u (product rule; u may be a node).
template <class T>
void lagrange_derivatives(const std::vector<T>& x, T u, std::vector<T>& out) {
    const std::size_t n = x.size();
    out.assign(n, T(0));
    for (std::size_t j = 0; j < n; ++j) {
        T s = 0;
        for (std::size_t m = 0; m < n; ++m) {
            if (m == j) continue;
            T p = T(1) / (x[j] - x[m]);
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j || k == m) continue;
                p *= (u - x[k]) / (x[j] - x[k]);
            }
            s += p;
        }
        out[j] = s;
    }
}

}  // namespace zk::quad

#endif  // ZK_QUADRATURE_HPP
