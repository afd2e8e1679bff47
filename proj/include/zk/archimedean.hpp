#ifndef ZK_ARCHIMEDEAN_HPP
#define ZK_ARCHIMEDEAN_HPP

// Bessel-kernel densities Psi0, Psi^{1,N}, Psi^N, Psi2, g^N and their
// transforms on the real sigma axis.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fps.hpp"
#include "quadrature.hpp"
#include "reports.hpp"
#include "specfun.hpp"

namespace zk {

struct ArchParams {
    double theta = 2.0;
    int order = 14;
    double x_max = 6.0;

    void validate() const {
        if (!(theta > 1) || !std::isfinite(theta)) throw std::invalid_argument("ArchParams: theta must be > 1");
        if (order < 2 || order > kMaxOrder) throw std::invalid_argument("ArchParams: order must be in [2, 60]");
        if (!(x_max > 0)) throw std::invalid_argument("ArchParams: x_max must be > 0");
    }
};

/// Value with the leading term and the correction sum kept apart.
struct DensityEval {
    double x = 0;
    double value = 0;
    double leading = 0;
    double correction = 0;
};

/// Psi0_{theta,alpha}(x) = e^{-x/2} sum_m alpha^m x^{m+theta-1} / (m! Gamma(theta+m)), 0 for x < 0.
template <class T = double>
T psi0(T theta, T alpha, T x) {
    if (!(theta > T(0))) throw domain_error("psi0: theta must be > 0");
    if (!(alpha >= T(0))) throw domain_error("psi0: alpha must be >= 0");
    if (x < T(0)) return T(0);
    if (x == T(0)) {
        if (theta == T(1)) return T(1);
        return theta > T(1) ? T(0) : std::numeric_limits<T>::infinity();
    }
    T term = std::exp((theta - T(1)) * std::log(x) - specfun::lgamma_real(theta));
    const T ax = alpha * x;
    T sum = 0;
    for (int m = 0; m < 2000; ++m) {
        sum += term;
        T ratio = ax / (T(m + 1) * (theta + T(m)));
        term *= ratio;
        if (ratio < T(1) && term <= T(1e-17) * sum) break;
    }
    return std::exp(-x / T(2)) * sum;
}

/// The same function through the modified Bessel form, for cross-checks.
inline double psi0_bessel(double theta, double alpha, double x) {
    if (x < 0) return 0;
    if (x == 0) return psi0(theta, alpha, x);
    const double z = 2 * std::sqrt(alpha * x);
    return std::exp(-x / 2) * std::pow(x / alpha, (theta - 1) / 2) * specfun::bessel_i(theta - 1, z);
}

/// Psi2_{theta,alpha}(x) = 2 e^{-3x/2} Psi0_{theta,alpha}(2x).
template <class T = double>
T psi2(T theta, T alpha, T x) {
    if (x < T(0)) return T(0);
    return T(2) * std::exp(T(-1.5) * x) * psi0(theta, alpha, T(2) * x);
}

/// sum_n c_n Psi0_{theta+n,alpha}(u), merged into e^{-u/2} u^{theta-1} sum_k d_k u^k.
template <class T = double>
class BesselSum {
public:
    BesselSum() = default;
    BesselSum(T theta, T alpha, const std::vector<T>& c, int terms = 140) : theta_(theta), alpha_(alpha) {
        d_.assign(static_cast<std::size_t>(terms), T(0));
        // inverse factorials of alpha^j / j!
        std::vector<T> ap(static_cast<std::size_t>(terms), T(1));
        for (int j = 1; j < terms; ++j) ap[static_cast<std::size_t>(j)] = ap[static_cast<std::size_t>(j - 1)] * alpha / T(j);
        for (int k = 0; k < terms; ++k) {
            T s = 0;
            const int nmax = std::min<int>(k, static_cast<int>(c.size()) - 1);
            for (int n = 0; n <= nmax; ++n) s += c[static_cast<std::size_t>(n)] * ap[static_cast<std::size_t>(k - n)];
            d_[static_cast<std::size_t>(k)] = s * std::exp(-specfun::lgamma_real(theta + T(k)));
        }
    }

    /// e^{-u/2} sum_k d_k u^k (the sum divided by u^{theta-1}).
    T reduced(T u) const {
        T p = 0;
        for (std::size_t k = d_.size(); k-- > 0;) p = p * u + d_[k];
        return std::exp(-u / T(2)) * p;
    }
    T operator()(T u) const {
        if (u < T(0)) return T(0);
        if (u == T(0)) return theta_ == T(1) ? reduced(u) : T(0);
        return std::pow(u, theta_ - T(1)) * reduced(u);
    }
    T theta() const { return theta_; }
    const std::vector<T>& coeffs() const { return d_; }

private:
    T theta_ = 1;
    T alpha_ = 0;
    std::vector<T> d_;
};

/// Coefficient values and density evaluators for one (theta, N).
class ArchModel {
public:
    explicit ArchModel(ArchParams p) : p_(p) {
        p_.validate();
        ct_ = eval_with_unit<double>(derive_c_tilde(p_.order), p_.theta);
        a_ = eval_with_unit<double>(derive_a(p_.order), p_.theta);
        psi_sum_ = BesselSum<double>(p_.theta, p_.theta, ct_);
        g_sum_ = BesselSum<double>(p_.theta, p_.theta, a_);
        pi_theta_ = std::pow(std::numbers::pi, p_.theta);
    }

    const ArchParams& params() const { return p_; }
    /// Ctilde_0 .. Ctilde_{N-1} with Ctilde_0 = 1.
    const std::vector<double>& c_tilde() const { return ct_; }
    /// A_0 .. A_{N-1} with A_0 = 1.
    const std::vector<double>& a() const { return a_; }
    double pi_theta() const { return pi_theta_; }

    /// Psi^{1,N}(x) = e^{-x/2} sum_{n=1}^{N-1} Ctilde_n x^{n-1}/(n-1)!.
    double psi1(double x) const {
        if (x < 0) return 0;
        double s = 0;
        double pw = 1;
        for (int n = 1; n < p_.order; ++n) {
            s += ct_[static_cast<std::size_t>(n)] * pw;
            pw *= x / n;
        }
        return std::exp(-x / 2) * s;
    }

    /// Psi^N(x) = sum_{n=0}^{N-1} Ctilde_n Psi0_{theta+n,theta}(x), term by term.
    DensityEval psi(double x) const {
        DensityEval d{x, 0, 0, 0};
        if (x < 0) return d;
        d.leading = psi0(p_.theta, p_.theta, x);
        for (int n = 1; n < p_.order; ++n) d.correction += ct_[static_cast<std::size_t>(n)] * psi0(p_.theta + n, p_.theta, x);
        d.value = d.leading + d.correction;
        return d;
    }
    /// Same sum through the merged power series.
    double psi_fast(double x) const { return psi_sum_(x); }
    const BesselSum<double>& psi_sum() const { return psi_sum_; }

    /// g^N(x) = pi^theta (Psi2_{theta,theta} + sum_{n>=1} A_n Psi2_{theta+n,theta})(x).
    DensityEval g(double x) const {
        DensityEval d{x, 0, 0, 0};
        if (x < 0) return d;
        d.leading = pi_theta_ * psi2(p_.theta, p_.theta, x);
        for (int n = 1; n < p_.order; ++n) {
            d.correction += pi_theta_ * a_[static_cast<std::size_t>(n)] * psi2(p_.theta + n, p_.theta, x);
        }
        d.value = d.leading + d.correction;
        return d;
    }
    double g_fast(double x) const {
        if (x < 0) return 0;
        return 2 * pi_theta_ * std::exp(-1.5 * x) * g_sum_(2 * x);
    }
    const BesselSum<double>& g_sum() const { return g_sum_; }

    /// Psi0_{theta,theta} + (Psi0_{theta,theta} * Psi^{1,N}) by quadrature.
    double psi_convolution(double x, int nodes = 48) const {
        if (x < 0) return 0;
        if (x == 0) return psi0(p_.theta, p_.theta, 0.0);
        // Psi0(x - y) = (x - y)^{theta-1} r(x - y), r smooth.
        const BesselSum<double> lead(p_.theta, p_.theta, {1.0});
        const auto& rule = quad::gauss_jacobi<double>(nodes, p_.theta - 1, 0.0);
        const double h = x / 2;
        double s = 0;
        for (std::size_t k = 0; k < rule.x.size(); ++k) {
            double y = h + h * rule.x[k];
            s += rule.w[k] * lead.reduced(x - y) * psi1(y);
        }
        s *= std::pow(h, p_.theta);
        return psi0(p_.theta, p_.theta, x) + s;
    }

    /// 2 pi^theta e^{-3x/2} Psi^N(2x) - 4 theta pi^theta e^{-3x/2}
    ///   * int_0^x Psi^N(2(x-y)) e^{2y} J1(2 sqrt(2 theta y)) / sqrt(2 theta y) dy.
    double g_exact_formula(double x, int nodes = 64) const {
        if (x < 0) return 0;
        const double th = p_.theta;
        const double first = 2 * pi_theta_ * std::exp(-1.5 * x) * psi_fast(2 * x);
        if (x == 0) return first;
        const auto& rule = quad::gauss_jacobi<double>(nodes, th - 1, 0.0);
        const double h = x / 2;
        double s = 0;
        for (std::size_t k = 0; k < rule.x.size(); ++k) {
            double y = h + h * rule.x[k];
            double z = 2 * std::sqrt(2 * th * y);
            // J1(z)/sqrt(2 theta y) = 2 J1(z)/z
            double j = 2 * specfun::bessel_j1_over_z(z);
            s += rule.w[k] * psi_sum_.reduced(2 * (x - y)) * std::exp(2 * y) * j;
        }
        // (2(x-y))^{theta-1} = 2^{theta-1} (x-y)^{theta-1}
        s *= std::pow(2.0, th - 1) * std::pow(h, th);
        return first - 4 * th * pi_theta_ * std::exp(-1.5 * x) * s;
    }

    /// Exact transforms of the finite sums (no asymptotic error).
    double psi_transform_exact(double sigma) const {
        double s = 0;
        for (int n = 0; n < p_.order; ++n) s += ct_[static_cast<std::size_t>(n)] * std::pow(sigma, -p_.theta - n);
        return s * std::exp(p_.theta / sigma);
    }
    double g_transform_exact(double sigma) const {
        const double w = (sigma + 2) / 2;
        double s = 0;
        for (int n = 0; n < p_.order; ++n) s += a_[static_cast<std::size_t>(n)] * std::pow(w, -p_.theta - n);
        return pi_theta_ * s * std::exp(p_.theta / w);
    }

private:
    ArchParams p_;
    std::vector<double> ct_;
    std::vector<double> a_;
    BesselSum<double> psi_sum_;
    BesselSum<double> g_sum_;
    double pi_theta_ = 1;
};

inline double psi1_approx(const ArchParams& p, double x) { return ArchModel(p).psi1(x); }
inline double psi_approx(const ArchParams& p, double x) { return ArchModel(p).psi(x).value; }
inline double g_approx(const ArchParams& p, double x) { return ArchModel(p).g(x).value; }

// ---------------------------------------------------------------------------
// Closed-form right-hand sides on the real axis.

/// gamma'/gamma(s) for gamma(s) = s(s-1) pi^{-s/2} Gamma(s/2) / 2.
inline double gamma_factor_log_deriv(double s) {
    return 1 / s + 1 / (s - 1) - std::log(std::numbers::pi) / 2 + specfun::digamma(s / 2) / 2;
}

inline double psi_transform_target(double theta, double sigma) { return std::exp(-theta * specfun::digamma(sigma)); }
inline double psi1_transform_target(double theta, double sigma) {
    return std::pow(sigma, theta) * std::exp(-theta * specfun::digamma(sigma) - theta / sigma) - 1;
}
inline double g_transform_target(double theta, double sigma) {
    return std::exp(-2 * theta * gamma_factor_log_deriv(sigma));
}

// ---------------------------------------------------------------------------
// Laplace integrals int_0^inf f(x) e^{-(sigma-1/2)x} dx with certified tails.

struct LaplaceResult {
    double value = 0;
    double tail_bound = 0;
    double quad_error = 0;
    double x_cut = 0;
};

/// Integrates over unit panels until tail(X) <= rel_tail * |running value| or X = x_cap.
/// The first panel uses tanh-sinh (x^{theta-1} endpoint), the rest adaptive Gauss-Kronrod.
inline LaplaceResult laplace_integral(const std::function<double(double)>& f, double sigma,
                                      const std::function<double(double)>& tail, double x_cap = 120,
                                      double rel_tail = 1e-16, double abs_tol = 1e-13) {
    namespace bq = boost::math::quadrature;
    auto integrand = [&](double x) { return f(x) * std::exp(-(sigma - 0.5) * x); };
    LaplaceResult r;
    bq::tanh_sinh<double> ts;
    double X = 0;
    while (true) {
        double err = 0;
        double v = 0;
        if (X == 0) {
            double l1 = 0;
            v = ts.integrate(integrand, 0.0, 1.0, 1e-14, &err, &l1);
        } else {
            v = bq::gauss_kronrod<double, 31>::integrate(integrand, X, X + 1, 12, abs_tol, &err);
        }
        r.value += v;
        r.quad_error += err;
        X += 1;
        double tb = tail(X);
        if (tb <= rel_tail * std::abs(r.value) || X >= x_cap) {
            r.tail_bound = tb;
            break;
        }
    }
    r.x_cut = X;
    return r;
}

/// Tail bound of int_X^inf Psi0_{theta',alpha}(x) e^{-(sigma-1/2)x} dx.
inline double psi0_tail(double thp, double alpha, double sigma, double X) {
    const double lam = sigma - alpha / thp;
    if (!(lam > 0)) return std::numeric_limits<double>::infinity();
    return boost::math::gamma_q(thp, lam * X) * std::pow(lam, -thp);
}

/// Tail bound of int_X^inf Psi2_{theta',alpha}(x) e^{-(sigma-1/2)x} dx.
inline double psi2_tail(double thp, double alpha, double sigma, double X) {
    const double lam = (sigma + 2) / 2 - alpha / thp;
    if (!(lam > 0)) return std::numeric_limits<double>::infinity();
    return boost::math::gamma_q(thp, 2 * lam * X) * std::pow(lam, -thp);
}

inline TransformCheckReport laplace_check_psi0(double theta, double alpha, double sigma, double tol = 1e-8) {
    TransformCheckReport r;
    r.name = "psi0";
    r.theta = theta;
    r.sigma = sigma;
    auto res = laplace_integral([&](double x) { return psi0(theta, alpha, x); }, sigma,
                                [&](double X) { return psi0_tail(theta, alpha, sigma, X); });
    r.lhs = res.value;
    r.tail_bound = res.tail_bound;
    r.quadrature_estimate_error = res.quad_error;
    r.rhs = std::pow(sigma, -theta) * std::exp(alpha / sigma);
    finalize(r, tol);
    return r;
}

inline TransformCheckReport laplace_check_psi2(double theta, double alpha, double sigma, double tol = 1e-8) {
    TransformCheckReport r;
    r.name = "psi2";
    r.theta = theta;
    r.sigma = sigma;
    auto res = laplace_integral([&](double x) { return psi2(theta, alpha, x); }, sigma,
                                [&](double X) { return psi2_tail(theta, alpha, sigma, X); });
    r.lhs = res.value;
    r.tail_bound = res.tail_bound;
    r.quadrature_estimate_error = res.quad_error;
    const double w = (sigma + 2) / 2;
    r.rhs = std::pow(w, -theta) * std::exp(alpha / w);
    finalize(r, tol);
    return r;
}

inline TransformCheckReport laplace_check_psi1(const ArchModel& m, double sigma, double tol = 1e-7) {
    const auto& p = m.params();
    TransformCheckReport r;
    r.name = "psi1N";
    r.theta = p.theta;
    r.order = p.order;
    r.sigma = sigma;
    auto tail = [&](double X) {
        double s = 0;
        for (int n = 1; n < p.order; ++n) {
            s += std::abs(m.c_tilde()[static_cast<std::size_t>(n)]) * boost::math::gamma_q(double(n), sigma * X) *
                 std::pow(sigma, -n);
        }
        return s;
    };
    auto res = laplace_integral([&](double x) { return m.psi1(x); }, sigma, tail);
    r.lhs = res.value;
    r.tail_bound = res.tail_bound;
    r.quadrature_estimate_error = res.quad_error;
    r.rhs = psi1_transform_target(p.theta, sigma);
    finalize(r, tol);
    return r;
}

inline TransformCheckReport laplace_check_psi(const ArchModel& m, double sigma, double tol = 1e-7) {
    const auto& p = m.params();
    TransformCheckReport r;
    r.name = "psiN";
    r.theta = p.theta;
    r.order = p.order;
    r.sigma = sigma;
    auto tail = [&](double X) {
        double s = 0;
        for (int n = 0; n < p.order; ++n) {
            s += std::abs(m.c_tilde()[static_cast<std::size_t>(n)]) * psi0_tail(p.theta + n, p.theta, sigma, X);
        }
        return s;
    };
    auto res = laplace_integral([&](double x) { return m.psi_fast(x); }, sigma, tail);
    r.lhs = res.value;
    r.tail_bound = res.tail_bound;
    r.quadrature_estimate_error = res.quad_error;
    r.rhs = psi_transform_target(p.theta, sigma);
    finalize(r, tol);
    return r;
}

inline TransformCheckReport laplace_check_g(const ArchModel& m, double sigma, double tol = 1e-6) {
    const auto& p = m.params();
    TransformCheckReport r;
    r.name = "gN";
    r.theta = p.theta;
    r.order = p.order;
    r.sigma = sigma;
    auto tail = [&](double X) {
        double s = 0;
        for (int n = 0; n < p.order; ++n) {
            s += std::abs(m.a()[static_cast<std::size_t>(n)]) * psi2_tail(p.theta + n, p.theta, sigma, X);
        }
        return m.pi_theta() * s;
    };
    auto res = laplace_integral([&](double x) { return m.g_fast(x); }, sigma, tail);
    r.lhs = res.value;
    r.tail_bound = res.tail_bound;
    r.quadrature_estimate_error = res.quad_error;
    r.rhs = g_transform_target(p.theta, sigma);
    finalize(r, tol);
    return r;
}

/// Smallest X0 on a 0.5 grid beyond which Psi0_{theta,theta}(x) <= exp(-0.4 x) holds
/// on the sampled range up to x_hi.
inline double psi0_decay_onset(double theta, double x_hi = 200) {
    double onset = 0;
    for (double x = 0.5; x <= x_hi; x += 0.5) {
        if (psi0(theta, theta, x) > std::exp(-0.4 * x)) onset = x + 0.5;
    }
    return onset;
}

}  // namespace zk

#endif  // ZK_ARCHIMEDEAN_HPP
