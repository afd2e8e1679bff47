#ifndef ZK_KERNEL_HPP
#define ZK_KERNEL_HPP

// The screened kernel K_theta(x) = sum_{log n <= x} lambda_theta(n) n^{-1/2} g^N(x - log n),
// plus a small interface that lets the Fredholm code accept other causal kernels.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "archimedean.hpp"
#include "arith.hpp"
#include "quadrature.hpp"
#include "reports.hpp"

namespace zk {

using real = long double;

/// A kernel K(u) vanishing for u < 0 with breakpoints c_0 = 0 < c_1 < ... .
/// On [c_i, c_{i+1}) it splits as smooth(i, u) + (u - c_i)^beta * singular(i, u - c_i),
/// both pieces analytic on a neighbourhood of the closed segment.
class CausalKernel {
public:
    virtual ~CausalKernel() = default;
    virtual real value(real u) const = 0;
    virtual real derivative(real u) const = 0;
    /// Breakpoints in [0, umax], increasing, starting with 0.
    virtual std::vector<real> breakpoints(real umax) const = 0;
    virtual real exponent() const = 0;
    virtual real smooth(std::size_t seg, real u) const = 0;
    virtual real singular(std::size_t seg, real s) const = 0;
    /// Largest u at which the kernel may be evaluated.
    virtual real u_max() const = 0;
    virtual bool causal() const { return true; }
    bool integer_exponent() const {
        real b = exponent();
        return std::abs(b - std::round(b)) < 1e-15L;
    }
};

/// K identically zero.
class ZeroKernel final : public CausalKernel {
public:
    real value(real) const override { return 0; }
    real derivative(real) const override { return 0; }
    std::vector<real> breakpoints(real) const override { return {0}; }
    real exponent() const override { return 0; }
    real smooth(std::size_t, real) const override { return 0; }
    real singular(std::size_t, real) const override { return 0; }
    real u_max() const override { return 1e6L; }
};

/// K(u) = c e^{-u} for u >= 0, with a closed-form determinant.
class ExpKernel final : public CausalKernel {
public:
    explicit ExpKernel(real c) : c_(c) {}
    real value(real u) const override { return u < 0 ? 0 : c_ * std::exp(-u); }
    real derivative(real u) const override { return u < 0 ? 0 : -c_ * std::exp(-u); }
    std::vector<real> breakpoints(real) const override { return {0}; }
    real exponent() const override { return 0; }
    real smooth(std::size_t, real) const override { return 0; }
    real singular(std::size_t, real s) const override { return c_ * std::exp(-s); }
    real u_max() const override { return 1e6L; }
    real c() const { return c_; }

private:
    real c_;
};

/// K(u) = c e^{-u} for all u, without the causal cut-off. K(x + y) = c e^{-x} e^{-y} has
/// rank one and det(1 + sign K[t]) = 1 + sign c sinh(2t). Only the plain Nystrom scheme
/// applies, since the product scheme relies on K vanishing below the anti-diagonal.
class SeparableExpKernel final : public CausalKernel {
public:
    explicit SeparableExpKernel(real c) : c_(c) {}
    real value(real u) const override { return c_ * std::exp(-u); }
    real derivative(real u) const override { return -c_ * std::exp(-u); }
    std::vector<real> breakpoints(real) const override { return {0}; }
    real exponent() const override { return 0; }
    real smooth(std::size_t, real u) const override { return c_ * std::exp(-u); }
    real singular(std::size_t, real) const override { return 0; }
    real u_max() const override { return 1e6L; }
    bool causal() const override { return false; }

private:
    real c_;
};

inline real separable_exp_det(real c, real t, int sign) { return 1 + sign * c * std::sinh(2 * t); }

/// Closed form of det(1 + sign K[t]) for ExpKernel. With a = sign c, the homogeneous
/// equation reduces to Q'' + 2Q' + a^2 Q = 0, Q(0) = 1, Q'(0) = a, and det = Q(t).
inline real exp_kernel_det(real c, real t, int sign) {
    const real a = sign * c;
    const real d = 1 - a * a;
    if (d > 0) {
        const real w = std::sqrt(d);
        return std::exp(-t) * (std::cosh(w * t) + (1 + a) / w * std::sinh(w * t));
    }
    if (d < 0) {
        const real w = std::sqrt(-d);
        return std::exp(-t) * (std::cos(w * t) + (1 + a) / w * std::sin(w * t));
    }
    return std::exp(-t) * (1 + (1 + a) * t);
}

struct KernelMeta {
    double theta = 0;
    int order = 0;
    double x_max = 0;
    std::int64_t n_cut = 0;
};

/// K_theta with truncation metadata.
class KernelProfile final : public CausalKernel {
public:
    /// Segments below cache_x are served from Chebyshev fits; beyond it by direct summation.
    KernelProfile(double theta, int order, double x_max, double cache_x = 5.0)
        : arch_(ArchParams{theta, order, x_max}) {
        if (!(x_max > 0) || x_max > 10) throw std::invalid_argument("build_kernel: x_max must lie in (0, 10]");
        meta_ = {theta, order, x_max, static_cast<std::int64_t>(std::ceil(std::exp(x_max)))};
        lambda_ = std::make_shared<LambdaTable>(theta, meta_.n_cut + 1);
        beta_ = static_cast<real>(theta) - 1;
        // g(y) = y^{theta-1} hg(y),  hg(y) = 2^theta pi^theta e^{-5y/2} P(2y).
        auto a = eval_with_unit<real>(derive_a(order), static_cast<real>(theta));
        gsum_ = BesselSum<real>(static_cast<real>(theta), static_cast<real>(theta), a, 160);
        hg_scale_ = std::pow(real(2) * std::numbers::pi_v<real>, static_cast<real>(theta));
        const real step = 0.25L;
        const int pieces = static_cast<int>(std::ceil(static_cast<real>(x_max) / step)) + 1;
        for (int i = 0; i < pieces; ++i) {
            real a0 = step * i;
            hg_.push_back(quad::Chebyshev<real>::fit([this](real y) { return hg_direct(y); }, a0, a0 + step, 34));
            dhg_.push_back(hg_.back().derivative());
        }
        cache_x_ = std::min<real>(cache_x, x_max);
        seg_count_ = static_cast<std::size_t>(std::floor(std::exp(cache_x_))) + 1;
        segs_.resize(seg_count_ + 1);
        logs_.resize(static_cast<std::size_t>(meta_.n_cut) + 2);
        coef_.resize(static_cast<std::size_t>(meta_.n_cut) + 2);
        for (std::int64_t n = 1; n <= meta_.n_cut + 1; ++n) {
            logs_[static_cast<std::size_t>(n)] = std::log(static_cast<real>(n));
            coef_[static_cast<std::size_t>(n)] = lambda_->value_ld(n) / std::sqrt(static_cast<real>(n));
        }
    }

    const KernelMeta& meta() const { return meta_; }
    const LambdaTable& lambda() const { return *lambda_; }
    const ArchModel& arch() const { return arch_; }

    /// Smooth factor of g^N: g(y) = y^{theta-1} hg(y).
    real hg_direct(real y) const {
        return hg_scale_ * std::exp(real(-2.5) * y) * [&] {
            const auto& d = gsum_.coeffs();
            real p = 0;
            const real z = 2 * y;
            for (std::size_t k = d.size(); k-- > 0;) p = p * z + d[k];
            return p;
        }();
    }
    real hg(real y) const {
        std::size_t i = static_cast<std::size_t>(std::max<real>(0, y) / 0.25L);
        if (i >= hg_.size()) return hg_direct(y);
        return hg_[i](y);
    }
    real dhg(real y) const {
        std::size_t i = static_cast<std::size_t>(std::max<real>(0, y) / 0.25L);
        if (i >= dhg_.size()) i = dhg_.size() - 1;
        return dhg_[i](y);
    }
    /// g^N(y) for y >= 0.
    real g(real y) const {
        if (y < 0) return 0;
        if (y == 0) return beta_ == 0 ? hg(0) : 0;
        return std::pow(y, beta_) * hg(y);
    }
    /// g'(y); at y = 0 the right limit (infinite when theta < 2).
    real dg(real y) const {
        if (y < 0) return 0;
        if (y == 0) {
            if (beta_ == 0) return dhg(0);
            if (beta_ == 1) return hg(0);
            if (beta_ < 1) return std::copysign(std::numeric_limits<real>::infinity(), hg(0));
            return 0;
        }
        return beta_ * std::pow(y, beta_ - 1) * hg(y) + std::pow(y, beta_) * dhg(y);
    }

    /// Index n with log n <= u < log(n+1).
    std::int64_t segment_of(real u) const {
        auto n = static_cast<std::int64_t>(std::floor(std::exp(u)));
        if (n < 1) n = 1;
        while (n + 1 < static_cast<std::int64_t>(logs_.size()) && logs_[static_cast<std::size_t>(n + 1)] <= u) ++n;
        while (n > 1 && logs_[static_cast<std::size_t>(n)] > u) --n;
        return n;
    }

    /// Direct sum over n <= e^u (no cache).
    real eval_direct(real u) const {
        if (u < 0) return 0;
        check_range(u);
        const std::int64_t top = segment_of(u);
        real s = 0;
        for (std::int64_t n = top; n >= 1; --n) s += coef_[static_cast<std::size_t>(n)] * g(u - logs_[static_cast<std::size_t>(n)]);
        return s;
    }

    real value(real u) const override {
        if (u < 0) return 0;
        const std::int64_t n = segment_of(u);
        return smooth(static_cast<std::size_t>(n - 1), u) + std::pow(u - logs_[static_cast<std::size_t>(n)], beta_) *
                                                                singular(static_cast<std::size_t>(n - 1), u - logs_[static_cast<std::size_t>(n)]);
    }

    real derivative(real u) const override {
        if (u < 0) return 0;
        const std::int64_t n = segment_of(u);
        const real s = u - logs_[static_cast<std::size_t>(n)];
        real d = coef_[static_cast<std::size_t>(n)] * dg(s);
        if (n >= 2) {
            if (static_cast<std::size_t>(n) <= seg_count_) {
                d += segment(static_cast<std::size_t>(n)).dS(u);
            } else {
                for (std::int64_t m = 1; m < n; ++m) d += coef_[static_cast<std::size_t>(m)] * dg(u - logs_[static_cast<std::size_t>(m)]);
            }
        }
        return d;
    }

    /// Left derivative: at u = log n this is the derivative of the segment below.
    real derivative_left(real u) const {
        if (u <= 0) return 0;
        const std::int64_t n = segment_of(u);
        if (logs_[static_cast<std::size_t>(n)] != u) return derivative(u);
        real d = 0;
        if (static_cast<std::size_t>(n) <= seg_count_) {
            d = segment(static_cast<std::size_t>(n)).dS(u);
        } else {
            for (std::int64_t m = 1; m < n; ++m) d += coef_[static_cast<std::size_t>(m)] * dg(u - logs_[static_cast<std::size_t>(m)]);
        }
        return d;
    }

    std::vector<real> breakpoints(real umax) const override {
        std::vector<real> out;
        for (std::size_t n = 1; n < logs_.size() && logs_[n] <= umax; ++n) out.push_back(logs_[n]);
        return out;
    }
    real exponent() const override { return beta_; }
    /// Sum of the terms m < n on segment n = seg + 1.
    real smooth(std::size_t seg, real u) const override {
        const std::size_t n = seg + 1;
        if (n == 1) return 0;
        check_range(u);
        if (n <= seg_count_) return segment(n).S(u);
        real s = 0;
        for (std::size_t m = 1; m < n; ++m) s += coef_[m] * g(u - logs_[m]);
        return s;
    }
    real singular(std::size_t seg, real s) const override { return coef_[seg + 1] * hg(s); }
    real u_max() const override { return static_cast<real>(meta_.x_max); }

private:
    struct Segment {
        quad::Chebyshev<real> S;
        quad::Chebyshev<real> dS;
    };

    void check_range(real u) const {
        if (u > static_cast<real>(meta_.x_max) + 1e-12L) throw std::out_of_range("KernelProfile: x beyond x_max");
    }

    const Segment& segment(std::size_t n) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto& slot = segs_[n];
        if (!slot) {
            const real a = logs_[n];
            const real b = logs_[n + 1];
            auto f = [&](real u) {
                real s = 0;
                for (std::size_t m = 1; m < n; ++m) s += coef_[m] * g(u - logs_[m]);
                return s;
            };
            Segment sg;
            sg.S = quad::Chebyshev<real>::fit(f, a, b, 32);
            sg.dS = sg.S.derivative();
            slot = std::move(sg);
        }
        return *slot;
    }

    ArchModel arch_;
    KernelMeta meta_;
    std::shared_ptr<LambdaTable> lambda_;
    real beta_ = 1;
    BesselSum<real> gsum_;
    real hg_scale_ = 1;
    std::vector<quad::Chebyshev<real>> hg_;
    std::vector<quad::Chebyshev<real>> dhg_;
    real cache_x_ = 0;
    std::size_t seg_count_ = 0;
    mutable std::vector<std::optional<Segment>> segs_;
    mutable std::mutex mu_;
    std::vector<real> logs_;
    std::vector<real> coef_;
};

inline std::shared_ptr<KernelProfile> build_kernel(double theta, int order = 14, double x_max = 8.0) {
    return std::make_shared<KernelProfile>(theta, order, x_max);
}

/// Right-hand side exp(-2 theta xi'/xi(sigma)) with its certified error.
struct XiTarget {
    double value = 0;
    double err = 0;
};

inline XiTarget kernel_transform_target(double theta, double sigma) {
    auto z = zeta_log_deriv_precise(sigma);
    const double v = std::exp(-2 * theta * (gamma_factor_log_deriv(sigma) + z.value));
    return {v, std::abs(v) * 2 * theta * z.tail_bound};
}

/// int_0^X K(x) e^{-(sigma-1/2)x} dx, computed as sum_n lambda(n) n^{-sigma} G(X - log n)
/// with G(L) = int_0^L g(y) e^{-(sigma-1/2)y} dy, against exp(-2 theta xi'/xi(sigma)).
/// The tail bound covers both the x > X part of every term and the omitted n > e^X.
inline TransformCheckReport kernel_laplace_check(const KernelProfile& k, double sigma, double X, double tol = 1e-6) {
    if (!(sigma >= 2)) throw domain_error("kernel_laplace_check: sigma must be >= 2");
    if (X > k.meta().x_max + 1e-12) throw domain_error("kernel_laplace_check: X beyond x_max");
    const auto& arch = k.arch();
    const double theta = k.meta().theta;
    const long double a = sigma - 0.5L;
    // Cumulative G on a grid of step h, refined by a Gauss rule to each endpoint.
    // Run with two rule orders; their difference is the quadrature estimate.
    const real h = 1.0L / 64;
    const int steps = static_cast<int>(std::ceil(X / static_cast<double>(h))) + 1;
    const real beta = k.exponent();
    const auto top = k.segment_of(static_cast<real>(X));
    auto lhs_with = [&](int q) {
        auto piece = [&](real lo, real hi) -> real {
            if (hi <= lo) return 0;
            if (lo == 0) {
                return quad::integrate_left_singular<real>([&](real y) { return k.hg(y) * std::exp(-a * y); }, lo, hi, beta, q);
            }
            return quad::integrate_gl<real>([&](real y) { return k.g(y) * std::exp(-a * y); }, lo, hi, q);
        };
        std::vector<real> G(static_cast<std::size_t>(steps) + 1, 0);
        for (int i = 1; i <= steps; ++i) G[static_cast<std::size_t>(i)] = G[static_cast<std::size_t>(i - 1)] + piece(h * (i - 1), h * i);
        auto Gat = [&](real L) {
            if (L <= 0) return real(0);
            auto i = static_cast<std::size_t>(std::floor(L / h));
            return G[i] + piece(h * static_cast<real>(i), L);
        };
        real lhs = 0;
        for (std::int64_t n = top; n >= 1; --n) {
            const real ln = std::log(static_cast<real>(n));
            lhs += k.lambda().value_ld(n) * std::pow(static_cast<real>(n), -static_cast<real>(sigma)) * Gat(static_cast<real>(X) - ln);
        }
        return lhs;
    };
    const real lhs = lhs_with(24);
    const real lhs_coarse = lhs_with(16);
    // Tail: sum_{n <= e^X} lambda(n) n^{-sigma} |int_{X - log n}^inf g e^{-(sigma-1/2)y}|
    //     + (sum_{n > e^X} lambda(n) n^{-sigma}) * int_0^inf |g| e^{-(sigma-1/2)y}.
    const auto& A = arch.a();
    auto g_tail = [&](double L) {
        double s = 0;
        for (int n = 0; n < k.meta().order; ++n) s += std::abs(A[static_cast<std::size_t>(n)]) * psi2_tail(theta + n, theta, sigma, std::max(L, 0.0));
        return arch.pi_theta() * s;
    };
    double tail = 0;
    for (std::int64_t n = top; n >= 1; --n) {
        const double ln = std::log(static_cast<double>(n));
        tail += k.lambda()(n) * std::pow(static_cast<double>(n), -sigma) * g_tail(X - ln);
    }
    tail += dirichlet_lambda_tail(theta, sigma, static_cast<double>(top)) * g_tail(0);
    auto target = kernel_transform_target(theta, sigma);
    TransformCheckReport r;
    r.name = "K";
    r.theta = theta;
    r.order = k.meta().order;
    r.sigma = sigma;
    r.lhs = static_cast<double>(lhs);
    r.rhs = target.value;
    r.tail_bound = tail + target.err;
    r.quadrature_estimate_error = static_cast<double>(std::abs(lhs - lhs_coarse));
    finalize(r, tol);
    return r;
}

}  // namespace zk

#endif  // ZK_KERNEL_HPP
