#ifndef ZK_FPS_HPP
#define ZK_FPS_HPP

// Exact truncated power series whose coefficients are polynomials in theta
// over Q, and the derivation of the expansion coefficients used by the
// archimedean densities.

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "specfun.hpp"

namespace zk {

/// Polynomial in theta with exact rational coefficients; coeffs[k] multiplies theta^k.
class RationalPoly {
public:
    RationalPoly() = default;
    RationalPoly(Rational c) : coeffs_{std::move(c)} { trim(); }  // NOLINT: implicit constant
    explicit RationalPoly(std::vector<Rational> c) : coeffs_(std::move(c)) { trim(); }

    /// The monomial c * theta^k.
    static RationalPoly monomial(Rational c, int k) {
        std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
        v[static_cast<std::size_t>(k)] = std::move(c);
        return RationalPoly(std::move(v));
    }
    static RationalPoly theta() { return monomial(Rational(1), 1); }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Rational coeff(int k) const {
        return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(k)] : Rational(0);
    }

    template <class T = double>
    T eval(T theta) const {
        T acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * theta + it->template convert_to<T>();
        }
        return acc;
    }
    Rational eval_exact(const Rational& theta) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * theta + *it;
        return acc;
    }

    RationalPoly& operator+=(const RationalPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    RationalPoly& operator-=(const RationalPoly& o) { return *this += -o; }
    RationalPoly operator-() const {
        RationalPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return RationalPoly(std::move(r));
    }
    friend RationalPoly operator*(const Rational& c, const RationalPoly& a) {
        if (c == 0) return {};
        RationalPoly r = a;
        for (auto& x : r.coeffs_) x *= c;
        return r;
    }
    friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Human-readable form, e.g. "1/8*t^2 - 5/12*t".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const Rational& c = coeffs_[static_cast<std::size_t>(k)];
            if (c == 0) continue;
            Rational mag = c < 0 ? Rational(-c) : c;
            if (!out.empty()) out += c < 0 ? " - " : " + ";
            else if (c < 0) out += "-";
            out += mag.str();
            if (k >= 1) out += "*t";
            if (k >= 2) out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

/// Expansion variable of a series.
enum class SeriesVar { u, v, w_inv };

inline const char* to_string(SeriesVar v) {
    switch (v) {
        case SeriesVar::u: return "u";
        case SeriesVar::v: return "v";
        case SeriesVar::w_inv: return "w_inv";
    }
    return "?";
}

/// Truncated series sum_{n=0}^{order} coeffs[n] var^n.
struct FPSeries {
    SeriesVar var = SeriesVar::u;
    int order = 0;
    std::vector<RationalPoly> coeffs;

    FPSeries() = default;
    FPSeries(SeriesVar var_, int order_) : var(var_), order(order_), coeffs(static_cast<std::size_t>(order_) + 1) {
        if (order_ < 0) throw std::invalid_argument("FPSeries: negative order");
    }
    static FPSeries constant(SeriesVar var, int order, RationalPoly c) {
        FPSeries s(var, order);
        s.coeffs[0] = std::move(c);
        return s;
    }
    RationalPoly& operator[](int n) { return coeffs.at(static_cast<std::size_t>(n)); }
    const RationalPoly& operator[](int n) const { return coeffs.at(static_cast<std::size_t>(n)); }
    friend bool operator==(const FPSeries& a, const FPSeries& b) {
        return a.var == b.var && a.order == b.order && a.coeffs == b.coeffs;
    }
};

namespace detail {
inline void check_compatible(const FPSeries& a, const FPSeries& b, const char* op) {
    if (a.var != b.var) throw std::invalid_argument(std::string(op) + ": mismatched series variable");
    if (a.order != b.order) throw std::invalid_argument(std::string(op) + ": mismatched truncation order");
}
inline void check_zero_constant(const FPSeries& a, const char* op) {
    if (!a.coeffs.empty() && !a.coeffs[0].is_zero()) {
        throw std::invalid_argument(std::string(op) + ": series must have zero constant term");
    }
}
}  // namespace detail

inline FPSeries fps_add(const FPSeries& a, const FPSeries& b) {
    detail::check_compatible(a, b, "fps_add");
    FPSeries r(a.var, a.order);
    for (int n = 0; n <= a.order; ++n) r[n] = a[n] + b[n];
    return r;
}

inline FPSeries fps_scale(const Rational& c, const FPSeries& a) {
    FPSeries r(a.var, a.order);
    for (int n = 0; n <= a.order; ++n) r[n] = c * a[n];
    return r;
}

inline FPSeries fps_mul(const FPSeries& a, const FPSeries& b) {
    detail::check_compatible(a, b, "fps_mul");
    FPSeries r(a.var, a.order);
    for (int i = 0; i <= a.order; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= a.order; ++j) {
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

/// exp(a) for a(0) = 0, from n e_n = sum_{k=1}^{n} k a_k e_{n-k}.
inline FPSeries fps_exp(const FPSeries& a) {
    detail::check_zero_constant(a, "fps_exp");
    FPSeries e(a.var, a.order);
    e[0] = RationalPoly(Rational(1));
    for (int n = 1; n <= a.order; ++n) {
        RationalPoly acc;
        for (int k = 1; k <= n; ++k) {
            if (!a[k].is_zero()) acc += Rational(k) * (a[k] * e[n - k]);
        }
        e[n] = Rational(1, n) * acc;
    }
    return e;
}

/// log(1 + a) for a(0) = 0, from l_n = a_n - (1/n) sum_{k=1}^{n-1} (n-k) a_k l_{n-k}.
inline FPSeries fps_log1p(const FPSeries& a) {
    detail::check_zero_constant(a, "fps_log1p");
    FPSeries l(a.var, a.order);
    for (int n = 1; n <= a.order; ++n) {
        RationalPoly acc;
        for (int k = 1; k < n; ++k) {
            if (!a[k].is_zero()) acc += Rational(n - k) * (a[k] * l[n - k]);
        }
        l[n] = a[n] - Rational(1, n) * acc;
    }
    return l;
}

/// Rewrites a series in v = u/(1+u) as a series in u, using
/// v^k = sum_j (-1)^j C(k+j-1, j) u^{k+j}.
inline FPSeries substitute_v_to_u(const FPSeries& a) {
    if (a.var != SeriesVar::v) throw std::invalid_argument("substitute_v_to_u: series is not in v");
    const int N = a.order;
    FPSeries r(SeriesVar::u, N);
    r[0] = a[0];
    for (int k = 1; k <= N; ++k) {
        if (a[k].is_zero()) continue;
        BigInt binom = 1;  // C(k+j-1, j) at j = 0
        for (int j = 0; k + j <= N; ++j) {
            Rational c(binom);
            if (j % 2 == 1) c = -c;
            r[k + j] += c * a[k];
            binom = binom * (k + j) / (j + 1);
        }
    }
    return r;
}

/// Default and maximal expansion orders.
inline constexpr int kDefaultOrder = 16;
inline constexpr int kMaxOrder = 60;

namespace detail {

inline void check_order(int N, const char* who) {
    if (N < 2) throw std::invalid_argument(std::string(who) + ": order must be >= 2");
    if (N > kMaxOrder) throw std::invalid_argument(std::string(who) + ": order exceeds 60");
}

// Exponent theta*log(1-v) + theta*v/2 + sum theta*B_{2n}/(2n) v^{2n}, order N.
inline FPSeries c_exponent_v(int N) {
    FPSeries a(SeriesVar::v, N);
    const RationalPoly th = RationalPoly::theta();
    for (int n = 1; n <= N; ++n) a[n] = Rational(-1, n) * th;
    a[1] += Rational(1, 2) * th;
    for (int n = 1; 2 * n <= N; ++n) {
        a[2 * n] += (specfun::bernoulli_even(n) / Rational(2 * n)) * th;
    }
    return a;
}

template <class F>
const std::vector<RationalPoly>& memo(std::map<int, std::vector<RationalPoly>>& cache, std::mutex& mu, int N, F&& build) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it == cache.end()) it = cache.emplace(N, build()).first;
    return it->second;
}

}  // namespace detail

/// The series exp(theta log(s/(s+1)) + ...) - 1 in v = 1/(s+1), order N.
/// Its v^{n+1} coefficient is the polynomial C_n(theta).
inline FPSeries c_series_v(int N) {
    if (N < 1 || N > kMaxOrder) throw std::invalid_argument("c_series_v: order outside [1, 60]");
    FPSeries e = fps_exp(detail::c_exponent_v(N));
    e[0] = RationalPoly();
    return e;
}

/// Polynomials C_1 .. C_{N-2}: C_n is the coefficient of v^{n+1}.
inline std::vector<RationalPoly> derive_c_v(int N) {
    FPSeries e = c_series_v(N);
    std::vector<RationalPoly> out;
    for (int n = 2; n <= N - 1; ++n) out.push_back(e[n]);
    return out;
}

/// The series s^theta exp(-theta psi(s) - theta/s) - 1 in u = 1/s, order N.
inline FPSeries c_tilde_series(int N) { return substitute_v_to_u(c_series_v(N)); }

/// Polynomials Ctilde_1 .. Ctilde_{N-1}.
inline std::vector<RationalPoly> derive_c_tilde(int N) {
    detail::check_order(N, "derive_c_tilde");
    static std::map<int, std::vector<RationalPoly>> cache;
    static std::mutex mu;
    return detail::memo(cache, mu, N, [N] {
        FPSeries s = c_tilde_series(N - 1);
        return std::vector<RationalPoly>(s.coeffs.begin() + 1, s.coeffs.end());
    });
}

/// Series of exp(-2 theta/(2w-3)) in y = 1/w (or its inverse with sign = +1),
/// using 2/(2w-3) = y sum_k (3y/2)^k.
inline FPSeries shift_factor_series(int N, int sign) {
    FPSeries a(SeriesVar::w_inv, N);
    Rational pw = 1;
    for (int k = 0; k + 1 <= N; ++k) {
        a[k + 1] = Rational(sign) * pw * RationalPoly::theta();
        pw *= Rational(3, 2);
    }
    return fps_exp(a);
}

/// The series 1 + sum A_n y^n, y = 1/w, order N.
inline FPSeries a_series(int N) {
    FPSeries c = c_tilde_series(N);
    c.var = SeriesVar::w_inv;
    c[0] = RationalPoly(Rational(1));
    return fps_mul(c, shift_factor_series(N, -1));
}

/// Polynomials A_1 .. A_{N-1}.
inline std::vector<RationalPoly> derive_a(int N) {
    detail::check_order(N, "derive_a");
    static std::map<int, std::vector<RationalPoly>> cache;
    static std::mutex mu;
    return detail::memo(cache, mu, N, [N] {
        FPSeries s = a_series(N - 1);
        return std::vector<RationalPoly>(s.coeffs.begin() + 1, s.coeffs.end());
    });
}

/// Evaluates [1, p_1(theta), ..., p_{N-1}(theta)].
template <class T = double>
std::vector<T> eval_with_unit(const std::vector<RationalPoly>& polys, T theta) {
    std::vector<T> out;
    out.reserve(polys.size() + 1);
    out.push_back(T(1));
    for (const auto& p : polys) out.push_back(p.template eval<T>(theta));
    return out;
}

}  // namespace zk

#endif  // ZK_FPS_HPP
