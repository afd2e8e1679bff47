#ifndef ZK_REPORTS_HPP
#define ZK_REPORTS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace zk {

/// One transform identity evaluated on the real sigma axis.
struct TransformCheckReport {
    std::string name;
    double theta = 0;
    int order = 0;
    double sigma = 0;
    double lhs = 0;
    double rhs = 0;
    double rel_err = 0;
    double tail_bound = 0;
    double quadrature_estimate_error = 0;
    double tolerance = 0;
    bool pass = false;
    std::string note;
};

inline constexpr double kRelFloor = 1e-300;

inline double relative_error(double lhs, double rhs) {
    return std::abs(lhs - rhs) / std::max(std::abs(rhs), kRelFloor);
}

/// Fills rel_err and pass: rel_err must not exceed tolerance minus the
/// certified budget (tail + quadrature, relative to rhs).
inline void finalize(TransformCheckReport& r, double tolerance) {
    r.tolerance = tolerance;
    r.rel_err = relative_error(r.lhs, r.rhs);
    const double budget = (r.tail_bound + r.quadrature_estimate_error) / std::max(std::abs(r.rhs), kRelFloor);
    r.pass = std::isfinite(r.rel_err) && r.rel_err <= tolerance - budget;
}

/// One identity residual from the Fredholm side.
struct IdentityReport {
    std::string name;
    double t = 0;
    double theta = 0;
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
    std::string note;
};

inline IdentityReport make_identity(std::string name, double t, double theta, double residual, double tolerance,
                                    std::string note = {}) {
    IdentityReport r{std::move(name), t, theta, residual, tolerance, false, std::move(note)};
    r.pass = std::isfinite(residual) && residual <= tolerance;
    return r;
}

}  // namespace zk

#endif  // ZK_REPORTS_HPP
