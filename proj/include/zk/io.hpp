#ifndef ZK_IO_HPP
#define ZK_IO_HPP

// Run configuration, float formatting and CSV/JSON output.

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <boost/version.hpp>
#include <json.hpp>

#include "fredholm.hpp"

namespace zk {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest decimal string that reads back to the same double.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

inline std::string format_double(long double v) { return format_double(static_cast<double>(v)); }

/// All knobs of a run. Every field has a CLI flag of the same name.
struct RunConfig {
    double theta = 2;
    int order = 14;
    double x_max = 8;
    double t_max = 2;
    int t_steps = 40;
    int panels_per_unit = 8;
    int nodes_per_panel = 16;
    std::vector<double> sigma_grid{2, 3, 4};
    std::vector<double> t_grid{0.25, 0.5, 1, 1.5, 2};
    std::string format = "csv";
    std::string output = "-";

    // verification
    double fd_step = 1e-3;
    bool richardson = false;
    double tol_psi = 1e-7;
    double tol_transform = 1e-6;
    double tol_chain = 1e-6;
    double tol_fd = 1e-4;
    double tol_exp_integral = 1e-6;
    double tol_interp = 1e-8;
    double tol_nodal = 1e-10;
    double kiv_x = 3;
    int sweep_nodes_per_panel = 12;
    int grading_levels = -1;
    bool strict = false;
    bool synthetic_zero = false;

    void validate() const {
        if (!(theta > 1)) throw std::invalid_argument("theta must be > 1");
        if (order < 2 || order > kMaxOrder) throw std::invalid_argument("order must lie in [2, 60]");
        if (!(x_max > 0) || x_max > 10) throw std::invalid_argument("x_max must lie in (0, 10]");
        if (!(t_max >= 0) || t_max > x_max / 2) throw std::invalid_argument("t_max must satisfy 0 <= t_max <= x_max/2");
        if (t_steps < 1 || panels_per_unit < 1 || nodes_per_panel < 1 || sweep_nodes_per_panel < 1)
            throw std::invalid_argument("counts must be positive");
        for (double s : sigma_grid) {
            if (!(s >= 2 && s <= 6)) throw std::invalid_argument("sigma grid must lie in [2, 6]");
        }
        for (double t : t_grid) {
            if (!(t >= 0) || t > x_max / 2) throw std::invalid_argument("t grid must lie in [0, x_max/2]");
        }
        if (grading_levels < -1 || grading_levels > 40) throw std::invalid_argument("grading_levels must lie in [-1, 40]");
        if (format != "csv" && format != "json") throw std::invalid_argument("format must be csv or json");
        if (!(fd_step > 0)) throw std::invalid_argument("fd_step must be > 0");
    }

    DiscretizationOptions discretization() const {
        DiscretizationOptions o;
        o.panels_per_unit = panels_per_unit;
        o.nodes_per_panel = nodes_per_panel;
        o.grading_levels = grading_levels;
        return o;
    }
};

inline nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["theta"] = c.theta;
    j["order"] = c.order;
    j["x_max"] = c.x_max;
    j["t_max"] = c.t_max;
    j["t_steps"] = c.t_steps;
    j["panels_per_unit"] = c.panels_per_unit;
    j["nodes_per_panel"] = c.nodes_per_panel;
    j["sigma_grid"] = c.sigma_grid;
    j["t_grid"] = c.t_grid;
    j["format"] = c.format;
    j["output"] = c.output;
    j["fd_step"] = c.fd_step;
    j["richardson"] = c.richardson;
    j["tol_psi"] = c.tol_psi;
    j["tol_transform"] = c.tol_transform;
    j["tol_chain"] = c.tol_chain;
    j["tol_fd"] = c.tol_fd;
    j["tol_exp_integral"] = c.tol_exp_integral;
    j["tol_interp"] = c.tol_interp;
    j["tol_nodal"] = c.tol_nodal;
    j["kiv_x"] = c.kiv_x;
    j["sweep_nodes_per_panel"] = c.sweep_nodes_per_panel;
    j["grading_levels"] = c.grading_levels;
    j["strict"] = c.strict;
    j["synthetic_zero"] = c.synthetic_zero;
    return j;
}

inline nlohmann::ordered_json versions_json() {
    nlohmann::ordered_json j;
    j["zk"] = kVersion;
    j["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                 std::to_string(EIGEN_MINOR_VERSION);
    j["boost"] = BOOST_LIB_VERSION;
#ifdef __VERSION__
    j["compiler"] = __VERSION__;
#endif
    return j;
}

/// Doubles that are not finite have no JSON literal; they are written as strings.
inline nlohmann::ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

/// Column-ordered table that writes as CSV (with a config comment header) or JSON.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add(std::vector<std::string> row) {
        if (row.size() != columns_.size()) throw std::logic_error("Table::add: column count mismatch");
        rows_.push_back(std::move(row));
    }

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    void write_csv(std::ostream& os, const nlohmann::ordered_json& meta) const {
        os << "# " << meta.dump() << "\n";
        for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
        os << "\n";
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << "\n";
        }
    }

    // Cells are emitted verbatim when they parse as JSON numbers, otherwise as strings.
    void write_json(std::ostream& os, const nlohmann::ordered_json& meta) const {
        nlohmann::ordered_json j = meta;
        j["columns"] = columns_;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : rows_) {
            auto row = nlohmann::ordered_json::array();
            for (const auto& cell : r) {
                auto parsed = nlohmann::ordered_json::parse(cell, nullptr, false);
                row.push_back(parsed.is_number() ? parsed : nlohmann::ordered_json(cell));
            }
            arr.push_back(row);
        }
        j["rows"] = arr;
        os << j.dump(2) << "\n";
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes to the named file, or stdout for "-".
template <class F>
void with_output(const std::string& path, F&& f) {
    if (path == "-" || path.empty()) {
        f(std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    f(os);
    if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace zk

#endif  // ZK_IO_HPP
