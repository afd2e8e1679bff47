#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "zk/io.hpp"

TEST(Io, FormatDoubleRoundTrips) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-50, 50);
    for (int i = 0; i < 1000; ++i) {
        double v = std::exp(U(rng)) * (i % 2 ? 1 : -1);
        EXPECT_EQ(std::stod(zk::format_double(v)), v);
    }
    EXPECT_EQ(zk::format_double(2.0), "2");
    EXPECT_EQ(zk::format_double(0.1), "0.1");
    EXPECT_EQ(zk::format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
    EXPECT_EQ(zk::format_double(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(zk::format_double(1.5L), "1.5");
}

TEST(Io, DefaultConfigIsValid) {
    zk::RunConfig c;
    EXPECT_NO_THROW(c.validate());
    auto o = c.discretization();
    EXPECT_EQ(o.panels_per_unit, 8);
    EXPECT_EQ(o.nodes_per_panel, 16);
}

TEST(Io, ConfigValidationRejectsBadValues) {
    auto bad = [](auto mutate) {
        zk::RunConfig c;
        mutate(c);
        EXPECT_THROW(c.validate(), std::invalid_argument);
    };
    bad([](zk::RunConfig& c) { c.theta = 1; });
    bad([](zk::RunConfig& c) { c.order = 1; });
    bad([](zk::RunConfig& c) { c.order = 61; });
    bad([](zk::RunConfig& c) { c.x_max = 11; });
    bad([](zk::RunConfig& c) { c.t_max = 5; });
    bad([](zk::RunConfig& c) { c.t_steps = 0; });
    bad([](zk::RunConfig& c) { c.sigma_grid = {1.5}; });
    bad([](zk::RunConfig& c) { c.t_grid = {-0.1}; });
    bad([](zk::RunConfig& c) { c.format = "xml"; });
    bad([](zk::RunConfig& c) { c.fd_step = 0; });
}

TEST(Io, ConfigJsonHasEveryField) {
    auto j = zk::to_json(zk::RunConfig{});
    EXPECT_EQ(j["theta"], 2.0);
    EXPECT_EQ(j["order"], 14);
    EXPECT_EQ(j["tol_fd"], 1e-4);
    EXPECT_EQ(j.size(), 25u);
    auto v = zk::versions_json();
    EXPECT_EQ(v["zk"], zk::kVersion);
    EXPECT_TRUE(v.contains("eigen"));
}

TEST(Io, TableCsv) {
    zk::Table t({"n", "lambda"});
    t.add({"1", "1"});
    t.add({"2", "2.5"});
    EXPECT_THROW(t.add({"3"}), std::logic_error);
    std::ostringstream os;
    t.write_csv(os, {{"theta", 2.0}});
    EXPECT_EQ(os.str(), "# {\"theta\":2.0}\nn,lambda\n1,1\n2,2.5\n");
}

TEST(Io, TableJsonParsesNumbers) {
    zk::Table t({"t", "note"});
    t.add({"0.5", "ok"});
    t.add({"nan", "flag"});
    std::ostringstream os;
    t.write_json(os, {{"suite", "x"}});
    auto j = nlohmann::json::parse(os.str());
    EXPECT_EQ(j["columns"][1], "note");
    EXPECT_EQ(j["rows"][0][0], 0.5);
    EXPECT_EQ(j["rows"][1][0], "nan");
    EXPECT_EQ(j["suite"], "x");
}

TEST(Io, JsonNumberForNonFinite) {
    EXPECT_EQ(zk::json_number(1.25), 1.25);
    EXPECT_EQ(zk::json_number(std::numeric_limits<double>::infinity()), "inf");
}
