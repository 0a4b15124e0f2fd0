#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "snnbp/sweep.hpp"
#include "snnbp/tanner_graph.hpp"

using namespace snnbp;

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
    return v;
}

}  // namespace

TEST_CASE("transfer table reproduces the staircase") {
    SECTION("L=1 is a two-valued step") {
        auto cfg = ScnuConfig::coupled(1, 1.0, 1.0);
        auto grid = linspace(0.0, 4.0, 401);
        auto table = characterize_scnu(cfg, grid);
        for (auto& [m, raw] : table) {
            REQUIRE((raw == 0.0 || raw == cfg.theta2));
            REQUIRE(raw == (m > cfg.theta1 ? cfg.theta2 : 0.0));
        }
    }
    SECTION("L=4 saturates at 4*theta2") {
        auto cfg = ScnuConfig::coupled(4, 1.0, 1.0);
        auto table = characterize_scnu(cfg, std::vector<double>{4.5, 6.0, 100.0});
        for (auto& [m, raw] : table) REQUIRE(raw == 4.0 * cfg.theta2);
    }
    SECTION("monotone with exactly L+1 distinct values") {
        auto cfg = ScnuConfig::coupled(8, 0.7, 1.0);
        auto grid = linspace(0.0, 8.0, 1000);
        auto table = characterize_scnu(cfg, grid);
        double prev = -1.0;
        std::vector<double> distinct;
        for (auto& [m, raw] : table) {
            REQUIRE(raw >= prev);
            prev = raw;
            if (distinct.empty() || raw != distinct.back()) distinct.push_back(raw);
        }
        REQUIRE(static_cast<int>(distinct.size()) == 9);
    }
    SECTION("with theta1 = theta2 the staircase tracks the unit-slope line from below") {
        auto cfg = ScnuConfig::coupled(8, 1.0, 1.0);
        auto grid = linspace(0.0, 8.0, 801);
        for (auto& [m, raw] : characterize_scnu(cfg, grid)) {
            REQUIRE(raw <= m);
            REQUIRE(raw >= m - cfg.theta2);
        }
    }
    SECTION("negative magnitudes are rejected") {
        auto cfg = ScnuConfig::coupled(1, 1.0, 1.0);
        REQUIRE_THROWS_AS(characterize_scnu(cfg, std::vector<double>{-1.0}), config_error);
    }
}

TEST_CASE("sweep validation") {
    SweepConfig cfg;
    cfg.levels = 4;
    cfg.theta1_grid = {};
    REQUIRE_THROWS_AS(cfg.validate(), config_error);
    cfg.theta1_grid = {0.5, 0.5};
    REQUIRE_THROWS_AS(cfg.validate(), config_error);
    cfg.theta1_grid = {-0.5, 0.5};
    REQUIRE_THROWS_AS(cfg.validate(), config_error);
    cfg.theta1_grid = {0.5, 1.0};
    REQUIRE_NOTHROW(cfg.validate());
}

TEST_CASE("sweep couples theta2 = gamma * theta1 and finds the argmin") {
    auto g = construct_regular_code(120, 3, 6, 6);
    SweepConfig cfg;
    cfg.levels = 4;
    cfg.gamma = 0.5;
    cfg.design_ebn0_db = 2.0;
    cfg.theta1_grid = {0.1, 0.7, 3.5};
    cfg.base.decoder.iterations = 20;
    cfg.base.stop.min_bit_errors = 60;
    cfg.base.stop.max_codewords = 4000;
    cfg.base.master_seed = 5;
    cfg.base.code_rate = 0.5;

    auto r = sweep_theta1(g, cfg);
    REQUIRE(r.points.size() == 3);
    for (auto& p : r.points) REQUIRE(p.theta2 == cfg.gamma * p.theta1);
    for (auto& p : r.points) REQUIRE(p.ber.ebn0_db == 2.0);
    REQUIRE(r.theta1_star == r.points[r.argmin_index].theta1);
    for (auto& p : r.points)
        REQUIRE(r.points[r.argmin_index].ber.ber <= p.ber.ber);

    auto r2 = sweep_theta1(g, cfg);
    REQUIRE(r2.argmin_index == r.argmin_index);
    for (std::size_t i = 0; i < r.points.size(); ++i)
        REQUIRE(r2.points[i].ber.ber == r.points[i].ber.ber);
}

TEST_CASE("degenerate single-point grid is its own argmin; ties go left") {
    auto g = construct_regular_code(60, 3, 6, 2);
    SweepConfig cfg;
    cfg.levels = 1;
    cfg.gamma = 1.0;
    cfg.design_ebn0_db = 200.0;  // noiseless: every point has ber 0
    cfg.theta1_grid = {0.8};
    cfg.base.stop.max_codewords = 10;
    cfg.base.code_rate = 0.5;
    auto r = sweep_theta1(g, cfg);
    REQUIRE(r.argmin_index == 0);
    REQUIRE(r.theta1_star == 0.8);
    REQUIRE(r.theta2_star == 0.8);

    cfg.theta1_grid = {0.8, 1.6};  // both zero-error: tie resolves to 0.8
    auto r2 = sweep_theta1(g, cfg);
    REQUIRE(r2.argmin_index == 0);
    REQUIRE(r2.points[0].ber.ber == r2.points[1].ber.ber);
}

TEST_CASE("sweep csv headers") {
    SweepResult r;
    r.points.push_back({0.5, 0.5, BerPoint{}});
    REQUIRE(sweep_csv(r).find("theta1,theta2,ber,wilson_low,wilson_high") == 0);
    std::vector<std::pair<double, double>> t{{0.0, 0.0}};
    REQUIRE(transfer_csv(t).find("min_mag,raw_output") == 0);
}
