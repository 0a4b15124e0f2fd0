// Threshold line search for the spiking check-node decoders and the SCNU
// transfer-curve generator.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scnu.hpp"
#include "simulation.hpp"
#include "tanner_graph.hpp"

namespace snnbp {

struct SweepConfig {
    std::vector<double> theta1_grid;  // strictly increasing, positive
    double gamma = 1.0;               // theta2 = gamma * theta1 at every point
    int levels = 1;
    double design_ebn0_db = 0.0;  // BER is evaluated at the design point
    SimParams base;               // decoder/scnu fields are overwritten per point

    void validate() const {
        if (theta1_grid.empty()) throw config_error("theta1 grid must not be empty");
        double prev = 0.0;
        for (double t : theta1_grid) {
            if (!(t > prev)) throw config_error("theta1 grid must be positive and strictly increasing");
            prev = t;
        }
        if (levels < 1) throw config_error("levels must be >= 1");
    }
};

struct SweepPoint {
    double theta1 = 0.0;
    double theta2 = 0.0;
    BerPoint ber;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    int argmin_index = 0;  // lowest BER; ties go to the smaller theta1
    double theta1_star = 0.0;
    double theta2_star = 0.0;
};

/// Grid line search over theta1 with theta2 = gamma * theta1. All points
/// share the design operating point and the noise stream, so differences
/// between points are decoder differences only.
inline SweepResult sweep_theta1(const TannerGraph& g, const SweepConfig& cfg,
                                const std::function<void(const SweepPoint&)>& on_point = {}) {
    cfg.validate();
    SweepResult result;
    result.points.reserve(cfg.theta1_grid.size());
    for (double theta1 : cfg.theta1_grid) {
        SimParams params = cfg.base;
        params.ebn0_grid = {cfg.design_ebn0_db};
        params.reliability = ReliabilityMode::fixed;
        params.design_ebn0_db = cfg.design_ebn0_db;
        params.decoder.algorithm = cfg.levels == 1 ? Algorithm::elena : Algorithm::ml_elena;
        params.decoder.scnu.levels = cfg.levels;
        params.decoder.scnu.theta1 = theta1;
        params.decoder.scnu.theta2 = cfg.gamma * theta1;
        params.decoder.scnu.gamma = cfg.gamma;

        SweepPoint point;
        point.theta1 = theta1;
        point.theta2 = params.decoder.scnu.theta2;
        point.ber = Simulator(g, params).run_point(0);
        result.points.push_back(point);
        if (on_point) on_point(result.points.back());
    }
    result.argmin_index = 0;
    for (int i = 1; i < static_cast<int>(result.points.size()); ++i)
        if (result.points[i].ber.ber < result.points[result.argmin_index].ber.ber)
            result.argmin_index = i;
    result.theta1_star = result.points[result.argmin_index].theta1;
    result.theta2_star = result.points[result.argmin_index].theta2;
    return result;
}

/// Raw SCNU transfer table: staircase output (memory neuron bypassed) for
/// each minimum-magnitude grid value.
inline std::vector<std::pair<double, double>> characterize_scnu(const ScnuConfig& cfg,
                                                                std::span<const double> min_mag_grid) {
    cfg.validate();
    std::vector<std::pair<double, double>> table;
    table.reserve(min_mag_grid.size());
    for (double m : min_mag_grid) {
        if (m < 0.0) throw config_error("characterize: magnitudes must be nonnegative");
        table.emplace_back(m, scnu_raw(m, cfg));
    }
    return table;
}

/// CSV: theta1,theta2,ber,wilson_low,wilson_high
inline std::string sweep_csv(const SweepResult& r) {
    std::ostringstream os;
    os << "theta1,theta2,ber,wilson_low,wilson_high\n";
    for (const auto& p : r.points)
        os << format_double(p.theta1) << ',' << format_double(p.theta2) << ','
           << format_double(p.ber.ber) << ',' << format_double(p.ber.wilson_low) << ','
           << format_double(p.ber.wilson_high) << '\n';
    return os.str();
}

/// CSV: min_mag,raw_output
inline std::string transfer_csv(const std::vector<std::pair<double, double>>& table) {
    std::ostringstream os;
    os << "min_mag,raw_output\n";
    for (const auto& [m, raw] : table)
        os << format_double(m) << ',' << format_double(raw) << '\n';
    return os.str();
}

}  // namespace snnbp
