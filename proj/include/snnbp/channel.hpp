// BPSK over the binary-input AWGN channel, all-zero codeword transmission,
// and channel-reliability (LLR scale) handling.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "errors.hpp"

namespace snnbp {

/// Noise standard deviation per real dimension for unit-energy BPSK:
/// sigma^2 = 1 / (2 * rate * 10^(ebn0_db/10)).
inline double sigma_from_ebn0(double ebn0_db, double rate) {
    if (!(rate > 0.0 && rate <= 1.0)) throw config_error("code rate must lie in (0, 1]");
    if (!std::isfinite(ebn0_db)) throw config_error("Eb/N0 must be finite");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

/// Channel reliability 2/sigma^2 = 4*Es/N0 evaluated at a design operating
/// point; decoders that hold their LLR scale fixed use this value at every
/// actual SNR.
inline double lc_for_design_point(double design_ebn0_db, double rate) {
    const double sigma = sigma_from_ebn0(design_ebn0_db, rate);
    return 2.0 / (sigma * sigma);
}

enum class ReliabilityMode { matched, fixed };

struct ChannelParams {
    double ebn0_db = 0.0;
    double rate = 1.0;
    double sigma = 1.0;  // actual channel noise
    double lc = 2.0;     // LLR scale applied to channel outputs

    /// lc tracks the actual SNR: lc = 2/sigma^2.
    static ChannelParams matched(double ebn0_db, double rate) {
        ChannelParams p;
        p.ebn0_db = ebn0_db;
        p.rate = rate;
        p.sigma = sigma_from_ebn0(ebn0_db, rate);
        p.lc = 2.0 / (p.sigma * p.sigma);
        return p;
    }

    /// lc is computed once at design_ebn0_db and held constant while the
    /// actual noise level follows ebn0_db.
    static ChannelParams fixed_design(double ebn0_db, double rate, double design_ebn0_db) {
        ChannelParams p = matched(ebn0_db, rate);
        p.lc = lc_for_design_point(design_ebn0_db, rate);
        return p;
    }

    static ChannelParams make(ReliabilityMode mode, double ebn0_db, double rate,
                              double design_ebn0_db) {
        return mode == ReliabilityMode::matched ? matched(ebn0_db, rate)
                                                : fixed_design(ebn0_db, rate, design_ebn0_db);
    }
};

struct ReceivedWord {
    std::vector<double> y;    // channel outputs
    std::vector<double> llr;  // llr[i] = y[i] * lc, exactly
};

/// Transmit the all-zero codeword: y[i] = +1 + n_i with n_i ~ N(0, sigma^2)
/// i.i.d. Deterministic for a fixed seed.
inline void transmit_all_zero(ReceivedWord& out, int n, const ChannelParams& params,
                              std::uint64_t seed) {
    if (n < 1) throw config_error("block length must be >= 1");
    out.y.resize(n);
    out.llr.resize(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, params.sigma);
    for (int i = 0; i < n; ++i) {
        out.y[i] = 1.0 + noise(rng);
        out.llr[i] = out.y[i] * params.lc;
    }
}

inline ReceivedWord transmit_all_zero(int n, const ChannelParams& params, std::uint64_t seed) {
    ReceivedWord w;
    transmit_all_zero(w, n, params, seed);
    return w;
}

}  // namespace snnbp
