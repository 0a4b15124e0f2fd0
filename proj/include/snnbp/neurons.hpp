// Discrete-time leaky integrate-and-fire (LIF) and leaky integrator (LI)
// neuron dynamics.
//
// One step with sampling time dt:
//   i[k+1] = i[k] * exp(-dt/tau_s) + weighted_input
//   v[k+1] = (v[k] + i[k]) * exp(-dt/tau_m)        (pre-update i)
// The LIF neuron fires when the new potential strictly exceeds v_th and is
// then reset to v_rest; the LI neuron runs the same recursion without
// firing and its potential is read as the output. New input lands in the
// current first and reaches the potential one step later.
#pragma once

#include <cmath>

#include "errors.hpp"

namespace snnbp {

struct LifParams {
    double tau_m = 1.0;  // membrane time constant, ms
    double tau_s = 1.0;  // synaptic time constant, ms
    double dt = 1.0;     // sampling time, ms
    double v_th = 1.0;   // firing threshold
    double v_rest = 0.0;

    double decay_m() const { return std::exp(-dt / tau_m); }
    double decay_s() const { return std::exp(-dt / tau_s); }

    void validate() const {
        if (!(tau_m > 0.0 && tau_s > 0.0 && dt > 0.0))
            throw config_error("neuron time constants and dt must be positive");
    }
};

// Decay factors precomputed for inner loops.
struct LifCoeffs {
    double d_m, d_s, v_th, v_rest;
    explicit LifCoeffs(const LifParams& p)
        : d_m(p.decay_m()), d_s(p.decay_s()), v_th(p.v_th), v_rest(p.v_rest) {}
};

struct LifState {
    double v = 0.0;
    double i = 0.0;
};

struct LiState {
    double v = 0.0;
    double i = 0.0;
};

struct LifStepResult {
    LifState state;
    bool spiked;
};

inline LifStepResult lif_step(LifState s, const LifCoeffs& c, double weighted_input) {
    const double i_next = s.i * c.d_s + weighted_input;
    const double v_candidate = (s.v + s.i) * c.d_m;
    const bool spiked = v_candidate > c.v_th;  // strict: v == v_th stays silent
    return {{spiked ? c.v_rest : v_candidate, i_next}, spiked};
}

inline LifStepResult lif_step(LifState s, const LifParams& p, double weighted_input) {
    return lif_step(s, LifCoeffs(p), weighted_input);
}

inline LiState li_step(LiState s, const LifCoeffs& c, double weighted_input) {
    return {(s.v + s.i) * c.d_m, s.i * c.d_s + weighted_input};
}

inline LiState li_step(LiState s, const LifParams& p, double weighted_input) {
    return li_step(s, LifCoeffs(p), weighted_input);
}

// Clears the memory: v back to rest, current to zero.
inline LifState reset(const LifState&, double v_rest = 0.0) { return {v_rest, 0.0}; }
inline LiState reset(const LiState&, double v_rest = 0.0) { return {v_rest, 0.0}; }

}  // namespace snnbp
