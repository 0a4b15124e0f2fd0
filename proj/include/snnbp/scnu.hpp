// Spiking check-node update (SCNU): a bank of L parallel threshold units
// over the minimum extrinsic magnitude, summed, signed by the parity of the
// input signs, and filtered by a leaky-integrator memory neuron.
//
// The functional backend evaluates the closed-form staircase
//   raw = sign * theta2 * |{ l in 1..L : min_mag > l*theta1 }|
// directly. The snn-emulation backend realizes each threshold comparison
// with LIF neurons: every extrinsic input m drives a neuron with
// input_gain * (l*theta1 - m); a combining neuron fires iff any input
// neuron fired, suppressing that level's theta2.
//
// Neuron time runs at `substeps` steps per decoding iteration. The same
// clock drives every neuron: the threshold LIF bank holds its drive for
// `substeps` steps, and the LI memory neuron integrates the staircase
// output for `substeps` steps before the message (its potential) is read.
#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "errors.hpp"
#include "neurons.hpp"

namespace snnbp {

enum class ScnuBackend { functional, snn_emulation };

struct ScnuConfig {
    int levels = 1;       // L parallel units; level l uses threshold l*theta1
    double theta1 = 1.0;  // threshold spacing, LLR units
    double theta2 = 1.0;  // shared output amplitude, LLR units
    double gamma = 1.0;   // coupling used by parameter sweeps: theta2 = gamma*theta1
    LifParams li_params{};  // output memory neuron
    ScnuBackend backend = ScnuBackend::functional;
    int substeps = 3;  // neuron steps per decoding iteration (all neurons)

    // snn-emulation backend
    LifParams lif_params{};
    double input_gain = 10.0;      // amplification of (l*theta1 - m)
    double combine_weight = 10.0;  // synapse weight input neuron -> combining neuron
    bool persistent_inner_state = false;  // keep subthreshold charge across iterations

    static ScnuConfig coupled(int levels_, double theta1_, double gamma_ = 1.0) {
        ScnuConfig c;
        c.levels = levels_;
        c.theta1 = theta1_;
        c.gamma = gamma_;
        c.theta2 = gamma_ * theta1_;
        return c;
    }

    void validate() const {
        if (levels < 1) throw config_error("scnu: levels must be >= 1");
        if (!(theta1 > 0.0)) throw config_error("scnu: theta1 must be positive");
        if (!(theta2 > 0.0)) throw config_error("scnu: theta2 must be positive");
        if (substeps < 1) throw config_error("scnu: substeps must be >= 1");
        li_params.validate();
        if (backend == ScnuBackend::snn_emulation) {
            lif_params.validate();
            if (!(input_gain > 0.0)) throw config_error("scnu: input_gain must be positive");
            if (!(combine_weight * lif_params.decay_m() > lif_params.v_th))
                throw config_error(
                    "scnu: combine_weight too small to relay a spike within one step");
        }
    }
};

/// Number of levels whose threshold the minimum magnitude strictly exceeds.
inline int scnu_active_levels(double min_mag, const ScnuConfig& cfg) {
    int count = 0;
    for (int l = 1; l <= cfg.levels; ++l)
        if (min_mag > l * cfg.theta1) ++count;
    return count;
}

/// k-fold sum of theta2. The combination of levels is a summation, so this
/// (not k * theta2, which can differ in the last ulp) is the canonical value
/// of a k-level output.
inline double scnu_level_sum(int k, double theta2) {
    double acc = 0.0;
    for (int i = 0; i < k; ++i) acc += theta2;
    return acc;
}

/// Staircase magnitude before sign and memory filtering; takes L+1 values
/// {0, theta2, theta2+theta2, ...}.
inline double scnu_raw(double min_mag, const ScnuConfig& cfg) {
    return scnu_level_sum(scnu_active_levels(min_mag, cfg), cfg.theta2);
}

/// Advances the LI memory neuron by one decoding iteration: the staircase
/// output is held at its input for `substeps` neuron steps.
inline double scnu_li_advance(LiState& li, double raw, const LifCoeffs& c, int substeps) {
    for (int s = 0; s < substeps; ++s) li = li_step(li, c, raw);
    return li.v;
}

/// Functional SCNU: staircase output routed through the LI memory neuron.
/// The returned message is the neuron's potential at the end of the
/// iteration.
inline double scnu_functional(double min_mag, double sign, const ScnuConfig& cfg, LiState& li) {
    const double raw = sign * scnu_raw(min_mag, cfg);
    return scnu_li_advance(li, raw, LifCoeffs(cfg.li_params), cfg.substeps);
}

/// Inner neuron states of one SCNU in the snn-emulation backend:
/// levels * n_inputs input neurons plus one combining neuron per level.
struct ScnuEdgeNeurons {
    std::vector<LifState> inputs;     // level-major: [level][input]
    std::vector<LifState> combiners;  // one per level

    void resize(int levels, int n_inputs) {
        inputs.assign(static_cast<std::size_t>(levels) * n_inputs, LifState{});
        combiners.assign(levels, LifState{});
    }
    void reset() {
        for (auto& s : inputs) s = LifState{};
        for (auto& s : combiners) s = LifState{};
    }
};

namespace detail {

// Runs one level for one decoding iteration; true iff the combining neuron
// fired, which suppresses the level's contribution.
inline bool scnu_level_suppressed(std::span<const double> mags, int level, const ScnuConfig& cfg,
                                  const LifCoeffs& c, LifState* input_states,
                                  LifState* combiner) {
    const double threshold = level * cfg.theta1;
    bool fired = false;
    for (int s = 0; s < cfg.substeps; ++s) {
        int spikes = 0;
        for (std::size_t k = 0; k < mags.size(); ++k) {
            auto r = lif_step(input_states[k], c, cfg.input_gain * (threshold - mags[k]));
            input_states[k] = r.state;
            spikes += r.spiked ? 1 : 0;
        }
        auto rc = lif_step(*combiner, c, cfg.combine_weight * spikes);
        *combiner = rc.state;
        fired = fired || rc.spiked;
    }
    // One extra step so a spike on the final substep still reaches the
    // combining neuron's potential.
    auto rc = lif_step(*combiner, c, 0.0);
    *combiner = rc.state;
    fired = fired || rc.spiked;
    return fired;
}

}  // namespace detail

/// Level count of the emulated SCNU for one iteration. `state` may be null,
/// in which case scratch neurons are used (equivalent to the default
/// reset-each-iteration mode).
inline int scnu_snn_active_levels(std::span<const double> extrinsic_mags, const ScnuConfig& cfg,
                                  ScnuEdgeNeurons* state = nullptr) {
    const int n_in = static_cast<int>(extrinsic_mags.size());
    ScnuEdgeNeurons local;
    ScnuEdgeNeurons* st = state ? state : &local;
    if (st->combiners.size() != static_cast<std::size_t>(cfg.levels) ||
        st->inputs.size() != static_cast<std::size_t>(cfg.levels) * n_in)
        st->resize(cfg.levels, n_in);
    else if (!cfg.persistent_inner_state)
        st->reset();

    const LifCoeffs c(cfg.lif_params);
    int count = 0;
    for (int l = 1; l <= cfg.levels; ++l) {
        LifState* row = st->inputs.data() + static_cast<std::size_t>(l - 1) * n_in;
        if (!detail::scnu_level_suppressed(extrinsic_mags, l, cfg, c, row,
                                           &st->combiners[l - 1]))
            ++count;
    }
    return count;
}

/// Emulated staircase output before the memory neuron.
inline double scnu_snn_raw(std::span<const double> extrinsic_mags, double sign,
                           const ScnuConfig& cfg, ScnuEdgeNeurons* state = nullptr) {
    return sign * scnu_level_sum(scnu_snn_active_levels(extrinsic_mags, cfg, state), cfg.theta2);
}

/// Full emulated SCNU: LIF threshold bank, sign, LI memory neuron.
inline double scnu_snn(std::span<const double> extrinsic_mags, double sign, const ScnuConfig& cfg,
                       ScnuEdgeNeurons* state, LiState& li) {
    const double raw = scnu_snn_raw(extrinsic_mags, sign, cfg, state);
    return scnu_li_advance(li, raw, LifCoeffs(cfg.li_params), cfg.substeps);
}

/// Half-width of the band around each threshold inside which the emulation
/// cannot resolve the comparison within `substeps` steps. A constant drive x
/// from rest charges the candidate potential to x * v_peak(substeps), where
/// v_peak is obtained by unrolling the recursion (for tau_m = tau_s and
/// d = decay factor this equals sum_{j=1}^{S-1} j*d^j). A neuron therefore
/// fires within S steps iff gain * margin * v_peak > v_th, giving
/// margin > v_th / (gain * v_peak). Returns +inf when no drive can fire
/// within the budget (S = 1).
inline double snn_resolvable_margin(const ScnuConfig& cfg) {
    const LifCoeffs c(cfg.lif_params);
    LifState s{};
    double v_peak = 0.0;
    for (int k = 0; k < cfg.substeps; ++k) {
        const double v_next = (s.v + s.i) * c.d_m;
        s = {v_next, s.i * c.d_s + 1.0};
        v_peak = std::max(v_peak, v_next);
    }
    if (!(v_peak > 0.0)) return std::numeric_limits<double>::infinity();
    return cfg.lif_params.v_th / (cfg.input_gain * v_peak);
}

}  // namespace snnbp
