// Check-node update rules, one edge at a time: sum-product, min-sum, and
// the offset/normalized variants. Each takes the extrinsic input set
// M(j)\{i} and returns the message to VN i.
#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "errors.hpp"

namespace snnbp {

// Message magnitudes are clipped here; keeps tanh products representable
// away from +-1.
inline constexpr double kLlrMagMax = 30.0;

inline double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

/// Parity of the extrinsic input signs (+1 or -1).
inline double sign_product(std::span<const double> inputs) {
    double s = 1.0;
    for (double v : inputs) s *= sign_of(v);
    return s;
}

/// Sum-product rule: 2*atanh(prod tanh(|L|/2)) with the sign parity.
/// Magnitudes are clipped to kLlrMagMax and the product is guarded away
/// from 1 before atanh.
inline double spa_cn_update(std::span<const double> extrinsic_inputs) {
    if (extrinsic_inputs.empty()) throw config_error("CN update needs a nonempty extrinsic set");
    double prod = 1.0;
    for (double v : extrinsic_inputs)
        prod *= std::tanh(std::min(std::abs(v), kLlrMagMax) * 0.5);
    prod = std::min(prod, 1.0 - 1e-15);
    const double alpha = std::min(2.0 * std::atanh(prod), kLlrMagMax);
    return alpha * sign_product(extrinsic_inputs);
}

inline double min_extrinsic_magnitude(std::span<const double> inputs) {
    double m = std::abs(inputs[0]);
    for (double v : inputs.subspan(1)) m = std::min(m, std::abs(v));
    return m;
}

/// Plain min-sum: magnitude is the minimum extrinsic magnitude.
inline double ms_cn_update(std::span<const double> extrinsic_inputs) {
    if (extrinsic_inputs.empty()) throw config_error("CN update needs a nonempty extrinsic set");
    return min_extrinsic_magnitude(extrinsic_inputs) * sign_product(extrinsic_inputs);
}

/// Offset min-sum: max(min - offset, 0).
inline double oms_cn_update(std::span<const double> extrinsic_inputs, double offset) {
    if (extrinsic_inputs.empty()) throw config_error("CN update needs a nonempty extrinsic set");
    const double alpha = std::max(min_extrinsic_magnitude(extrinsic_inputs) - offset, 0.0);
    return alpha * sign_product(extrinsic_inputs);
}

/// Normalized min-sum: lambda * min.
inline double nms_cn_update(std::span<const double> extrinsic_inputs, double lambda) {
    if (extrinsic_inputs.empty()) throw config_error("CN update needs a nonempty extrinsic set");
    return lambda * min_extrinsic_magnitude(extrinsic_inputs) * sign_product(extrinsic_inputs);
}

/// Variable-node update: channel LLR plus all incoming CN messages except
/// the one from the target CN (position `exclude`).
inline double vn_update(double channel_llr, std::span<const double> incoming_c2v, int exclude) {
    double sum = channel_llr;
    for (int k = 0; k < static_cast<int>(incoming_c2v.size()); ++k)
        if (k != exclude) sum += incoming_c2v[k];
    return sum;
}

/// Output LLR: channel LLR plus every incoming CN message.
inline double output_llr(double channel_llr, std::span<const double> incoming_c2v) {
    double sum = channel_llr;
    for (double v : incoming_c2v) sum += v;
    return sum;
}

/// Hard decision: bit 1 iff the output LLR is <= 0 (a tie decides 1).
inline bool hard_decision(double llr_out) { return llr_out <= 0.0; }

}  // namespace snnbp
