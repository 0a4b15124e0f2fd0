// Flooding-schedule message-passing decoder. One engine drives all
// check-node rules: SPA, MS, OMS, NMS, and the spiking check-node update in
// its single-level (elena) and multi-level (ml-elena) forms, the latter two
// with either the closed-form staircase or full LIF-neuron emulation behind
// the same contract.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cn_updates.hpp"
#include "errors.hpp"
#include "scnu.hpp"
#include "tanner_graph.hpp"

namespace snnbp {

enum class Algorithm { spa, ms, oms, nms, elena, ml_elena };

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::spa: return "spa";
        case Algorithm::ms: return "ms";
        case Algorithm::oms: return "oms";
        case Algorithm::nms: return "nms";
        case Algorithm::elena: return "elena";
        case Algorithm::ml_elena: return "ml-elena";
    }
    return "?";
}

inline Algorithm algorithm_from_name(const std::string& name) {
    if (name == "spa") return Algorithm::spa;
    if (name == "ms") return Algorithm::ms;
    if (name == "oms") return Algorithm::oms;
    if (name == "nms") return Algorithm::nms;
    if (name == "elena") return Algorithm::elena;
    if (name == "ml-elena") return Algorithm::ml_elena;
    throw config_error("unknown decoder algorithm: " + name);
}

struct DecoderConfig {
    Algorithm algorithm = Algorithm::nms;
    int iterations = 20;
    double nms_lambda = 0.75;  // nms only
    double oms_offset = 0.0;   // oms only
    ScnuConfig scnu{};         // elena / ml-elena only
    bool early_stop = false;   // fixed iteration count by default

    bool uses_scnu() const {
        return algorithm == Algorithm::elena || algorithm == Algorithm::ml_elena;
    }

    void validate() const {
        if (iterations < 0) throw config_error("iterations must be >= 0");
        if (algorithm == Algorithm::nms && !(nms_lambda > 0.0 && nms_lambda <= 1.0))
            throw config_error("nms scaling factor must lie in (0, 1]");
        if (algorithm == Algorithm::oms && !(oms_offset >= 0.0))
            throw config_error("oms offset must be >= 0");
        if (uses_scnu()) {
            scnu.validate();
            if (algorithm == Algorithm::elena && scnu.levels != 1)
                throw config_error("elena is the single-level decoder; use ml-elena for L > 1");
        }
    }
};

/// Compact human-readable configuration tag for result files.
inline std::string decoder_descriptor(const DecoderConfig& c) {
    std::string s = algorithm_name(c.algorithm);
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", v);
        return std::string(buf);
    };
    switch (c.algorithm) {
        case Algorithm::nms: s += "(lambda=" + num(c.nms_lambda) + ")"; break;
        case Algorithm::oms: s += "(offset=" + num(c.oms_offset) + ")"; break;
        case Algorithm::elena:
        case Algorithm::ml_elena:
            s += "(L=" + std::to_string(c.scnu.levels) + ",theta1=" + num(c.scnu.theta1) +
                 ",theta2=" + num(c.scnu.theta2) +
                 (c.scnu.backend == ScnuBackend::snn_emulation ? ",snn" : "") + ")";
            break;
        default: break;
    }
    s += "-it" + std::to_string(c.iterations);
    return s;
}

struct DecodeResult {
    std::vector<std::uint8_t> bits;  // hard decisions, 1 iff output LLR <= 0
    std::vector<double> output_llr;
    int iterations_run = 0;
    bool converged = false;  // zero syndrome
};

class Decoder {
public:
    Decoder(const TannerGraph& g, DecoderConfig cfg)
        : g_(&g), cfg_(std::move(cfg)), li_coeffs_(cfg_.scnu.li_params) {
        cfg_.validate();
        if (g_->n_edges() == 0) throw config_error("decode: graph has no edges");
        if (g_->min_cn_degree() < 2)
            throw config_error("decode: graph has a CN of degree < 2 (empty extrinsic set)");
        if (g_->min_vn_degree() < 1) throw config_error("decode: graph has an unchecked VN");
        const int e = g_->n_edges();
        v2c_.assign(e, 0.0);
        c2v_.assign(e, 0.0);
        const int dmax = g_->max_cn_degree();
        tanh_scratch_.assign(dmax, 0.0);
        fwd_scratch_.assign(dmax + 1, 0.0);
        if (cfg_.uses_scnu()) {
            li_v_.assign(e, 0.0);
            li_i_.assign(e, 0.0);
            if (cfg_.scnu.backend == ScnuBackend::snn_emulation) {
                mags_scratch_.assign(dmax, 0.0);
                if (cfg_.scnu.persistent_inner_state) {
                    inner_.resize(e);
                    for (int j = 0; j < g_->n_cns(); ++j) {
                        const int d = g_->cn_degree(j);
                        for (int k = 0; k < d; ++k)
                            inner_[g_->cn_offset(j) + k].resize(cfg_.scnu.levels, d - 1);
                    }
                } else {
                    inner_.resize(1);
                }
            }
        }
    }

    const TannerGraph& graph() const { return *g_; }
    const DecoderConfig& config() const { return cfg_; }

    DecodeResult decode(std::span<const double> llr) {
        DecodeResult r;
        decode(llr, r);
        return r;
    }

    void decode(std::span<const double> llr, DecodeResult& out) {
        if (static_cast<int>(llr.size()) != g_->n_vns())
            throw config_error("decode: LLR length does not match block length");
        const int n = g_->n_vns();
        out.bits.resize(n);
        out.output_llr.resize(n);

        for (int e = 0; e < g_->n_edges(); ++e) v2c_[e] = llr[g_->vn_of_edge(e)];
        std::fill(c2v_.begin(), c2v_.end(), 0.0);

        int it = 0;
        bool stopped = false;
        while (it < cfg_.iterations && !stopped) {
            run_cn_stage();
            run_vn_stage(llr);
            ++it;
            if (cfg_.early_stop) {
                finalize(llr, out);
                if (out.converged) stopped = true;
            }
        }
        if (!cfg_.early_stop || it == 0) finalize(llr, out);
        out.iterations_run = it;
        reset_state();  // clear all neuron memory before the next codeword
    }

    /// Clears per-edge neuron memory (no-op for memoryless algorithms).
    void reset_state() {
        std::fill(li_v_.begin(), li_v_.end(), 0.0);
        std::fill(li_i_.begin(), li_i_.end(), 0.0);
        for (auto& st : inner_) st.reset();
    }

    // Low-level stepping, used by tests and characterization.
    void load_v2c(std::span<const double> per_edge) {
        if (static_cast<int>(per_edge.size()) != g_->n_edges())
            throw config_error("load_v2c: need one message per edge");
        std::copy(per_edge.begin(), per_edge.end(), v2c_.begin());
    }
    std::span<const double> v2c_messages() const { return v2c_; }
    std::span<const double> c2v_messages() const { return c2v_; }

    void run_cn_stage() {
        switch (cfg_.algorithm) {
            case Algorithm::spa: cn_stage_spa(); break;
            default:
                if (cfg_.uses_scnu() && cfg_.scnu.backend == ScnuBackend::snn_emulation)
                    cn_stage_snn();
                else
                    cn_stage_min_based();
                break;
        }
    }

private:
    // One iteration of the edge's LI memory: substeps neuron steps with the
    // staircase output held at the input. Mirrors scnu_li_advance exactly.
    double advance_li_edge(int e, double raw) {
        for (int s = 0; s < cfg_.scnu.substeps; ++s) {
            const double v_new = (li_v_[e] + li_i_[e]) * li_coeffs_.d_m;
            li_i_[e] = li_i_[e] * li_coeffs_.d_s + raw;
            li_v_[e] = v_new;
        }
        return li_v_[e];
    }

    void run_vn_stage(std::span<const double> llr) {
        for (int i = 0; i < g_->n_vns(); ++i) {
            double total = llr[i];
            auto edges = g_->vn_edges(i);
            for (auto e : edges) total += c2v_[e];
            for (auto e : edges) v2c_[e] = total - c2v_[e];
        }
    }

    void finalize(std::span<const double> llr, DecodeResult& out) const {
        for (int i = 0; i < g_->n_vns(); ++i) {
            double total = llr[i];
            for (auto e : g_->vn_edges(i)) total += c2v_[e];
            out.output_llr[i] = total;
            out.bits[i] = hard_decision(total) ? 1 : 0;
        }
        out.converged = true;
        for (int j = 0; j < g_->n_cns() && out.converged; ++j) {
            std::uint8_t p = 0;
            for (auto v : g_->cn_vns(j)) p ^= out.bits[v];
            if (p) out.converged = false;
        }
    }

    void cn_stage_spa() {
        for (int j = 0; j < g_->n_cns(); ++j) {
            const int o = g_->cn_offset(j);
            const int d = g_->cn_degree(j);
            double parity = 1.0;
            for (int k = 0; k < d; ++k) {
                const double v = v2c_[o + k];
                parity *= sign_of(v);
                tanh_scratch_[k] = std::tanh(std::min(std::abs(v), kLlrMagMax) * 0.5);
            }
            fwd_scratch_[0] = 1.0;
            for (int k = 0; k < d; ++k) fwd_scratch_[k + 1] = fwd_scratch_[k] * tanh_scratch_[k];
            double back = 1.0;
            for (int k = d - 1; k >= 0; --k) {
                const double prod = std::min(fwd_scratch_[k] * back, 1.0 - 1e-15);
                back *= tanh_scratch_[k];
                const double alpha = std::min(2.0 * std::atanh(prod), kLlrMagMax);
                c2v_[o + k] = alpha * parity * sign_of(v2c_[o + k]);
            }
        }
    }

    void cn_stage_min_based() {
        for (int j = 0; j < g_->n_cns(); ++j) {
            const int o = g_->cn_offset(j);
            const int d = g_->cn_degree(j);
            double min1 = std::numeric_limits<double>::infinity();
            double min2 = min1;
            int argmin = -1;
            double parity = 1.0;
            for (int k = 0; k < d; ++k) {
                const double v = v2c_[o + k];
                parity *= sign_of(v);
                const double a = std::abs(v);
                if (a < min1) {
                    min2 = min1;
                    min1 = a;
                    argmin = k;
                } else if (a < min2) {
                    min2 = a;
                }
            }
            for (int k = 0; k < d; ++k) {
                const double m = (k == argmin) ? min2 : min1;
                const double beta = parity * sign_of(v2c_[o + k]);
                const int e = o + k;
                switch (cfg_.algorithm) {
                    case Algorithm::ms: c2v_[e] = m * beta; break;
                    case Algorithm::oms: c2v_[e] = std::max(m - cfg_.oms_offset, 0.0) * beta; break;
                    case Algorithm::nms: c2v_[e] = cfg_.nms_lambda * m * beta; break;
                    default: {  // elena / ml-elena, functional backend
                        const double raw = beta * scnu_raw(m, cfg_.scnu);
                        c2v_[e] = advance_li_edge(e, raw);
                        break;
                    }
                }
            }
        }
    }

    void cn_stage_snn() {
        const bool persistent = cfg_.scnu.persistent_inner_state;
        for (int j = 0; j < g_->n_cns(); ++j) {
            const int o = g_->cn_offset(j);
            const int d = g_->cn_degree(j);
            for (int k = 0; k < d; ++k) {
                const int e = o + k;
                int n_in = 0;
                double beta = 1.0;
                for (int k2 = 0; k2 < d; ++k2) {
                    if (k2 == k) continue;
                    mags_scratch_[n_in++] = std::abs(v2c_[o + k2]);
                    beta *= sign_of(v2c_[o + k2]);
                }
                ScnuEdgeNeurons& st = persistent ? inner_[e] : inner_[0];
                const double raw =
                    scnu_snn_raw({mags_scratch_.data(), static_cast<std::size_t>(n_in)}, beta,
                                 cfg_.scnu, &st);
                c2v_[e] = advance_li_edge(e, raw);
            }
        }
    }

    const TannerGraph* g_;
    DecoderConfig cfg_;
    LifCoeffs li_coeffs_;
    std::vector<double> v2c_, c2v_;
    std::vector<double> li_v_, li_i_;  // per-edge LI memory (SCNU decoders)
    std::vector<ScnuEdgeNeurons> inner_;
    std::vector<double> tanh_scratch_, fwd_scratch_, mags_scratch_;
};

}  // namespace snnbp
