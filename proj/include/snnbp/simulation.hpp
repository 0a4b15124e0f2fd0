// Monte Carlo BER/FER estimation over an Eb/N0 grid.
//
// Reproducibility contract: every codeword's noise comes from
// derive_seed(master_seed, grid_index, codeword_index), and the stopping
// rule is evaluated in codeword-index order, so a point's result is
// bit-identical for any worker count.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "channel.hpp"
#include "decoder.hpp"
#include "errors.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "tanner_graph.hpp"

namespace snnbp {

struct StopRule {
    long long min_bit_errors = 100;      // stop a point once reached...
    long long max_codewords = 1000000;   // ...or after this many codewords
};

struct SimParams {
    DecoderConfig decoder{};
    std::vector<double> ebn0_grid;
    ReliabilityMode reliability = ReliabilityMode::matched;
    double design_ebn0_db = 0.0;  // fixed mode only
    StopRule stop{};
    std::uint64_t master_seed = 1;
    int workers = 1;
    double code_rate = 0.5;  // declared k/n; drives the Eb/N0 -> sigma mapping

    void validate() const {
        if (ebn0_grid.empty()) throw config_error("Eb/N0 grid must not be empty");
        if (stop.min_bit_errors < 1) throw config_error("min_bit_errors must be >= 1");
        if (stop.max_codewords < 1) throw config_error("max_codewords must be >= 1");
        if (workers < 1) throw config_error("workers must be >= 1");
        if (!(code_rate > 0.0 && code_rate <= 1.0)) throw config_error("code rate must lie in (0, 1]");
        decoder.validate();
    }
};

struct BerPoint {
    double ebn0_db = 0.0;
    long long bits_sent = 0;
    long long bit_errors = 0;
    long long codewords_sent = 0;
    long long frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
};

class Simulator {
public:
    Simulator(const TannerGraph& g, SimParams params) : g_(&g), p_(std::move(params)) {
        p_.validate();
        Decoder probe(g, p_.decoder);  // surfaces graph/config mismatches early
        (void)probe;
    }

    const SimParams& params() const { return p_; }

    /// One grid point. grid_index selects both the Eb/N0 value and the
    /// noise stream.
    BerPoint run_point(int grid_index) {
        if (grid_index < 0 || grid_index >= static_cast<int>(p_.ebn0_grid.size()))
            throw config_error("grid index out of range");
        return run_point_at(p_.ebn0_grid[grid_index], grid_index);
    }

    /// A point at an explicit operating value; `stream` keeps noise streams
    /// of different points apart (grid position, sweep slot, ...).
    BerPoint run_point_at(double ebn0_db, int stream) {
        const ChannelParams ch =
            ChannelParams::make(p_.reliability, ebn0_db, p_.code_rate, p_.design_ebn0_db);
        const int n = g_->n_vns();
        const int workers = p_.workers;
        const long long cap = p_.stop.max_codewords;

        struct Worker {
            Decoder dec;
            ReceivedWord word;
            DecodeResult res;
        };
        std::vector<Worker> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.push_back(Worker{Decoder(*g_, p_.decoder), {}, {}});

        auto simulate_one = [&](Worker& w, long long index) -> std::uint32_t {
            transmit_all_zero(w.word, n, ch, derive_seed(p_.master_seed, stream, index));
            w.dec.decode(w.word.llr, w.res);
            std::uint32_t errs = 0;
            for (auto b : w.res.bits) errs += b;
            return errs;
        };

        BerPoint pt;
        pt.ebn0_db = ebn0_db;
        const long long chunk = std::max<long long>(64, 32LL * workers);
        std::vector<std::uint32_t> errs;
        long long next = 0;
        bool done = false;
        while (!done && next < cap) {
            const long long count = std::min(chunk, cap - next);
            errs.assign(count, 0);
            if (workers == 1) {
                for (long long k = 0; k < count; ++k) errs[k] = simulate_one(pool[0], next + k);
            } else {
                std::vector<std::thread> threads;
                threads.reserve(workers);
                for (int w = 0; w < workers; ++w) {
                    const long long lo = count * w / workers;
                    const long long hi = count * (w + 1) / workers;
                    threads.emplace_back([&, w, lo, hi] {
                        for (long long k = lo; k < hi; ++k)
                            errs[k] = simulate_one(pool[w], next + k);
                    });
                }
                for (auto& t : threads) t.join();
            }
            // Stopping is decided in index order, independent of scheduling.
            for (long long k = 0; k < count && !done; ++k) {
                pt.codewords_sent += 1;
                pt.bits_sent += n;
                pt.bit_errors += errs[k];
                pt.frame_errors += errs[k] > 0 ? 1 : 0;
                if (pt.bit_errors >= p_.stop.min_bit_errors) done = true;
            }
            next += count;
        }

        pt.ber = pt.bits_sent ? static_cast<double>(pt.bit_errors) / pt.bits_sent : 0.0;
        pt.fer = pt.codewords_sent ? static_cast<double>(pt.frame_errors) / pt.codewords_sent : 0.0;
        auto [lo, hi] = wilson_interval(pt.bit_errors, pt.bits_sent);
        pt.wilson_low = lo;
        pt.wilson_high = hi;
        return pt;
    }

    /// All grid points in order; on_point (if set) sees each finished point.
    std::vector<BerPoint> run_curve(const std::function<void(const BerPoint&)>& on_point = {}) {
        std::vector<BerPoint> out;
        out.reserve(p_.ebn0_grid.size());
        for (int idx = 0; idx < static_cast<int>(p_.ebn0_grid.size()); ++idx) {
            out.push_back(run_point(idx));
            if (on_point) on_point(out.back());
        }
        return out;
    }

private:
    const TannerGraph* g_;
    SimParams p_;
};

inline BerPoint run_ber_point(const TannerGraph& g, const SimParams& params, int grid_index) {
    return Simulator(g, params).run_point(grid_index);
}

inline std::vector<BerPoint> run_curve(const TannerGraph& g, const SimParams& params,
                                       const std::function<void(const BerPoint&)>& on_point = {}) {
    return Simulator(g, params).run_curve(on_point);
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::string(buf);
}

/// CSV rows, one per grid point:
/// ebn0_db,bits,bit_errors,ber,wilson_low,wilson_high,frames,frame_errors,fer,decoder,code,seed
inline std::string ber_points_csv(const std::vector<BerPoint>& points,
                                  const std::string& decoder_desc, const std::string& code_desc,
                                  std::uint64_t seed) {
    std::ostringstream os;
    os << "ebn0_db,bits,bit_errors,ber,wilson_low,wilson_high,frames,frame_errors,fer,decoder,"
          "code,seed\n";
    for (const auto& p : points) {
        os << format_double(p.ebn0_db) << ',' << p.bits_sent << ',' << p.bit_errors << ','
           << format_double(p.ber) << ',' << format_double(p.wilson_low) << ','
           << format_double(p.wilson_high) << ',' << p.codewords_sent << ',' << p.frame_errors
           << ',' << format_double(p.fer) << ',' << decoder_desc << ',' << code_desc << ','
           << seed << '\n';
    }
    return os.str();
}

}  // namespace snnbp
