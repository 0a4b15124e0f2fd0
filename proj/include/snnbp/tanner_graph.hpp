// Tanner graph of a sparse parity-check matrix, plus randomized regular
// code construction with 4-cycle avoidance.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace snnbp {

/// Bipartite graph of N variable nodes and M check nodes. Edges are kept in
/// a canonical CN-major order: row by row, VN indices ascending within each
/// row. The order is stable across save/load round-trips, so per-edge state
/// (messages, neuron memories) can be addressed by edge id.
class TannerGraph {
public:
    TannerGraph() = default;

    /// Build from per-CN adjacency. rows[j] lists the VN indices of CN j;
    /// entries are sorted and deduplicated into the canonical form.
    static TannerGraph from_rows(int n_vns, std::vector<std::vector<std::int32_t>> rows) {
        if (n_vns < 1 || rows.empty()) throw config_error("graph needs at least one VN and one CN");
        TannerGraph g;
        g.n_vns_ = n_vns;
        g.n_cns_ = static_cast<int>(rows.size());
        g.cn_offsets_.reserve(rows.size() + 1);
        g.cn_offsets_.push_back(0);
        for (auto& row : rows) {
            std::sort(row.begin(), row.end());
            if (std::adjacent_find(row.begin(), row.end()) != row.end())
                throw config_error("duplicate edge in row adjacency");
            for (auto v : row)
                if (v < 0 || v >= n_vns) throw config_error("VN index out of range");
            g.cn_vns_.insert(g.cn_vns_.end(), row.begin(), row.end());
            g.cn_offsets_.push_back(static_cast<std::int32_t>(g.cn_vns_.size()));
        }
        g.build_duals();
        return g;
    }

    int n_vns() const { return n_vns_; }
    int n_cns() const { return n_cns_; }
    int n_edges() const { return static_cast<int>(cn_vns_.size()); }

    int cn_degree(int cn) const { return cn_offsets_[cn + 1] - cn_offsets_[cn]; }
    int vn_degree(int vn) const { return vn_offsets_[vn + 1] - vn_offsets_[vn]; }

    /// First edge id of CN cn; the row's edges are contiguous.
    int cn_offset(int cn) const { return cn_offsets_[cn]; }

    /// Sorted VN indices of CN cn (the set M(j)).
    std::span<const std::int32_t> cn_vns(int cn) const {
        return {cn_vns_.data() + cn_offsets_[cn],
                static_cast<std::size_t>(cn_degree(cn))};
    }

    /// Edge ids incident to VN vn, CN-ascending (the set N(i) by edge).
    std::span<const std::int32_t> vn_edges(int vn) const {
        return {vn_edges_.data() + vn_offsets_[vn],
                static_cast<std::size_t>(vn_degree(vn))};
    }

    int vn_of_edge(int e) const { return cn_vns_[e]; }
    int cn_of_edge(int e) const { return edge_cns_[e]; }

    /// Edge id for (cn, vn), or -1 when H[cn][vn] = 0.
    int edge_index(int cn, int vn) const {
        auto row = cn_vns(cn);
        auto it = std::lower_bound(row.begin(), row.end(), vn);
        if (it == row.end() || *it != vn) return -1;
        return cn_offsets_[cn] + static_cast<int>(it - row.begin());
    }

    int max_cn_degree() const { return max_degree(cn_offsets_); }
    int min_cn_degree() const { return min_degree(cn_offsets_); }
    int max_vn_degree() const { return max_degree(vn_offsets_); }
    int min_vn_degree() const { return min_degree(vn_offsets_); }

    bool operator==(const TannerGraph&) const = default;

private:
    void build_duals() {
        vn_offsets_.assign(n_vns_ + 1, 0);
        for (auto v : cn_vns_) ++vn_offsets_[v + 1];
        for (int i = 0; i < n_vns_; ++i) vn_offsets_[i + 1] += vn_offsets_[i];
        vn_edges_.resize(cn_vns_.size());
        edge_cns_.resize(cn_vns_.size());
        std::vector<std::int32_t> cursor(vn_offsets_.begin(), vn_offsets_.end() - 1);
        for (int j = 0; j < n_cns_; ++j) {
            for (std::int32_t e = cn_offsets_[j]; e < cn_offsets_[j + 1]; ++e) {
                edge_cns_[e] = j;
                vn_edges_[cursor[cn_vns_[e]]++] = e;  // CN-ascending since j ascends
            }
        }
    }

    static int max_degree(const std::vector<std::int32_t>& off) {
        int m = 0;
        for (std::size_t i = 0; i + 1 < off.size(); ++i)
            m = std::max(m, static_cast<int>(off[i + 1] - off[i]));
        return m;
    }
    static int min_degree(const std::vector<std::int32_t>& off) {
        if (off.size() < 2) return 0;
        int m = static_cast<int>(off[1] - off[0]);
        for (std::size_t i = 0; i + 1 < off.size(); ++i)
            m = std::min(m, static_cast<int>(off[i + 1] - off[i]));
        return m;
    }

    int n_vns_ = 0;
    int n_cns_ = 0;
    std::vector<std::int32_t> cn_offsets_;  // M+1 prefix sums
    std::vector<std::int32_t> cn_vns_;      // VN index per edge, canonical order
    std::vector<std::int32_t> edge_cns_;    // CN index per edge
    std::vector<std::int32_t> vn_offsets_;  // N+1 prefix sums
    std::vector<std::int32_t> vn_edges_;    // edge ids grouped per VN
};

/// Parity of each check: entry j is the XOR of bits over M(j). A zero vector
/// means the bits form a codeword.
inline std::vector<std::uint8_t> syndrome(const TannerGraph& g, std::span<const std::uint8_t> bits) {
    if (static_cast<int>(bits.size()) != g.n_vns())
        throw config_error("syndrome: bit vector length does not match VN count");
    std::vector<std::uint8_t> s(g.n_cns(), 0);
    for (int j = 0; j < g.n_cns(); ++j) {
        std::uint8_t p = 0;
        for (auto v : g.cn_vns(j)) p ^= (bits[v] & 1u);
        s[j] = p;
    }
    return s;
}

/// True iff some pair of rows shares two or more VNs, i.e. the graph has a
/// 4-cycle. Detected column-wise: a repeated CN pair across columns is
/// exactly such an overlap.
inline bool has_four_cycle(const TannerGraph& g) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(g.n_edges()) * 2);
    std::vector<std::int32_t> cns;
    for (int i = 0; i < g.n_vns(); ++i) {
        cns.clear();
        for (auto e : g.vn_edges(i)) cns.push_back(g.cn_of_edge(e));
        for (std::size_t a = 0; a < cns.size(); ++a)
            for (std::size_t b = a + 1; b < cns.size(); ++b) {
                std::uint64_t key = static_cast<std::uint64_t>(cns[a]) * g.n_cns() + cns[b];
                if (!seen.insert(key).second) return true;
            }
    }
    return false;
}

/// Code parameters as declared, not as measured: k is the design dimension
/// even when the parity-check matrix is rank deficient.
struct CodeSpec {
    int n = 0;
    int k = 0;
    int dv = 0;
    int dc = 0;
    double rate() const { return static_cast<double>(k) / n; }
};

struct ConstructParams {
    int n = 0;
    int dv = 0;
    int dc = 0;
    std::uint64_t seed = 1;
    int max_restarts = 1000;        // backtracks before giving up
    int column_retry_budget = 100;  // candidate draws per column before backtracking
};

inline CodeSpec regular_code_spec(const ConstructParams& p) {
    return CodeSpec{p.n, p.n - p.n * p.dv / p.dc, p.dv, p.dc};
}

/// Randomized (dv, dc)-regular construction. Columns are added one at a
/// time with dv ones at random rows of residual weight < dc; a candidate
/// column is rejected if any of its row pairs already occurs (which would
/// close a 4-cycle). When a column exhausts its retry budget, construction
/// backtracks to a uniformly random earlier column and discards everything
/// after it. Deterministic for a fixed seed.
inline TannerGraph construct_regular_code(const ConstructParams& p) {
    if (p.n < 1 || p.dv < 1 || p.dc < 1) throw config_error("construct: n, dv, dc must be >= 1");
    if ((static_cast<long long>(p.n) * p.dv) % p.dc != 0)
        throw config_error("construct: n*dv must be divisible by dc");
    const int m = static_cast<int>(static_cast<long long>(p.n) * p.dv / p.dc);
    if (p.dv > m) throw config_error("construct: dv exceeds the row count");
    if (p.dc > p.n) throw config_error("construct: dc exceeds the column count");

    std::mt19937_64 rng(p.seed);
    std::vector<std::int32_t> row_weight(m, 0);
    std::vector<std::vector<std::int32_t>> cols;
    cols.reserve(p.n);
    std::unordered_set<std::uint64_t> used_pairs;
    used_pairs.reserve(static_cast<std::size_t>(p.n) * p.dv * (p.dv - 1) / 2);
    auto pair_key = [m](std::int32_t a, std::int32_t b) {
        return static_cast<std::uint64_t>(a) * m + b;  // requires a < b
    };

    std::vector<std::int32_t> eligible, candidate;
    int restarts = 0;
    while (static_cast<int>(cols.size()) < p.n) {
        bool placed = false;
        for (int attempt = 0; attempt < p.column_retry_budget && !placed; ++attempt) {
            eligible.clear();
            for (std::int32_t r = 0; r < m; ++r)
                if (row_weight[r] < p.dc) eligible.push_back(r);
            if (static_cast<int>(eligible.size()) < p.dv) break;
            candidate.clear();
            std::sample(eligible.begin(), eligible.end(), std::back_inserter(candidate),
                        p.dv, rng);
            bool clean = true;
            for (std::size_t a = 0; a < candidate.size() && clean; ++a)
                for (std::size_t b = a + 1; b < candidate.size() && clean; ++b)
                    if (used_pairs.count(pair_key(candidate[a], candidate[b]))) clean = false;
            if (!clean) continue;
            for (std::size_t a = 0; a < candidate.size(); ++a)
                for (std::size_t b = a + 1; b < candidate.size(); ++b)
                    used_pairs.insert(pair_key(candidate[a], candidate[b]));
            for (auto r : candidate) ++row_weight[r];
            cols.push_back(candidate);
            placed = true;
        }
        if (placed) continue;

        if (++restarts > p.max_restarts)
            throw construction_error("regular code construction failed after " +
                                     std::to_string(p.max_restarts) + " restarts");
        // Drop a random suffix of columns and retry from there.
        std::size_t keep = 0;
        if (!cols.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, cols.size() - 1);
            keep = pick(rng);
        }
        while (cols.size() > keep) {
            const auto& col = cols.back();
            for (std::size_t a = 0; a < col.size(); ++a)
                for (std::size_t b = a + 1; b < col.size(); ++b)
                    used_pairs.erase(pair_key(col[a], col[b]));
            for (auto r : col) --row_weight[r];
            cols.pop_back();
        }
    }

    std::vector<std::vector<std::int32_t>> rows(m);
    for (auto& r : rows) r.reserve(p.dc);
    for (std::int32_t c = 0; c < p.n; ++c)
        for (auto r : cols[c]) rows[r].push_back(c);
    return TannerGraph::from_rows(p.n, std::move(rows));
}

inline TannerGraph construct_regular_code(int n, int dv, int dc, std::uint64_t seed,
                                          int max_restarts = 1000) {
    ConstructParams p;
    p.n = n;
    p.dv = dv;
    p.dc = dc;
    p.seed = seed;
    p.max_restarts = max_restarts;
    return construct_regular_code(p);
}

}  // namespace snnbp
