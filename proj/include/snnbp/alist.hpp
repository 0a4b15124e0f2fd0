// Reader/writer for the conventional alist interchange format for sparse
// parity-check matrices.
//
// Layout: line 1 "N M"; line 2 "max_col_deg max_row_deg"; line 3 the N
// column degrees; line 4 the M row degrees; then one neighbor list per
// column and one per row, 1-based, zero padding permitted and ignored.
#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "tanner_graph.hpp"

namespace snnbp {

namespace detail {

class LineTokens {
public:
    explicit LineTokens(std::string_view text) : text_(text) {}

    // Next non-blank line as a token stream; throws at end of input.
    std::vector<long>& next_line() {
        while (pos_ < text_.size()) {
            std::size_t eol = text_.find('\n', pos_);
            if (eol == std::string_view::npos) eol = text_.size();
            std::string_view line = text_.substr(pos_, eol - pos_);
            pos_ = eol + 1;
            ++line_no_;
            tokens_.clear();
            std::istringstream is{std::string(line)};
            long value;
            while (is >> value) tokens_.push_back(value);
            if (!is.eof()) throw parse_error(line_no_, "non-numeric token");
            if (!tokens_.empty()) return tokens_;
        }
        throw parse_error(line_no_, "unexpected end of file");
    }

    int line_no() const { return line_no_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_no_ = 0;
    std::vector<long> tokens_;
};

}  // namespace detail

inline TannerGraph load_alist(std::string_view text) {
    detail::LineTokens in(text);

    auto& header = in.next_line();
    if (header.size() != 2) throw parse_error(in.line_no(), "expected 'N M'");
    const long n = header[0], m = header[1];
    if (n < 1 || m < 1) throw parse_error(in.line_no(), "N and M must be positive");

    auto& maxdeg = in.next_line();
    if (maxdeg.size() != 2) throw parse_error(in.line_no(), "expected max column/row degrees");
    const long max_col = maxdeg[0], max_row = maxdeg[1];

    auto read_degrees = [&](long count, long max_allowed, const char* what) {
        std::vector<long> deg;
        deg.reserve(count);
        while (static_cast<long>(deg.size()) < count) {
            for (long v : in.next_line()) {
                if (v < 0 || v > max_allowed)
                    throw parse_error(in.line_no(), std::string(what) + " degree out of range");
                deg.push_back(v);
            }
        }
        if (static_cast<long>(deg.size()) != count)
            throw parse_error(in.line_no(), std::string("too many ") + what + " degrees");
        return deg;
    };
    auto col_deg = read_degrees(n, max_col, "column");
    auto row_deg = read_degrees(m, max_row, "row");

    auto read_lists = [&](const std::vector<long>& deg, long index_limit, const char* what) {
        std::vector<std::vector<std::int32_t>> lists(deg.size());
        for (std::size_t i = 0; i < deg.size(); ++i) {
            auto& line = in.next_line();
            long kept = 0;
            for (long v : line) {
                if (v == 0) continue;  // padding
                if (v < 1 || v > index_limit)
                    throw parse_error(in.line_no(), std::string(what) + " neighbor out of range");
                lists[i].push_back(static_cast<std::int32_t>(v - 1));
                ++kept;
            }
            if (kept != deg[i])
                throw parse_error(in.line_no(), std::string(what) + " list disagrees with its degree");
        }
        return lists;
    };
    auto cols = read_lists(col_deg, m, "column");
    auto rows = read_lists(row_deg, n, "row");

    TannerGraph g = TannerGraph::from_rows(static_cast<int>(n), std::move(rows));

    // Cross-check: column lists must be the dual of the row lists.
    for (int i = 0; i < g.n_vns(); ++i) {
        auto& claimed = cols[i];
        std::sort(claimed.begin(), claimed.end());
        auto edges = g.vn_edges(i);
        bool ok = claimed.size() == edges.size();
        for (std::size_t k = 0; ok && k < edges.size(); ++k)
            ok = claimed[k] == g.cn_of_edge(edges[k]);
        if (!ok)
            throw inconsistency_error("column " + std::to_string(i + 1) +
                                      " adjacency disagrees with row lists");
    }
    return g;
}

inline std::string save_alist(const TannerGraph& g) {
    std::ostringstream os;
    os << g.n_vns() << ' ' << g.n_cns() << '\n';
    os << g.max_vn_degree() << ' ' << g.max_cn_degree() << '\n';
    for (int i = 0; i < g.n_vns(); ++i) os << g.vn_degree(i) << (i + 1 < g.n_vns() ? ' ' : '\n');
    for (int j = 0; j < g.n_cns(); ++j) os << g.cn_degree(j) << (j + 1 < g.n_cns() ? ' ' : '\n');
    for (int i = 0; i < g.n_vns(); ++i) {
        auto edges = g.vn_edges(i);
        if (edges.empty()) os << "0\n";  // degree-0 placeholder
        for (std::size_t k = 0; k < edges.size(); ++k)
            os << g.cn_of_edge(edges[k]) + 1 << (k + 1 < edges.size() ? ' ' : '\n');
    }
    for (int j = 0; j < g.n_cns(); ++j) {
        auto row = g.cn_vns(j);
        if (row.empty()) os << "0\n";
        for (std::size_t k = 0; k < row.size(); ++k)
            os << row[k] + 1 << (k + 1 < row.size() ? ' ' : '\n');
    }
    return os.str();
}

inline TannerGraph load_alist_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open alist file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return load_alist(buf.str());
}

inline void save_alist_file(const TannerGraph& g, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open output file: " + path);
    f << save_alist(g);
}

}  // namespace snnbp
