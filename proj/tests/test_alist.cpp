#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "snnbp/alist.hpp"
#include "snnbp/tanner_graph.hpp"

using namespace snnbp;

TEST_CASE("minimal alist loads") {
    // H = [[1,1,0],[0,1,1]]
    const std::string text =
        "3 2\n"
        "2 2\n"
        "1 2 1\n"
        "2 2\n"
        "1\n"
        "1 2\n"
        "2\n"
        "1 2\n"
        "2 3\n";
    auto g = load_alist(text);
    REQUIRE(g.n_vns() == 3);
    REQUIRE(g.n_cns() == 2);
    REQUIRE(g.n_edges() == 4);
    REQUIRE(g.edge_index(0, 0) >= 0);
    REQUIRE(g.edge_index(0, 1) >= 0);
    REQUIRE(g.edge_index(1, 1) >= 0);
    REQUIRE(g.edge_index(1, 2) >= 0);
}

TEST_CASE("zero padding is ignored") {
    const std::string padded =
        "3 2\n"
        "2 2\n"
        "1 2 1\n"
        "2 2\n"
        "1 0\n"
        "1 2\n"
        "2 0\n"
        "1 2\n"
        "2 3\n";
    const std::string plain =
        "3 2\n"
        "2 2\n"
        "1 2 1\n"
        "2 2\n"
        "1\n"
        "1 2\n"
        "2\n"
        "1 2\n"
        "2 3\n";
    REQUIRE(load_alist(padded) == load_alist(plain));
    // save produces the unpadded canonical text
    REQUIRE(save_alist(load_alist(padded)) == plain);
}

TEST_CASE("round-trip of constructed code") {
    auto g = construct_regular_code(1500, 3, 15, 1);
    auto text = save_alist(g);
    auto g2 = load_alist(text);
    REQUIRE(g == g2);
    REQUIRE(save_alist(g2) == text);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        load_alist("3 2\n2 2\n1 2 1\n2 2\n1\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        REQUIRE(e.line_number >= 5);
    }
    REQUIRE_THROWS_AS(load_alist(""), parse_error);
    REQUIRE_THROWS_AS(load_alist("3\n"), parse_error);
    REQUIRE_THROWS_AS(load_alist("3 x\n"), parse_error);
    // neighbor index out of range
    REQUIRE_THROWS_AS(load_alist("3 2\n2 2\n1 2 1\n2 2\n9\n1 2\n2\n1 2\n2 3\n"), parse_error);
    // adjacency list longer than its declared degree
    REQUIRE_THROWS_AS(load_alist("3 2\n2 2\n1 2 1\n2 2\n1 2\n1 2\n2\n1 2\n2 3\n"), parse_error);
}

TEST_CASE("column lists must be the dual of row lists") {
    // column 1 claims CN 2 but row lists connect it to CN 1
    const std::string bad =
        "3 2\n"
        "2 2\n"
        "1 2 1\n"
        "2 2\n"
        "2\n"
        "1 2\n"
        "1\n"
        "1 2\n"
        "2 3\n";
    REQUIRE_THROWS_AS(load_alist(bad), inconsistency_error);
}
