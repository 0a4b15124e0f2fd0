// Error types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace snnbp {

// Invalid parameters, mismatched decoder configuration, degenerate graphs.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent alist input; message carries the line number.
struct parse_error : std::runtime_error {
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    int line_number;
};

// Alist degree lists and adjacency lists contradict each other.
struct inconsistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Randomized code construction gave up after exhausting its restart budget.
struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace snnbp
