#pragma once
#include <stdexcept>
#include <string>

namespace sg {

// Input text could not be parsed (CLI exit code 2).
struct ParseError : std::runtime_error {
    int line = 0;
    int col = 0;
    ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
        : std::runtime_error(msg + (line_ ? " (line " + std::to_string(line_) +
                                                (col_ ? ", col " + std::to_string(col_) : "") + ")"
                                          : "")),
          line(line_),
          col(col_) {}
};

// A configured resource cap was exceeded; result is unknown, not negative
// (CLI exit code 3).
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An analysis-level check failed on otherwise well-formed input
// (CLI exit code 1).
struct AnalysisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sg
