#pragma once

#include <stdexcept>
#include <string>

namespace mctsbn {

// Syntax error in a text input (BIF, CSV, arc list, order file).
// line/col are 1-based; col 0 means "whole line".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line, int col = 0)
        : std::runtime_error("line " + std::to_string(line) +
                             (col > 0 ? ":" + std::to_string(col) : "") + ": " + msg),
          line_(line), col_(col) {}

    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    int line_;
    int col_;
};

// Input parsed but violates a semantic constraint (bad probability row,
// undeclared variable, variable-set mismatch, ...).
class SemanticError : public std::runtime_error {
public:
    explicit SemanticError(const std::string& msg) : std::runtime_error(msg) {}
};

// A family whose parent-configuration count exceeds the scorer bound.
class InfeasibleFamilyError : public std::runtime_error {
public:
    explicit InfeasibleFamilyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mctsbn
