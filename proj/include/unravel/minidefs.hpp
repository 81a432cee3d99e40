#pragma once

#include <stdexcept>
#include <string>

#include "unravel/system.hpp"

namespace unravel {

struct ParseError : std::runtime_error {
    std::size_t line;
    std::size_t column;
    ParseError(std::size_t l, std::size_t c, const std::string& what)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + what), line(l), column(c) {}
};

// Clauses "head := body", one per line or separated by ';'. Heads are
// f(p, ...) or an infix "p op p". Patterns are variables, numerals or the
// constructors zero/suc (Nat) and leaf/node (Tree). A call is any use of a
// function that has a clause; each call occurrence becomes one Call, ordered
// innermost first, then left to right. Comments start with '#'.
CallSystem parse_minidefs(const std::string& text);

}  // namespace unravel
