#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sequiv/ast.hpp"

namespace sequiv {

struct SourceSpan {
    std::size_t begin = 0; // byte offsets, begin <= end
    std::size_t end = 0;
    int line = 1;
    int column = 1;
};

struct ParseError {
    SourceSpan span;
    std::string message;
    std::string expected; // short summary of what would have been accepted
};

struct ParseWarning {
    SourceSpan span;
    std::string message;
};

template <typename T> struct ParseResult {
    std::optional<T> value;
    std::optional<ParseError> error;
    std::vector<ParseWarning> warnings;

    bool ok() const { return value.has_value(); }
};

// Parses a mini-gringo program: "."-terminated rules, ":-" between head and
// comma-separated body, "not"/"not not" literal prefixes, "{ a }" choice
// heads, ";" pools, ".." intervals, "%" comments.
ParseResult<Program> parse_program(std::string_view text);

// Parses a single term; the whole input must be consumed.
ParseResult<TermPtr> parse_term(std::string_view text);

std::string format_error(const ParseError &error, std::string_view file = {});

} // namespace sequiv
