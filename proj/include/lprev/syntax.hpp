// Text format for rules and revision frameworks.
//
//   % comment
//   #persistent
//   c(c1).
//   #temporal
//   phi1: r(X) :- c(X), not b(X).
//   #backup
//   phi2: b(X) :- c(X), not r(X).
//   #new
//   :- r(c1).
//
// Identifiers starting with an uppercase letter or '_' are variables, all
// others (including numerals) are constants. `:- body.` abbreviates
// `bot :- body.`. Guards produced by revision render as `X != c1` or
// `(X, Y) != (c1, c2)` conjuncts.
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lprev/core.hpp"

namespace lprev {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct ParsedFramework {
    RevisionFramework framework;
    std::optional<Rule> new_rule;
};

/// Parses a framework file. Temporal and backup rules without an explicit
/// name are called tmp1, tmp2, ... and bck1, bck2, ... respectively.
ParsedFramework parse_framework(std::string_view text);

Rule parse_rule(std::string_view text);
Atom parse_atom(std::string_view text);
Literal parse_literal(std::string_view text);

std::string render_term(const Term& t);
std::string render_atom(const Atom& a);
std::string render_literal(const Literal& l);
/// Canonical text of a rule, without its name and with the final period.
std::string render_rule(const Rule& r);
/// As render_rule, prefixed with `name: ` when the rule is named.
std::string render_named_rule(const Rule& r);
/// Rule text without the final period, as used inside traces.
std::string render_clause(const Rule& r);

std::string render_program(const Program& p);
std::string render_framework(const RevisionFramework& fw, const std::optional<Rule>& new_rule);

}  // namespace lprev
