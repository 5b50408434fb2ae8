#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "orbitlab/multipoly.hpp"

namespace orbitlab {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

using ParsedExpression = std::variant<MultiPoly, RationalFunction>;

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' nonneg-int)?
///   base   := variable | rational | '(' expr ')' | '-' base
/// A single top-level '/' between two exprs yields a RationalFunction.
ParsedExpression parse_expression(const std::string& text, const std::vector<std::string>& variables);

/// Convenience: any parse result as a RationalFunction.
RationalFunction parse_rational_function(const std::string& text, const std::vector<std::string>& variables);

/// Canonical serialization; round-trips through parse_expression.
std::string serialize(const MultiPoly& p, const std::vector<std::string>& variables);
std::string serialize(const RationalFunction& f, const std::vector<std::string>& variables);

}  // namespace orbitlab
