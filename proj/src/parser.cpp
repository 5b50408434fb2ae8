#include "orbitlab/parser.hpp"

#include <cctype>

namespace orbitlab {

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    char get() {
        skip_ws();
        return pos < text.size() ? text[pos++] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }
};

struct Parser {
    Lexer lex;
    const std::vector<std::string>& vars;

    int var_index(const std::string& name, std::size_t at) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return static_cast<int>(i);
        throw ParseError("unknown variable '" + name + "'", at);
    }

    std::string read_digits() {
        std::string s;
        while (lex.pos < lex.text.size() && std::isdigit(static_cast<unsigned char>(lex.text[lex.pos])))
            s += lex.text[lex.pos++];
        return s;
    }

    std::int64_t read_nonneg_int() {
        lex.skip_ws();
        std::size_t at = lex.pos;
        std::string d = read_digits();
        if (d.empty()) throw ParseError("expected a non-negative integer", at);
        try {
            return std::stoll(d);
        } catch (const std::out_of_range&) {
            throw ParseError("exponent too large", at);
        }
    }

    MultiPoly parse_base() {
        char c = lex.peek();
        std::size_t at = lex.pos;
        if (c == '-') {
            lex.get();
            return -parse_base();
        }
        if (c == '(') {
            lex.get();
            MultiPoly e = parse_expr();
            if (!lex.eat(')')) throw ParseError("expected ')'", lex.pos);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_digits();
            Int n(num);
            // A '/' directly followed by digits is a rational literal.
            std::size_t save = lex.pos;
            if (lex.peek() == '/') {
                std::size_t slash_at = lex.pos;
                ++lex.pos;
                if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
                    std::string den = read_digits();
                    Int d(den);
                    if (d == 0) throw ParseError("zero denominator in rational literal", slash_at);
                    Rat q(n, d);
                    q.canonicalize();
                    return MultiPoly::constant(static_cast<int>(vars.size()), q);
                }
                lex.pos = save;  // top-level rational-function '/'
            }
            return MultiPoly::constant(static_cast<int>(vars.size()), Rat(n));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (lex.pos < lex.text.size()) {
                char ch = lex.text[lex.pos];
                if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
                    name += ch;
                    ++lex.pos;
                } else {
                    break;
                }
            }
            return MultiPoly::variable(static_cast<int>(vars.size()), var_index(name, at));
        }
        throw ParseError("unexpected character", lex.pos);
    }

    MultiPoly parse_factor() {
        MultiPoly b = parse_base();
        if (lex.peek() == '^') {
            lex.get();
            std::int64_t e = read_nonneg_int();
            return b.pow(e);
        }
        return b;
    }

    MultiPoly parse_term() {
        MultiPoly t = parse_factor();
        while (lex.peek() == '*') {
            lex.get();
            t *= parse_factor();
        }
        return t;
    }

    MultiPoly parse_expr() {
        MultiPoly e = parse_term();
        for (;;) {
            char c = lex.peek();
            if (c == '+') {
                lex.get();
                e += parse_term();
            } else if (c == '-') {
                lex.get();
                e -= parse_term();
            } else {
                return e;
            }
        }
    }
};

}  // namespace

ParsedExpression parse_expression(const std::string& text, const std::vector<std::string>& variables) {
    Parser p{Lexer{text}, variables};
    MultiPoly numerator = p.parse_expr();
    if (p.lex.peek() == '/') {
        std::size_t slash_at = p.lex.pos;
        p.lex.get();
        MultiPoly denominator = p.parse_expr();
        if (p.lex.peek() != '\0') throw ParseError("trailing input after rational function", p.lex.pos);
        if (denominator.is_zero()) throw ParseError("zero denominator", slash_at);
        return RationalFunction(std::move(numerator), std::move(denominator));
    }
    if (p.lex.peek() != '\0') throw ParseError("trailing input", p.lex.pos);
    return numerator;
}

RationalFunction parse_rational_function(const std::string& text, const std::vector<std::string>& variables) {
    ParsedExpression e = parse_expression(text, variables);
    if (std::holds_alternative<MultiPoly>(e))
        return RationalFunction::from_poly(std::get<MultiPoly>(std::move(e)));
    return std::get<RationalFunction>(std::move(e));
}

namespace {

std::string serialize_term(const Expo& e, Rat coeff, const std::vector<std::string>& names, bool leading) {
    std::string mono;
    std::int64_t first_exp = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (mono.empty()) first_exp = e[i];
        if (!mono.empty()) mono += "*";
        mono += names[i];
        if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    bool neg = coeff < 0;
    Rat a = neg ? Rat(-coeff) : coeff;
    std::string body;
    if (mono.empty()) {
        body = rational_to_string(a);
    } else if (a == 1) {
        // A leading "-x^k" would re-parse as (-x)^k; spell out the -1 factor.
        if (neg && leading && first_exp != 1)
            body = "1*" + mono;
        else
            body = mono;
    } else {
        body = rational_to_string(a) + "*" + mono;
    }
    if (leading) return neg ? "-" + body : body;
    return (neg ? " - " : " + ") + body;
}

}  // namespace

std::string serialize(const MultiPoly& p, const std::vector<std::string>& variables) {
    if (static_cast<int>(variables.size()) != p.nvars())
        throw std::invalid_argument("serialize: name count mismatch");
    if (p.is_zero()) return "0";
    std::string out;
    bool leading = true;
    for (const auto& [e, c] : p.terms()) {
        out += serialize_term(e, c, variables, leading);
        leading = false;
    }
    return out;
}

std::string serialize(const RationalFunction& f, const std::vector<std::string>& variables) {
    if (f.is_polynomial()) return serialize(f.as_polynomial(), variables);
    return "(" + serialize(f.num(), variables) + ")/(" + serialize(f.den(), variables) + ")";
}

}  // namespace orbitlab
