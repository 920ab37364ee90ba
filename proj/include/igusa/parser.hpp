#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "polynomial.hpp"

namespace igusa {

class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t position)
        : InputError(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace detail {

// Grammar (explicit '*' required, '^' takes a nonnegative integer literal):
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' INT)*
//   primary := INT | IDENT | '(' expr ')'
class PolynomialParser {
public:
    PolynomialParser(std::string_view text, const std::vector<std::string>& variables)
        : text_(text), variables_(variables) {}

    IntegerPolynomial parse() {
        auto result = expr();
        skip_space();
        if (pos_ != text_.size()) {
            fail_unexpected();
        }
        return result;
    }

private:
    IntegerPolynomial expr() {
        auto acc = term();
        for (;;) {
            skip_space();
            if (peek() == '+') {
                ++pos_;
                acc += term();
            } else if (peek() == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    IntegerPolynomial term() {
        auto acc = unary();
        for (;;) {
            skip_space();
            const char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * unary();
            } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(') {
                throw ParseError("implicit multiplication is not allowed, use '*'", pos_);
            } else {
                return acc;
            }
        }
    }

    IntegerPolynomial unary() {
        skip_space();
        if (peek() == '-') {
            ++pos_;
            return -unary();
        }
        if (peek() == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    IntegerPolynomial power() {
        auto base = primary();
        for (;;) {
            skip_space();
            if (peek() != '^') {
                return base;
            }
            ++pos_;
            skip_space();
            const auto at = pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                throw ParseError("exponent must be a nonnegative integer", at);
            }
            const auto digits = read_digits();
            if (digits.size() > 6) {
                throw ParseError("exponent too large", at);
            }
            base = base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
    }

    IntegerPolynomial primary() {
        skip_space();
        const char c = peek();
        const std::size_t n = variables_.size();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return IntegerPolynomial::constant(n, Integer(read_digits()));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const auto at = pos_;
            std::string name;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                name += text_[pos_++];
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (variables_[i] == name) {
                    return IntegerPolynomial::variable(n, i);
                }
            }
            throw ParseError("unknown variable '" + name + "'", at);
        }
        if (c == '(') {
            const auto at = pos_++;
            auto inner = expr();
            skip_space();
            if (peek() != ')') {
                throw ParseError("unbalanced parenthesis opened at " + std::to_string(at), pos_);
            }
            ++pos_;
            return inner;
        }
        fail_unexpected();
    }

    [[noreturn]] void fail_unexpected() {
        if (pos_ >= text_.size()) {
            throw ParseError("unexpected end of input", pos_);
        }
        throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    }

    std::string read_digits() {
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            digits += text_[pos_++];
        }
        return digits;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    std::string_view text_;
    const std::vector<std::string>& variables_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses an infix polynomial in the declared variables and returns its expanded form.
/// Variable order fixes the exponent-vector coordinate order.
inline IntegerPolynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables) {
    if (variables.empty()) {
        throw InputError("no variables declared");
    }
    for (std::size_t i = 0; i < variables.size(); ++i) {
        const auto& v = variables[i];
        if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_')) {
            throw InputError("invalid variable name '" + v + "'");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (variables[j] == v) {
                throw InputError("duplicate variable name '" + v + "'");
            }
        }
    }
    return detail::PolynomialParser(text, variables).parse();
}

} // namespace igusa
