#include <charconv>
#include <string>
#include <system_error>
#include <vector>

#include "literal.hpp"
#include "merodiv/errors.hpp"
#include "merodiv/expression.hpp"

namespace merodiv {

namespace {

enum class Tok { Plus, Minus, Star, Slash, Caret, LParen, RParen, Number, Ident, End, Invalid };

struct Token {
    Tok type;
    std::size_t offset;
    std::string_view text;
};

constexpr std::size_t kMaxNesting = 2000;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) { advance(); }

    Expression parse_all() {
        Expression e = parse_expr();
        if (tok_.type != Tok::End) fail("unexpected " + describe(tok_), {"+", "-", "*", "/", "end of input"});
        return e;
    }

private:
    void advance() {
        std::size_t k = pos_;
        while (k < text_.size() && is_space(text_[k])) ++k;
        if (k >= text_.size()) {
            tok_ = {Tok::End, text_.size(), {}};
            pos_ = k;
            return;
        }
        const char c = text_[k];
        Tok single = Tok::Invalid;
        switch (c) {
            case '+': single = Tok::Plus; break;
            case '-': single = Tok::Minus; break;
            case '*': single = Tok::Star; break;
            case '/': single = Tok::Slash; break;
            case '^': single = Tok::Caret; break;
            case '(': single = Tok::LParen; break;
            case ')': single = Tok::RParen; break;
            default: break;
        }
        if (single != Tok::Invalid) {
            tok_ = {single, k, text_.substr(k, 1)};
            pos_ = k + 1;
            return;
        }
        if (const std::size_t n = detail::scan_number(text_, k); n > 0) {
            tok_ = {Tok::Number, k, text_.substr(k, n)};
            pos_ = k + n;
            return;
        }
        if (is_alpha(c)) {
            std::size_t j = k;
            while (j < text_.size() && (is_alpha(text_[j]) || (text_[j] >= '0' && text_[j] <= '9'))) ++j;
            tok_ = {Tok::Ident, k, text_.substr(k, j - k)};
            pos_ = j;
            return;
        }
        tok_ = {Tok::Invalid, k, text_.substr(k, 1)};
        pos_ = k + 1;
    }

    static std::string describe(const Token &t) {
        if (t.type == Tok::End) return "end of input";
        return "'" + std::string(t.text) + "'";
    }

    [[noreturn]] void fail(const std::string &msg, std::vector<std::string> expected) const {
        fail_at(tok_.offset, msg, std::move(expected));
    }

    [[noreturn]] static void fail_at(std::size_t offset, const std::string &msg, std::vector<std::string> expected) {
        std::string what = "syntax error at offset " + std::to_string(offset) + ": " + msg;
        if (!expected.empty()) {
            what += " (expected ";
            for (std::size_t k = 0; k < expected.size(); ++k) what += (k ? ", " : "") + expected[k];
            what += ")";
        }
        throw SyntaxError(what, offset, std::move(expected));
    }

    struct DepthGuard {
        explicit DepthGuard(Parser &p) : parser(p) {
            if (++parser.depth_ > kMaxNesting) parser.fail("expression nested too deeply", {});
        }
        ~DepthGuard() { --parser.depth_; }
        Parser &parser;
    };

    Expression parse_expr() {
        DepthGuard guard(*this);
        Expression lhs = parse_term();
        while (tok_.type == Tok::Plus || tok_.type == Tok::Minus) {
            const bool plus = tok_.type == Tok::Plus;
            advance();
            Expression rhs = parse_term();
            lhs = plus ? Expression::add(std::move(lhs), std::move(rhs)) : Expression::sub(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Expression parse_term() {
        Expression lhs = parse_factor();
        while (tok_.type == Tok::Star || tok_.type == Tok::Slash) {
            const bool times = tok_.type == Tok::Star;
            advance();
            const std::size_t rhs_offset = tok_.offset;
            Expression rhs = parse_factor();
            if (times) {
                lhs = Expression::mul(std::move(lhs), std::move(rhs));
            } else {
                if (rhs.kind() == NodeKind::Constant && rhs.constant_value() == std::complex<double>{}) {
                    fail_at(rhs_offset, "division by literal zero", {});
                }
                lhs = Expression::div(std::move(lhs), std::move(rhs));
            }
        }
        return lhs;
    }

    Expression parse_factor() {
        DepthGuard guard(*this);
        if (tok_.type == Tok::Minus) {
            advance();
            return Expression::neg(parse_factor());
        }
        return parse_power();
    }

    Expression parse_power() {
        Expression base = parse_atom();
        if (tok_.type != Tok::Caret) return base;
        advance();
        return Expression::int_pow(std::move(base), parse_intlit());
    }

    int parse_intlit() {
        const std::size_t start = tok_.offset;
        std::string digits;
        if (tok_.type == Tok::Minus || tok_.type == Tok::Plus) {
            if (tok_.type == Tok::Minus) digits = "-";
            advance();
        }
        if (tok_.type != Tok::Number) fail("exponent must be an integer literal, found " + describe(tok_), {"integer"});
        for (char c : tok_.text) {
            if (c < '0' || c > '9') fail("exponent must be an integer literal, found " + describe(tok_), {"integer"});
        }
        digits += tok_.text;
        int value = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec == std::errc::result_out_of_range) fail_at(start, "integer exponent overflow", {});
        if (ec != std::errc{} || ptr != digits.data() + digits.size()) fail("malformed integer", {"integer"});
        advance();
        return value;
    }

    Expression parse_atom() {
        static const std::vector<std::string> kAtomStart = {"z", "i", "exp", "number", "(", "-"};
        switch (tok_.type) {
            case Tok::Number: {
                const Token t = tok_;
                try {
                    Expression c = Expression::constant(t.text);
                    advance();
                    return c;
                } catch (const DomainError &) {
                    fail("numeric literal out of range", {});
                }
            }
            case Tok::Ident: {
                if (tok_.text == "z") {
                    advance();
                    return Expression::variable();
                }
                if (tok_.text == "i") {
                    advance();
                    return Expression::imaginary_unit();
                }
                if (tok_.text == "exp") {
                    advance();
                    if (tok_.type != Tok::LParen) fail("expected '(' after exp, found " + describe(tok_), {"("});
                    advance();
                    Expression arg = parse_expr();
                    expect_rparen();
                    return Expression::exp(std::move(arg));
                }
                fail("unknown identifier '" + std::string(tok_.text) + "'", kAtomStart);
            }
            case Tok::LParen: {
                advance();
                Expression inner = parse_expr();
                expect_rparen();
                return inner;
            }
            default: fail("unexpected " + describe(tok_), kAtomStart);
        }
    }

    void expect_rparen() {
        if (tok_.type != Tok::RParen) fail("unexpected " + describe(tok_), {")", "+", "-", "*", "/"});
        advance();
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t depth_ = 0;
    Token tok_{Tok::End, 0, {}};
};

}  // namespace

Expression parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace merodiv
