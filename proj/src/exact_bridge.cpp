#include <charconv>
#include <cstdlib>
#include <string>

#include "literal.hpp"
#include "merodiv/errors.hpp"
#include "merodiv/expression.hpp"

namespace merodiv {

namespace {

// Decimal exponents beyond this are refused rather than expanded into huge integers.
constexpr long kMaxDecimalExponent = 4096;

// Cancels the common factor and makes the denominator monic.
FormalRational normalized(Polynomial numer, Polynomial denom) {
    if (numer.is_zero()) return {Polynomial{}, Polynomial{1}};
    const Polynomial g = poly_gcd(numer, denom);
    numer = divmod(numer, g).first;
    denom = divmod(denom, g).first;
    const GaussianRational inv = GaussianRational(1) / denom.leading();
    return {numer.scaled(inv), denom.scaled(inv)};
}

FormalRational power(const FormalRational &base, int n) {
    if (n == 0) return {Polynomial{1}, Polynomial{1}};
    if (n < 0 && base.numer.is_zero()) throw DomainError("negative power of an identically zero subexpression");
    unsigned long long k = n < 0 ? static_cast<unsigned long long>(-static_cast<long long>(n)) : static_cast<unsigned long long>(n);
    Polynomial num{1}, den{1};
    Polynomial bn = base.numer, bd = base.denom;
    while (k) {
        if (k & 1ULL) {
            num = num * bn;
            den = den * bd;
        }
        k >>= 1ULL;
        if (k) {
            bn = bn * bn;
            bd = bd * bd;
        }
    }
    return n < 0 ? normalized(den, num) : normalized(num, den);
}

FormalRational convert(const Expression &e) {
    switch (e.kind()) {
        case NodeKind::Variable: return {Polynomial{0, 1}, Polynomial{1}};
        case NodeKind::Constant: return normalized(Polynomial::constant(literal_to_exact(e.literal())), Polynomial{1});
        case NodeKind::Add:
        case NodeKind::Sub: {
            const FormalRational a = convert(e.lhs()), b = convert(e.rhs());
            const Polynomial left = a.numer * b.denom, right = b.numer * a.denom;
            return normalized(e.kind() == NodeKind::Add ? left + right : left - right, a.denom * b.denom);
        }
        case NodeKind::Mul: {
            const FormalRational a = convert(e.lhs()), b = convert(e.rhs());
            return normalized(a.numer * b.numer, a.denom * b.denom);
        }
        case NodeKind::Div: {
            const FormalRational a = convert(e.lhs()), b = convert(e.rhs());
            if (b.numer.is_zero()) throw DomainError("division by an identically zero subexpression");
            return normalized(a.numer * b.denom, a.denom * b.numer);
        }
        case NodeKind::Neg: {
            const FormalRational a = convert(e.lhs());
            return {-a.numer, a.denom};
        }
        case NodeKind::IntPow: return power(convert(e.lhs()), e.exponent());
        case NodeKind::Exp: break;
    }
    throw std::logic_error("exp node reached exact conversion");
}

}  // namespace

GaussianRational literal_to_exact(std::string_view literal) {
    if (literal == "i") return GaussianRational::i();
    if (!detail::is_number_literal(literal)) {
        throw ConversionError("not a decimal literal: " + std::string(literal), std::string(literal));
    }
    std::string digits;
    long exponent = 0;
    std::size_t k = 0;
    bool fraction = false;
    for (; k < literal.size(); ++k) {
        const char c = literal[k];
        if (c == '.') {
            fraction = true;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            digits += c;
            if (fraction) --exponent;
        }
    }
    if (k < literal.size()) {
        std::string_view exp_text = literal.substr(k + 1);
        if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
        long e10 = 0;
        const auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), e10);
        if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size() || std::labs(e10) > kMaxDecimalExponent) {
            throw ConversionError("literal exponent too large for exact conversion: " + std::string(literal),
                                  std::string(literal));
        }
        exponent += e10;
    }
    if (std::labs(exponent) > kMaxDecimalExponent) {
        throw ConversionError("literal too long for exact conversion: " + std::string(literal), std::string(literal));
    }
    mpz_class mantissa(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    mpq_class value = exponent >= 0 ? mpq_class(mantissa * scale) : mpq_class(mantissa, scale);
    value.canonicalize();
    return {value, 0};
}

std::optional<RationalFunctionExact> as_exact_rational(const Expression &e) {
    if (e.contains_exp()) return std::nullopt;
    const FormalRational f = convert(e);
    if (f.numer.is_zero()) throw DomainError("expression is identically zero");
    return reduce(f.numer, f.denom);
}

Expression to_expression(const RationalFunctionExact &f) { return parse(f.to_expression_text()); }

}  // namespace merodiv
