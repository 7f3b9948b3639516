#include "merodiv/rational_function.hpp"

#include <algorithm>

#include "merodiv/errors.hpp"

namespace merodiv {

GaussianRational FormalRational::operator()(const GaussianRational &z) const {
    const GaussianRational d = denom(z);
    if (d.is_zero()) throw ExactPoleError("evaluation at a pole: " + z.to_string(), z.to_string());
    return numer(z) / d;
}

RationalFunctionExact reduce(const Polynomial &p, const Polynomial &q) {
    if (q.is_zero()) throw DomainError("rational function with zero denominator");
    if (p.is_zero()) throw DomainError("rational function must be nonzero");

    const Polynomial g = poly_gcd(p, q);
    Polynomial numer = divmod(p, g).first;
    Polynomial denom = divmod(q, g).first;
    const GaussianRational inv = GaussianRational(1) / denom.leading();
    return {numer.scaled(inv), denom.scaled(inv)};
}

int divisor(const RationalFunctionExact &f) { return f.numer().degree() - f.denom().degree(); }

FormalRational log_derivative(const RationalFunctionExact &f) {
    const Polynomial &p = f.numer();
    const Polynomial &q = f.denom();
    return {p.derivative() * q - p * q.derivative(), p * q};
}

GaussianRational eval_exact(const RationalFunctionExact &f, const GaussianRational &z) {
    return FormalRational{f.numer(), f.denom()}(z);
}

double joint_cauchy_bound(const RationalFunctionExact &f) {
    return std::max(cauchy_root_bound(f.numer()), cauchy_root_bound(f.denom()));
}

std::string RationalFunctionExact::to_string() const {
    return "(" + numer_.to_string() + ")/(" + denom_.to_string() + ")";
}

std::string RationalFunctionExact::to_expression_text() const {
    return numer_.to_expression_text() + "/" + denom_.to_expression_text();
}

}  // namespace merodiv
