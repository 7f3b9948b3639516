#pragma once

#include <string>

#include "merodiv/polynomial.hpp"

namespace merodiv {

/// Numerator/denominator pair with no normalization applied. Used for the
/// unreduced logarithmic derivative and for intermediate exact conversions.
struct FormalRational {
    Polynomial numer;
    Polynomial denom;

    /// Throws ExactPoleError when denom(z) == 0.
    GaussianRational operator()(const GaussianRational &z) const;
};

/// f = P/Q with gcd(P, Q) = 1, Q monic and P nonzero.
/// Only obtainable through reduce(), so the invariants always hold and two
/// equal functions compare equal structurally.
class RationalFunctionExact {
public:
    const Polynomial &numer() const noexcept { return numer_; }
    const Polynomial &denom() const noexcept { return denom_; }

    friend RationalFunctionExact reduce(const Polynomial &p, const Polynomial &q);

    friend bool operator==(const RationalFunctionExact &a, const RationalFunctionExact &b) {
        return a.numer_ == b.numer_ && a.denom_ == b.denom_;
    }

    std::string to_string() const;
    /// Parser-compatible text for the same function.
    std::string to_expression_text() const;

private:
    RationalFunctionExact(Polynomial numer, Polynomial denom) : numer_(std::move(numer)), denom_(std::move(denom)) {}

    Polynomial numer_;
    Polynomial denom_;
};

/// Coprime representative of p/q with monic denominator. Idempotent.
/// Throws DomainError when p or q is the zero polynomial.
RationalFunctionExact reduce(const Polynomial &p, const Polynomial &q);
inline RationalFunctionExact reduce(const RationalFunctionExact &f) { return reduce(f.numer(), f.denom()); }

/// deg P - deg Q.
int divisor(const RationalFunctionExact &f);

/// (P'Q - PQ') / (PQ), deliberately not reduced.
FormalRational log_derivative(const RationalFunctionExact &f);

/// Throws ExactPoleError at a root of the denominator.
GaussianRational eval_exact(const RationalFunctionExact &f, const GaussianRational &z);

/// Bound valid for every zero and pole of f: max of the Cauchy bounds of P and Q.
double joint_cauchy_bound(const RationalFunctionExact &f);

}  // namespace merodiv
