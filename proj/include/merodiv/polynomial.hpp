#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "merodiv/gaussian_rational.hpp"

namespace merodiv {

/// Univariate polynomial over the Gaussian rationals, coefficients in
/// ascending degree order. The zero polynomial has no coefficients and
/// degree kZeroDegree; otherwise the last coefficient is nonzero.
class Polynomial {
public:
    static constexpr int kZeroDegree = -1;

    Polynomial() = default;
    explicit Polynomial(std::vector<GaussianRational> coeffs);
    Polynomial(std::initializer_list<GaussianRational> coeffs);

    static Polynomial constant(GaussianRational c);
    static Polynomial monomial(GaussianRational c, int degree);
    /// z - a
    static Polynomial linear_factor(const GaussianRational &a);
    /// lead * prod_k (z - roots[k])
    static Polynomial from_roots(std::span<const GaussianRational> roots, const GaussianRational &lead = 1);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<GaussianRational> &coeffs() const noexcept { return coeffs_; }
    /// Throws DomainError for the zero polynomial.
    const GaussianRational &leading() const;

    /// Horner evaluation.
    GaussianRational operator()(const GaussianRational &z) const;

    Polynomial derivative() const;
    /// Divides through by the leading coefficient. Throws DomainError when zero.
    Polynomial monic() const;
    Polynomial scaled(const GaussianRational &c) const;

    /// Human-readable rendering in descending powers, e.g. "z^2 - 1".
    std::string to_string() const;
    /// Rendering accepted by the expression parser that round-trips exactly
    /// through as_exact_rational (rationals appear as "(p/q)").
    std::string to_expression_text() const;

    friend Polynomial operator+(const Polynomial &a, const Polynomial &b);
    friend Polynomial operator-(const Polynomial &a, const Polynomial &b);
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
    friend Polynomial operator-(const Polynomial &a);
    friend bool operator==(const Polynomial &a, const Polynomial &b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Polynomial &a, const Polynomial &b) { return !(a == b); }

private:
    void trim();

    std::vector<GaussianRational> coeffs_;
};

/// Quotient and remainder with deg(rem) < deg(divisor). Throws DomainError for a zero divisor.
std::pair<Polynomial, Polynomial> divmod(const Polynomial &a, const Polynomial &b);

/// Monic greatest common divisor. Throws DomainError when both inputs are zero.
Polynomial poly_gcd(const Polynomial &a, const Polynomial &b);

/// 1 + max_i |a_i| / |a_deg| over the non-leading coefficients, rounded up so
/// that every root of p has modulus strictly below the returned value.
/// Throws DomainError for the zero polynomial.
double cauchy_root_bound(const Polynomial &p);

/// Exact rational rendered in expression syntax ("3", "(-3)", "(1/3)").
std::string rational_expression_text(const mpq_class &q);
std::string gaussian_expression_text(const GaussianRational &c);

}  // namespace merodiv
