#include "merodiv/polynomial.hpp"

#include <cmath>
#include <limits>

#include "merodiv/errors.hpp"

namespace merodiv {

Polynomial::Polynomial(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<GaussianRational> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::constant(GaussianRational c) { return Polynomial(std::vector<GaussianRational>{std::move(c)}); }

Polynomial Polynomial::monomial(GaussianRational c, int degree) {
    if (degree < 0) throw DomainError("monomial degree must be non-negative");
    std::vector<GaussianRational> coeffs(static_cast<std::size_t>(degree) + 1);
    coeffs.back() = std::move(c);
    return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::linear_factor(const GaussianRational &a) { return Polynomial{-a, 1}; }

Polynomial Polynomial::from_roots(std::span<const GaussianRational> roots, const GaussianRational &lead) {
    Polynomial p = constant(lead);
    for (const auto &r : roots) p = p * linear_factor(r);
    return p;
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const GaussianRational &Polynomial::leading() const {
    if (is_zero()) throw DomainError("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

GaussianRational Polynomial::operator()(const GaussianRational &z) const {
    GaussianRational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= z;
        acc += *it;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<GaussianRational> d;
    d.reserve(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d.push_back(coeffs_[k] * GaussianRational(static_cast<long>(k)));
    }
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    const GaussianRational inv = GaussianRational(1) / leading();
    return scaled(inv);
}

Polynomial Polynomial::scaled(const GaussianRational &c) const {
    std::vector<GaussianRational> out;
    out.reserve(coeffs_.size());
    for (const auto &a : coeffs_) out.push_back(a * c);
    return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial &a, const Polynomial &b) {
    std::vector<GaussianRational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial &a) {
    std::vector<GaussianRational> out;
    out.reserve(a.coeffs_.size());
    for (const auto &c : a.coeffs_) out.push_back(-c);
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial &a, const Polynomial &b) { return a + (-b); }

Polynomial operator*(const Polynomial &a, const Polynomial &b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussianRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial &a, const Polynomial &b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial{}, a};

    std::vector<GaussianRational> rem = a.coeffs();
    std::vector<GaussianRational> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    const GaussianRational inv_lead = GaussianRational(1) / b.leading();
    const auto nb = b.coeffs().size();

    for (std::size_t k = quot.size(); k-- > 0;) {
        const GaussianRational q = rem[k + nb - 1] * inv_lead;
        if (q.is_zero()) continue;
        for (std::size_t j = 0; j < nb; ++j) rem[k + j] -= q * b.coeffs()[j];
        quot[k] = q;
    }
    rem.resize(nb - 1);
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial poly_gcd(const Polynomial &a, const Polynomial &b) {
    if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero polynomials is undefined");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();

    // Euclid over the coefficient field. Normalizing each remainder to monic
    // keeps the rationals small; GMP keeps every fraction in lowest terms.
    Polynomial x = a.monic();
    Polynomial y = b.monic();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).second;
        x = std::move(y);
        y = r.is_zero() ? Polynomial{} : r.monic();
    }
    return x;
}

double cauchy_root_bound(const Polynomial &p) {
    const mpq_class lead_norm = p.leading().norm();
    mpq_class max_ratio = 0;
    const auto &c = p.coeffs();
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        mpq_class ratio = c[k].norm() / lead_norm;
        if (ratio > max_ratio) max_ratio = ratio;
    }
    const double m = sqrt_up(max_ratio);
    double bound = 1.0 + m;
    if (mpq_class(bound) < mpq_class(1) + mpq_class(m)) {
        bound = std::nextafter(bound, std::numeric_limits<double>::infinity());
    }
    return bound;
}

std::string rational_expression_text(const mpq_class &q) {
    const bool neg = sgn(q) < 0;
    const mpz_class num = abs(q.get_num());
    std::string body = num.get_str();
    if (q.get_den() != 1) body += "/" + q.get_den().get_str();
    if (!neg && q.get_den() == 1) return body;
    return neg ? "(-" + body + ")" : "(" + body + ")";
}

std::string gaussian_expression_text(const GaussianRational &c) {
    if (sgn(c.im()) == 0) return rational_expression_text(c.re());
    const std::string im = rational_expression_text(c.im()) + "*i";
    if (sgn(c.re()) == 0) return "(" + im + ")";
    return "(" + rational_expression_text(c.re()) + " + " + im + ")";
}

std::string Polynomial::to_expression_text() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k].is_zero()) continue;
        std::string term = gaussian_expression_text(coeffs_[k]);
        if (k == 1) term += "*z";
        if (k > 1) term += "*z^" + std::to_string(k);
        out += out.empty() ? term : " + " + term;
    }
    return "(" + out + ")";
}

std::string Polynomial::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const GaussianRational &c = coeffs_[k];
        if (c.is_zero()) continue;
        const bool real = sgn(c.im()) == 0;
        const bool negative = real && sgn(c.re()) < 0;
        const GaussianRational mag = negative ? -c : c;
        std::string coeff = mag.to_string();
        std::string power = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
        std::string term;
        if (k == 0) {
            term = coeff;
        } else if (mag == GaussianRational(1)) {
            term = power;
        } else {
            term = coeff + "*" + power;
        }
        if (out.empty()) {
            out = negative ? "-" + term : term;
        } else {
            out += negative ? " - " + term : " + " + term;
        }
    }
    return out;
}

}  // namespace merodiv
