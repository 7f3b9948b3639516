#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace merodiv {

/// Exact complex scalar with rational real and imaginary parts.
///
/// Backed by GMP rationals, which are kept canonical (positive denominator,
/// lowest terms) after every operation, so `==` is structural.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(mpq_class re, mpq_class im = 0);

    /// Exact value of a binary floating pair. Throws DomainError on non-finite input.
    static GaussianRational from_double(std::complex<double> z);
    static GaussianRational i();

    const mpq_class &re() const noexcept { return re_; }
    const mpq_class &im() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

    /// |z|^2, exact.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    GaussianRational conj() const { return {re_, -im_}; }

    /// Nearest-ish double conversion (each part converted independently).
    std::complex<double> to_complex() const;

    /// "a", "a/b", "(a/b) + (c/d)i" style rendering for reports.
    std::string to_string() const;

    GaussianRational &operator+=(const GaussianRational &o);
    GaussianRational &operator-=(const GaussianRational &o);
    GaussianRational &operator*=(const GaussianRational &o);
    /// Throws DomainError on division by zero.
    GaussianRational &operator/=(const GaussianRational &o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational &b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational &b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational &b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational &b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational &a) { return {-a.re_, -a.im_}; }

    friend bool operator==(const GaussianRational &a, const GaussianRational &b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational &a, const GaussianRational &b) { return !(a == b); }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

/// Smallest double >= q (q exact). Used where a bound must survive conversion.
double to_double_up(const mpq_class &q);

/// Smallest double >= sqrt(q) for q >= 0.
double sqrt_up(const mpq_class &q);

}  // namespace merodiv
