#include "merodiv/gaussian_rational.hpp"

#include <cmath>
#include <limits>

#include "merodiv/errors.hpp"

namespace merodiv {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::from_double(std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("non-finite value has no exact rational form");
    }
    // mpq_set_d is exact for finite doubles.
    return {mpq_class(z.real()), mpq_class(z.imag())};
}

GaussianRational GaussianRational::i() { return {0, 1}; }

std::complex<double> GaussianRational::to_complex() const { return {re_.get_d(), im_.get_d()}; }

std::string GaussianRational::to_string() const {
    if (sgn(im_) == 0) return re_.get_str();
    if (sgn(re_) == 0) return im_.get_str() + "i";
    return "(" + re_.get_str() + (sgn(im_) < 0 ? " - " : " + ") + mpq_class(abs(im_)).get_str() + "i)";
}

GaussianRational &GaussianRational::operator+=(const GaussianRational &o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational &GaussianRational::operator-=(const GaussianRational &o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational &GaussianRational::operator*=(const GaussianRational &o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational &GaussianRational::operator/=(const GaussianRational &o) {
    if (o.is_zero()) throw DomainError("division by zero Gaussian rational");
    const mpq_class n = o.norm();
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

double to_double_up(const mpq_class &q) {
    // get_d truncates toward zero; step up when that lost something above.
    double d = q.get_d();
    if (mpq_class(d) < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
    return d;
}

double sqrt_up(const mpq_class &q) {
    if (sgn(q) < 0) throw DomainError("sqrt_up of a negative rational");
    double s = std::sqrt(to_double_up(q));
    while (mpq_class(s) * mpq_class(s) < q) s = std::nextafter(s, std::numeric_limits<double>::infinity());
    return s;
}

}  // namespace merodiv
