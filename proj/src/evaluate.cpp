#include <algorithm>
#include <cmath>
#include <numbers>

#include "merodiv/errors.hpp"
#include "merodiv/expression.hpp"

namespace merodiv {

namespace {

using cplx = std::complex<double>;

bool finite(cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

cplx ipow(cplx base, int n) {
    // Negative powers invert once at the end so that repeated squaring stays exact-ish.
    const bool invert = n < 0;
    unsigned long long k = invert ? static_cast<unsigned long long>(-static_cast<long long>(n)) : static_cast<unsigned long long>(n);
    cplx result{1.0, 0.0};
    while (k) {
        if (k & 1ULL) result *= base;
        k >>= 1ULL;
        if (k) base *= base;
    }
    return invert ? cplx{1.0, 0.0} / result : result;
}

JetValue checked(JetValue j, cplx z) {
    if (!finite(j.value) || !finite(j.deriv)) throw PoleError("non-finite intermediate during evaluation", z);
    return j;
}

JetValue jet(const Expression &e, cplx z) {
    switch (e.kind()) {
        case NodeKind::Variable: return {z, {1.0, 0.0}};
        case NodeKind::Constant: return {e.constant_value(), {}};
        case NodeKind::Add: {
            const JetValue a = jet(e.lhs(), z), b = jet(e.rhs(), z);
            return checked({a.value + b.value, a.deriv + b.deriv}, z);
        }
        case NodeKind::Sub: {
            const JetValue a = jet(e.lhs(), z), b = jet(e.rhs(), z);
            return checked({a.value - b.value, a.deriv - b.deriv}, z);
        }
        case NodeKind::Mul: {
            const JetValue a = jet(e.lhs(), z), b = jet(e.rhs(), z);
            return checked({a.value * b.value, a.value * b.deriv + a.deriv * b.value}, z);
        }
        case NodeKind::Div: {
            const JetValue a = jet(e.lhs(), z), b = jet(e.rhs(), z);
            if (b.value == cplx{}) throw PoleError("evaluation at a pole", z);
            const cplx q = a.value / b.value;
            return checked({q, (a.deriv - q * b.deriv) / b.value}, z);
        }
        case NodeKind::Neg: {
            const JetValue a = jet(e.lhs(), z);
            return {-a.value, -a.deriv};
        }
        case NodeKind::IntPow: {
            const int n = e.exponent();
            const JetValue b = jet(e.lhs(), z);
            if (n == 0) return {{1.0, 0.0}, {}};
            if (b.value == cplx{}) {
                if (n < 0) throw PoleError("evaluation at a pole", z);
                return {{}, n == 1 ? b.deriv : cplx{}};
            }
            const cplx p = ipow(b.value, n - 1);
            return checked({p * b.value, static_cast<double>(n) * p * b.deriv}, z);
        }
        case NodeKind::Exp: {
            const JetValue a = jet(e.lhs(), z);
            const cplx v = std::exp(a.value);
            return checked({v, v * a.deriv}, z);
        }
    }
    return {};
}

// Scaled jets: zero jets (value = deriv = 0) carry no meaningful scale.
bool is_zero(const ScaledJet &j) { return j.value == cplx{} && j.deriv == cplx{}; }

ScaledJet normalized(cplx v, cplx d, double s, cplx z) {
    if (!finite(v) || !finite(d) || std::isnan(s)) throw PoleError("non-finite intermediate during evaluation", z);
    const double m = std::max({std::abs(v.real()), std::abs(v.imag()), std::abs(d.real()), std::abs(d.imag())});
    if (m == 0.0) return {{}, {}, 0.0};
    int k = 0;
    std::frexp(m, &k);
    // Power-of-two rescaling is exact, so f'/f is untouched by normalization.
    v = {std::ldexp(v.real(), -k), std::ldexp(v.imag(), -k)};
    d = {std::ldexp(d.real(), -k), std::ldexp(d.imag(), -k)};
    s += k * std::numbers::ln2;
    if (!std::isfinite(s)) throw PoleError("scale overflow during evaluation", z);
    return {v, d, s};
}

ScaledJet scaled(const Expression &e, cplx z) {
    switch (e.kind()) {
        case NodeKind::Variable: return normalized(z, {1.0, 0.0}, 0.0, z);
        case NodeKind::Constant: return normalized(e.constant_value(), {}, 0.0, z);
        case NodeKind::Add:
        case NodeKind::Sub: {
            const ScaledJet a = scaled(e.lhs(), z);
            ScaledJet b = scaled(e.rhs(), z);
            if (e.kind() == NodeKind::Sub) b = {-b.value, -b.deriv, b.scale};
            if (is_zero(a)) return b;
            if (is_zero(b)) return a;
            const double s = std::max(a.scale, b.scale);
            const double fa = std::exp(a.scale - s), fb = std::exp(b.scale - s);
            return normalized(a.value * fa + b.value * fb, a.deriv * fa + b.deriv * fb, s, z);
        }
        case NodeKind::Mul: {
            const ScaledJet a = scaled(e.lhs(), z), b = scaled(e.rhs(), z);
            if (is_zero(a) || is_zero(b)) return {};
            return normalized(a.value * b.value, a.value * b.deriv + a.deriv * b.value, a.scale + b.scale, z);
        }
        case NodeKind::Div: {
            const ScaledJet a = scaled(e.lhs(), z), b = scaled(e.rhs(), z);
            if (b.value == cplx{}) throw PoleError("evaluation at a pole", z);
            if (is_zero(a)) return {};
            const cplx q = a.value / b.value;
            return normalized(q, (a.deriv - q * b.deriv) / b.value, a.scale - b.scale, z);
        }
        case NodeKind::Neg: {
            const ScaledJet a = scaled(e.lhs(), z);
            return {-a.value, -a.deriv, a.scale};
        }
        case NodeKind::IntPow: {
            const int n = e.exponent();
            const ScaledJet b = scaled(e.lhs(), z);
            if (n == 0) return normalized({1.0, 0.0}, {}, 0.0, z);
            if (b.value == cplx{}) {
                if (n < 0) throw PoleError("evaluation at a pole", z);
                return n == 1 ? b : ScaledJet{};
            }
            const double mag = std::abs(b.value);
            const cplx unit_pow = ipow(b.value / mag, n);
            const double s = n * (b.scale + std::log(mag));
            return normalized(unit_pow, static_cast<double>(n) * unit_pow * (b.deriv / b.value), s, z);
        }
        case NodeKind::Exp: {
            const ScaledJet a = scaled(e.lhs(), z);
            const double f = std::exp(a.scale);
            const cplx g = a.value * f, dg = a.deriv * f;
            if (!finite(g) || !finite(dg)) throw PoleError("exponent argument overflow", z);
            const cplx v = std::polar(1.0, g.imag());
            return normalized(v, dg * v, g.real(), z);
        }
    }
    return {};
}

}  // namespace

ScaledJet ScaledJet::from(const JetValue &j) {
    const double m = std::max({std::abs(j.value.real()), std::abs(j.value.imag()), std::abs(j.deriv.real()),
                               std::abs(j.deriv.imag())});
    if (m == 0.0 || !std::isfinite(m)) return {j.value, j.deriv, std::isfinite(m) ? 0.0 : m};
    int k = 0;
    std::frexp(m, &k);
    return {{std::ldexp(j.value.real(), -k), std::ldexp(j.value.imag(), -k)},
            {std::ldexp(j.deriv.real(), -k), std::ldexp(j.deriv.imag(), -k)},
            k * std::numbers::ln2};
}

double ScaledJet::log_abs() const { return scale + std::log(std::abs(value)); }

JetValue eval_jet(const Expression &e, std::complex<double> z) { return jet(e, z); }

ScaledJet eval_scaled_jet(const Expression &e, std::complex<double> z) { return scaled(e, z); }

}  // namespace merodiv
