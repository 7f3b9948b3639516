#pragma once

#include <complex>

namespace merodiv {

/// (f(z), f'(z)) pair propagated by forward-mode differentiation.
struct JetValue {
    std::complex<double> value;
    std::complex<double> deriv;
};

/// Jet stored with a shared real exponent: f = value * e^scale and
/// f' = deriv * e^scale, with max(|value|, |deriv|) = 1 unless both vanish.
///
/// Only ratios such as f'/f are needed on large circles, where f itself can
/// leave the double range (e^{2z} at |z| = 1e6); this form keeps them exact
/// up to rounding.
struct ScaledJet {
    std::complex<double> value;
    std::complex<double> deriv;
    double scale = 0.0;

    /// Normalizes a plain jet; non-finite input yields a non-finite scale.
    static ScaledJet from(const JetValue &jet);

    /// f'/f; infinite or NaN when value is zero.
    std::complex<double> log_derivative() const { return deriv / value; }
    /// log|f|
    double log_abs() const;
};

}  // namespace merodiv
