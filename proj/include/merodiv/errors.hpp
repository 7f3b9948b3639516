#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace merodiv {

/// Precondition violated (zero polynomial where nonzero is required, bad radius, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact evaluation hit a root of the denominator.
class ExactPoleError : public DomainError {
public:
    ExactPoleError(const std::string &what, std::string point)
        : DomainError(what), point_(std::move(point)) {}

    const std::string &point() const noexcept { return point_; }

private:
    std::string point_;
};

/// Floating evaluation hit an exact zero denominator or produced a non-finite intermediate.
class PoleError : public std::runtime_error {
public:
    PoleError(const std::string &what, std::complex<double> point)
        : std::runtime_error(what), point_(point) {}

    std::complex<double> point() const noexcept { return point_; }

private:
    std::complex<double> point_;
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string &what, std::size_t offset, std::vector<std::string> expected)
        : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

    /// Zero-based byte offset of the offending token (input length for end of input).
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string> &expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// A literal could not be converted to an exact Gaussian rational.
class ConversionError : public std::runtime_error {
public:
    ConversionError(const std::string &what, std::string literal)
        : std::runtime_error(what), literal_(std::move(literal)) {}

    const std::string &literal() const noexcept { return literal_; }

private:
    std::string literal_;
};

/// Every radius perturbation still placed a node on (or numerically at) a zero or pole.
class ContourSingularityError : public std::runtime_error {
public:
    ContourSingularityError(const std::string &what, double radius)
        : std::runtime_error(what), radius_(radius) {}

    /// Radius requested by the caller, before perturbation.
    double radius() const noexcept { return radius_; }

private:
    double radius_;
};

}  // namespace merodiv
