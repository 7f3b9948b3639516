#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "merodiv/expression.hpp"
#include "merodiv/jet.hpp"

namespace merodiv {

/// Black-box meromorphic function: z -> (f, f') in scaled form.
/// Must be safe to call concurrently.
using JetEvaluator = std::function<ScaledJet(std::complex<double>)>;

JetEvaluator make_evaluator(Expression e);
/// Wraps an evaluator producing plain (f, f') pairs.
JetEvaluator make_evaluator(std::function<JetValue(std::complex<double>)> f);
/// Horner evaluation of p with coefficients rounded to double.
JetEvaluator make_evaluator(const Polynomial &p);

/// Counterclockwise circle with the quadrature controls.
struct ContourSpec {
    std::complex<double> center{};
    double radius = 1.0;
    int initial_nodes = 64;
    int max_nodes = 65536;
    double tol = 1e-9;

    /// Throws DomainError unless radius > 0 and 8 <= initial_nodes <= max_nodes, both powers of two.
    void validate() const;
};

struct WindingResult {
    std::complex<double> raw;
    int nearest_int = 0;
    double residual = 0.0;
    int nodes_used = 0;
    double radius_used = 0.0;
    /// |difference| between the last two node-doubling estimates (infinite if no doubling happened).
    double last_delta = 0.0;
    /// last_delta <= tol and residual <= tol.
    bool converged = false;
};

/// z_j = center + radius * e^{2 pi i j / n}, j = 0..n-1. Throws DomainError for n < 1.
std::vector<std::complex<double>> circle_nodes(const ContourSpec &spec, int n);

/// Everything the trapezoid rule produced on its final node set.
struct ContourSamples {
    WindingResult result;
    std::vector<std::complex<double>> nodes;
    /// z_j * f'(z_j) / f(z_j) at each final node.
    std::vector<std::complex<double>> zff;
};

/// (1 / 2 pi i) * contour integral of f'/f, i.e. zeros minus poles inside the
/// circle. Node count doubles from initial_nodes until successive estimates
/// agree to tol or max_nodes is reached; non-convergence is reported, not thrown.
/// A node landing on (or within ~1e-12 relative distance of) a zero or pole
/// triggers up to three retries at radius * (1 + 0.013 * attempt); after that
/// ContourSingularityError is thrown.
WindingResult winding_integral(const JetEvaluator &f, const ContourSpec &spec);

/// winding_integral plus the final node set and the z f'/f samples on it.
ContourSamples sample_winding(const JetEvaluator &f, const ContourSpec &spec);

/// (1 / 2 pi i) * contour integral of z^k f'/f: power sums of zeros minus poles.
/// k = 0 reproduces winding_integral(...).raw bit for bit.
std::complex<double> moment_integral(const JetEvaluator &f, const ContourSpec &spec, int k);

/// Fixed-tree pairwise sum; the result depends only on the input order.
std::complex<double> pairwise_sum(std::span<const std::complex<double>> values);

}  // namespace merodiv
