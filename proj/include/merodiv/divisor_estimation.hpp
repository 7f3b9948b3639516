#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "merodiv/contour.hpp"
#include "merodiv/rational_function.hpp"

namespace merodiv {

/// Behaviour of z f'(z)/f(z) on one circle |z| = radius.
struct RadiusProbe {
    double radius = 0.0;
    /// Angle average of z f'/f over the final node set.
    std::complex<double> mean_zff;
    /// max_j |z_j f'(z_j)/f(z_j) - mean_zff|; the finite-sample stand-in for
    /// uniform convergence in the angle.
    double spread = 0.0;
    WindingResult winding;
};

enum class NotRationalReason { Growth, NonIntegerWinding, Residual };

struct Rational {
    int d = 0;
};
struct NotRational {
    NotRationalReason reason = NotRationalReason::Growth;
    std::string detail;
};
struct Inconclusive {
    std::string reason;
};
using Verdict = std::variant<Rational, NotRational, Inconclusive>;

std::string to_string(NotRationalReason reason);
/// "Rational(1)", "NotRational(growth)", "Inconclusive(...)".
std::string to_string(const Verdict &v);

/// max |z g'(z)| on the circle of the given radius, where
/// g' = f'/f - sum 1/(z - a_k) + sum 1/(z - b_k).
struct ResidualPoint {
    double radius = 0.0;
    double max_zg = 0.0;
};

struct DivisorEstimate {
    std::vector<RadiusProbe> probes;  // strictly increasing radius
    std::optional<int> d_hat;
    Verdict verdict = Inconclusive{"not classified"};
    std::optional<std::vector<ResidualPoint>> residual_trace;
    /// Quadrature tolerance the probes were computed with.
    double quad_tol = 1e-9;
};

/// Geometric radius schedule r_k = r0 * growth^k, k = 0..steps-1.
struct ProbeSchedule {
    double r0 = 4.0;
    double growth = 2.0;
    int steps = 6;

    /// Throws DomainError unless r0 > 0, growth > 1 and steps >= 3.
    void validate() const;
    std::vector<double> radii() const;
};

struct ClassifyParams {
    double tol_int = 1e-3;
    double decay_factor = 1.5;
};

/// Spreads at or below this are treated as already converged (z^3, constants).
inline constexpr double kSpreadFloor = 1e-9;
/// Per-doubling spread increase that signals a transcendental factor.
inline constexpr double kGrowthFactor = 1.5;
/// |z g'| above this at the largest radius counts against rationality.
inline constexpr double kResidualTol = 1e-6;

/// Probes z f'/f on each circle of the schedule (centred at spec_template.center,
/// radius from the schedule). Leaves the verdict Inconclusive.
/// ContourSingularityError propagates with the failing radius.
DivisorEstimate limit_probe(const JetEvaluator &f, const ProbeSchedule &schedule, const ContourSpec &spec_template);

/// Rational(d) when the last three probes agree on a converged integer winding d
/// and the spread shrinks by decay_factor per radius doubling; NotRational when
/// the spread grows, the windings settle on non-integers or disagree, or a
/// supplied residual trace refuses to vanish; Inconclusive otherwise.
/// Throws DomainError with fewer than three probes.
Verdict classify(const DivisorEstimate &est, double tol_int = 1e-3, double decay_factor = 1.5);

/// Throws DomainError unless every supplied zero/pole lies strictly inside the
/// smallest radius. PoleError propagates.
std::vector<ResidualPoint> residual_zg(const JetEvaluator &f, std::span<const std::complex<double>> zeros,
                                       std::span<const std::complex<double>> poles, std::span<const double> radii,
                                       int nodes = 64);

/// Known zeros and poles (with repetition for multiplicity).
struct ZeroPoleData {
    std::vector<std::complex<double>> zeros;
    std::vector<std::complex<double>> poles;
};

/// limit_probe + optional residual trace + classify.
DivisorEstimate estimate_divisor(const JetEvaluator &f, const ProbeSchedule &schedule, const ContourSpec &spec_template,
                                 const ClassifyParams &params = {},
                                 const std::optional<ZeroPoleData> &known = std::nullopt);

struct FtaReport {
    int count = 0;
    int degree = 0;
    bool pass = false;
    double radius = 0.0;
    WindingResult winding;
};

/// Counts zeros of p inside 1.1 * cauchy_root_bound(p) and compares with deg p.
/// Throws DomainError for the zero polynomial.
FtaReport fta_check(const Polynomial &p, const ContourSpec &spec_template = {});

struct NecessityRow {
    double radius = 0.0;
    std::complex<double> mean_exact;
    std::complex<double> mean_jet;
    /// max_j |exact - jet| of z f'/f at the nodes.
    double max_route_diff = 0.0;
    /// max_j |z f'/f - d| per route.
    double max_err_exact = 0.0;
    double max_err_jet = 0.0;
    /// C / r; applicable only when r >= 2 * (largest zero/pole modulus).
    double bound = 0.0;
    bool bound_applicable = false;
    bool ok = false;
};

struct NecessityReport {
    int d = 0;
    double c = 0.0;
    std::vector<NecessityRow> rows;
    bool ok = false;
};

/// Evaluates z f'/f at circle nodes through the exact logarithmic derivative
/// and through the jet evaluator, requiring agreement to 1e-10 and pointwise
/// error within C/r of the divisor. C = 2 (sum |zeros| + sum |poles|) when the
/// factored form is supplied, else 2 (deg P * B_P + deg Q * B_Q) with Cauchy bounds B.
/// Throws DomainError when a radius does not exceed the joint Cauchy bound.
NecessityReport verify_necessity(const RationalFunctionExact &f, std::span<const double> radii,
                                 const std::optional<ZeroPoleData> &factored = std::nullopt, int nodes = 64);

}  // namespace merodiv
