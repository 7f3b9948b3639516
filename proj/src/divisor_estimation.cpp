#include "merodiv/divisor_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "merodiv/errors.hpp"
#include "merodiv/expression.hpp"

namespace merodiv {

namespace {

using cplx = std::complex<double>;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

/// Per-doubling ratio between consecutive spreads (> 1 means shrinking).
double decay_per_doubling(const RadiusProbe &a, const RadiusProbe &b) {
    const double doublings = std::log2(b.radius / a.radius);
    if (b.spread == 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(a.spread / b.spread, 1.0 / doublings);
}

}  // namespace

std::string to_string(NotRationalReason reason) {
    switch (reason) {
        case NotRationalReason::Growth: return "growth";
        case NotRationalReason::NonIntegerWinding: return "non-integer-winding";
        case NotRationalReason::Residual: return "residual";
    }
    return {};
}

std::string to_string(const Verdict &v) {
    struct Visitor {
        std::string operator()(const Rational &r) const { return "Rational(" + std::to_string(r.d) + ")"; }
        std::string operator()(const NotRational &n) const { return "NotRational(" + to_string(n.reason) + ")"; }
        std::string operator()(const Inconclusive &i) const { return "Inconclusive(" + i.reason + ")"; }
    };
    return std::visit(Visitor{}, v);
}

void ProbeSchedule::validate() const {
    if (!(r0 > 0.0) || !std::isfinite(r0)) throw DomainError("initial probe radius must be positive");
    if (!(growth > 1.0) || !std::isfinite(growth)) throw DomainError("radius growth factor must exceed 1");
    if (steps < 3) throw DomainError("at least three probe radii are required");
}

std::vector<double> ProbeSchedule::radii() const {
    validate();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps));
    double r = r0;
    for (int k = 0; k < steps; ++k, r *= growth) out.push_back(r);
    return out;
}

DivisorEstimate limit_probe(const JetEvaluator &f, const ProbeSchedule &schedule, const ContourSpec &spec_template) {
    DivisorEstimate est;
    est.quad_tol = spec_template.tol;
    for (const double r : schedule.radii()) {
        ContourSpec spec = spec_template;
        spec.radius = r;
        const ContourSamples s = sample_winding(f, spec);

        RadiusProbe p;
        p.radius = r;
        p.winding = s.result;
        p.mean_zff = pairwise_sum(s.zff) / static_cast<double>(s.zff.size());
        for (const cplx &w : s.zff) p.spread = std::max(p.spread, std::abs(w - p.mean_zff));
        est.probes.push_back(p);
    }
    if (!est.probes.empty() && est.probes.back().winding.converged) est.d_hat = est.probes.back().winding.nearest_int;
    return est;
}

Verdict classify(const DivisorEstimate &est, double tol_int, double decay_factor) {
    if (est.probes.size() < 3) throw DomainError("classification needs at least three probes");
    if (!(tol_int > 0.0) || !(decay_factor > 1.0)) throw DomainError("tol_int must be positive and decay_factor > 1");
    const auto last = std::span(est.probes).last(3);

    const int d = last[2].winding.nearest_int;
    const bool integer_windings = std::all_of(last.begin(), last.end(), [&](const RadiusProbe &p) {
        return p.winding.converged && p.winding.nearest_int == d && p.winding.residual < tol_int;
    });

    bool decays = true, grows = true;
    for (std::size_t k = 0; k + 1 < last.size(); ++k) {
        const RadiusProbe &a = last[k], &b = last[k + 1];
        const double ratio = decay_per_doubling(a, b);
        if (!(b.spread <= kSpreadFloor || ratio >= decay_factor)) decays = false;
        if (!(a.spread > kSpreadFloor && ratio <= 1.0 / kGrowthFactor)) grows = false;
    }

    if (integer_windings && decays) return Rational{d};
    if (grows) {
        return NotRational{NotRationalReason::Growth,
                           "spread grows from " + fmt(last[0].spread) + " to " + fmt(last[2].spread)};
    }

    if (est.residual_trace && est.residual_trace->size() >= 2) {
        const auto &trace = *est.residual_trace;
        const double prev = trace[trace.size() - 2].max_zg, final = trace.back().max_zg;
        if (final >= kResidualTol && prev >= kResidualTol && final >= prev) {
            return NotRational{NotRationalReason::Residual, "max |z g'| does not vanish: " + fmt(final)};
        }
    }

    const bool settled = std::all_of(last.begin(), last.end(),
                                     [&](const RadiusProbe &p) { return p.winding.last_delta <= est.quad_tol; });
    if (settled) {
        const bool same = std::all_of(last.begin(), last.end(),
                                      [&](const RadiusProbe &p) { return p.winding.nearest_int == d; });
        const bool near_int = std::all_of(last.begin(), last.end(),
                                          [&](const RadiusProbe &p) { return p.winding.residual < tol_int; });
        if (!same || !near_int) {
            return NotRational{NotRationalReason::NonIntegerWinding,
                               same ? "winding settles " + fmt(last[2].winding.residual) + " away from an integer"
                                    : "windings disagree across the last three radii"};
        }
    }

    std::string reason;
    if (!settled) {
        reason = "quadrature did not converge on the outer circles";
    } else if (!decays) {
        reason = "spread neither decays nor grows (last per-doubling ratios " + fmt(decay_per_doubling(last[0], last[1])) +
                 ", " + fmt(decay_per_doubling(last[1], last[2])) + ")";
    } else {
        reason = "winding residual above tolerance";
    }
    return Inconclusive{reason};
}

std::vector<ResidualPoint> residual_zg(const JetEvaluator &f, std::span<const cplx> zeros, std::span<const cplx> poles,
                                       std::span<const double> radii, int nodes) {
    if (radii.empty()) return {};
    const double r_min = *std::min_element(radii.begin(), radii.end());
    auto inside = [&](const cplx &a) { return std::abs(a) < r_min; };
    if (!std::all_of(zeros.begin(), zeros.end(), inside) || !std::all_of(poles.begin(), poles.end(), inside)) {
        throw DomainError("supplied zeros and poles must lie inside the smallest radius");
    }

    std::vector<ResidualPoint> out;
    for (const double r : radii) {
        ContourSpec spec;
        spec.radius = r;
        double worst = 0.0;
        for (const cplx &z : circle_nodes(spec, nodes)) {
            const ScaledJet j = f(z);
            if (j.value == cplx{}) throw PoleError("zero of f on the residual circle", z);
            cplx g = j.log_derivative();
            for (const cplx &a : zeros) g -= 1.0 / (z - a);
            for (const cplx &b : poles) g += 1.0 / (z - b);
            worst = std::max(worst, std::abs(z * g));
        }
        out.push_back({r, worst});
    }
    return out;
}

DivisorEstimate estimate_divisor(const JetEvaluator &f, const ProbeSchedule &schedule, const ContourSpec &spec_template,
                                 const ClassifyParams &params, const std::optional<ZeroPoleData> &known) {
    DivisorEstimate est = limit_probe(f, schedule, spec_template);
    if (known) {
        std::vector<double> radii;
        for (const auto &p : est.probes) radii.push_back(p.radius);
        est.residual_trace = residual_zg(f, known->zeros, known->poles, radii, spec_template.initial_nodes);
    }
    est.verdict = classify(est, params.tol_int, params.decay_factor);
    return est;
}

FtaReport fta_check(const Polynomial &p, const ContourSpec &spec_template) {
    if (p.is_zero()) throw DomainError("fta_check needs a nonzero polynomial");
    FtaReport report;
    report.degree = p.degree();
    report.radius = cauchy_root_bound(p) * 1.1;
    ContourSpec spec = spec_template;
    spec.center = {};
    spec.radius = report.radius;
    report.winding = winding_integral(make_evaluator(p), spec);
    report.count = report.winding.nearest_int;
    report.pass = report.winding.converged && report.count == report.degree;
    return report;
}

NecessityReport verify_necessity(const RationalFunctionExact &f, std::span<const double> radii,
                                 const std::optional<ZeroPoleData> &factored, int nodes) {
    const double joint = joint_cauchy_bound(f);
    for (const double r : radii) {
        if (!(r > joint)) throw DomainError("radius " + fmt(r) + " does not exceed the root bound " + fmt(joint));
    }

    NecessityReport report;
    report.d = divisor(f);
    double max_modulus = joint;
    if (factored) {
        double sum = 0.0;
        max_modulus = 0.0;
        for (const cplx &a : factored->zeros) sum += std::abs(a), max_modulus = std::max(max_modulus, std::abs(a));
        for (const cplx &b : factored->poles) sum += std::abs(b), max_modulus = std::max(max_modulus, std::abs(b));
        report.c = 2.0 * sum;
    } else {
        report.c = 2.0 * (f.numer().degree() * cauchy_root_bound(f.numer()) +
                          f.denom().degree() * cauchy_root_bound(f.denom()));
    }

    const FormalRational exact_ld = log_derivative(f);
    const JetEvaluator jet = make_evaluator(to_expression(f));
    const cplx d(report.d, 0.0);

    report.ok = true;
    for (const double r : radii) {
        ContourSpec spec;
        spec.radius = r;
        const auto zs = circle_nodes(spec, nodes);
        std::vector<cplx> exact_vals, jet_vals;
        NecessityRow row;
        row.radius = r;
        for (const cplx &z : zs) {
            const GaussianRational zq = GaussianRational::from_double(z);
            const cplx e = (zq * exact_ld(zq)).to_complex();
            const cplx j = z * jet(z).log_derivative();
            exact_vals.push_back(e);
            jet_vals.push_back(j);
            row.max_route_diff = std::max(row.max_route_diff, std::abs(e - j));
            row.max_err_exact = std::max(row.max_err_exact, std::abs(e - d));
            row.max_err_jet = std::max(row.max_err_jet, std::abs(j - d));
        }
        row.mean_exact = pairwise_sum(exact_vals) / static_cast<double>(nodes);
        row.mean_jet = pairwise_sum(jet_vals) / static_cast<double>(nodes);
        row.bound = report.c / r;
        row.bound_applicable = r >= 2.0 * max_modulus;
        row.ok = row.max_route_diff < 1e-10 &&
                 (!row.bound_applicable || (row.max_err_exact <= row.bound && row.max_err_jet <= row.bound));
        report.ok = report.ok && row.ok;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace merodiv
