#include "support/generators.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace merodiv::fixtures {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;
constexpr long kGrid = 1000;  // roots live on a 1e-3 grid

struct GridPoint {
    long x, y;
};

GridPoint random_grid_point(std::mt19937_64 &rng, double radius) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const long limit = static_cast<long>(radius * kGrid);
    while (true) {
        const double r = radius * std::sqrt(unit(rng));
        const double t = 2.0 * std::numbers::pi * unit(rng);
        const GridPoint p{std::lround(r * std::cos(t) * kGrid), std::lround(r * std::sin(t) * kGrid)};
        if (p.x * p.x + p.y * p.y <= limit * limit) return p;
    }
}

GaussianRational to_gaussian(GridPoint p) { return {mpq_class(p.x, kGrid), mpq_class(p.y, kGrid)}; }

}  // namespace

ZeroPoleData FactoredRational::zero_pole_data() const {
    ZeroPoleData d;
    for (const auto &a : zeros) d.zeros.push_back(a.to_complex());
    for (const auto &b : poles) d.poles.push_back(b.to_complex());
    return d;
}

double FactoredRational::max_modulus() const {
    double m = 0.0;
    for (const auto &a : zeros) m = std::max(m, std::abs(a.to_complex()));
    for (const auto &b : poles) m = std::max(m, std::abs(b.to_complex()));
    return m;
}

double FactoredRational::abs_sum() const {
    double s = 0.0;
    for (const auto &a : zeros) s += std::abs(a.to_complex());
    for (const auto &b : poles) s += std::abs(b.to_complex());
    return s;
}

FactoredRational random_factored(std::mt19937_64 &rng, const CorpusOptions &opt) {
    std::uniform_int_distribution<int> degree(0, opt.max_degree);
    const int m = degree(rng), n = degree(rng);
    const long sep2 = static_cast<long>(std::llround(opt.min_separation * kGrid * opt.min_separation * kGrid));

    std::vector<GridPoint> points;
    while (static_cast<int>(points.size()) < m + n) {
        const GridPoint p = random_grid_point(rng, opt.disc_radius);
        bool ok = true;
        for (const GridPoint &q : points) {
            const long dx = p.x - q.x, dy = p.y - q.y;
            if (dx * dx + dy * dy < sep2) ok = false;
        }
        if (ok) points.push_back(p);
    }

    FactoredRational f;
    for (int k = 0; k < m; ++k) f.zeros.push_back(to_gaussian(points[static_cast<std::size_t>(k)]));
    for (int k = 0; k < n; ++k) f.poles.push_back(to_gaussian(points[static_cast<std::size_t>(m + k)]));

    std::uniform_int_distribution<long> lead_part(-8, 8);
    long re = 0, im = 0;
    while (re == 0 && im == 0) re = lead_part(rng), im = lead_part(rng);
    f.lead = GaussianRational(mpq_class(re, 4), mpq_class(im, 4));

    f.exact = reduce(Polynomial::from_roots(f.zeros, f.lead), Polynomial::from_roots(f.poles));
    f.text = f.exact.to_expression_text();
    return f;
}

std::vector<FactoredRational> rational_corpus(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<FactoredRational> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(random_factored(rng));
    return out;
}

std::vector<ExpCase> exp_corpus(std::size_t count, std::uint64_t seed) {
    const std::pair<cplx, const char *> alphas[] = {
        {{1.0, 0.0}, "1"}, {{0.0, 1.0}, "i"}, {{-2.0, 0.0}, "(-2)"}, {{0.0, 0.5}, "(0.5*i)"}};
    std::mt19937_64 rng(seed);
    std::vector<ExpCase> out;
    for (std::size_t k = 0; k < count; ++k) {
        ExpCase c;
        c.base = random_factored(rng);
        c.alpha = alphas[k % 4].first;
        c.alpha_text = alphas[k % 4].second;
        c.text = c.base.text + "*exp(" + c.alpha_text + "*z)";
        out.push_back(std::move(c));
    }
    return out;
}

Expression random_expression(std::mt19937_64 &rng, const AstOptions &opt) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto leaf = [&]() -> Expression {
        static const char *const literals[] = {"1", "2", "3", "0.5", "2.25", "1e-1", "1.5E+0", "7", "i", "0.125"};
        const double u = unit(rng);
        if (u < 0.5) return Expression::variable();
        if (u < 0.8) return Expression::constant(literals[std::uniform_int_distribution<int>(0, 9)(rng)]);
        return Expression::constant(std::uniform_real_distribution<double>(0.05, 4.0)(rng));
    };
    auto build = [&](auto &&self, int depth) -> Expression {
        if (depth <= 1 || unit(rng) < 0.25) return leaf();
        const int kinds = opt.allow_exp ? 7 : 6;
        switch (std::uniform_int_distribution<int>(0, kinds - 1)(rng)) {
            case 0: return Expression::add(self(self, depth - 1), self(self, depth - 1));
            case 1: return Expression::sub(self(self, depth - 1), self(self, depth - 1));
            case 2: return Expression::mul(self(self, depth - 1), self(self, depth - 1));
            case 3: return Expression::div(self(self, depth - 1), self(self, depth - 1));
            case 4: return Expression::neg(self(self, depth - 1));
            case 5: {
                const int n = std::uniform_int_distribution<int>(-opt.max_exponent, opt.max_exponent)(rng);
                return Expression::int_pow(self(self, depth - 1), n);
            }
            default: return Expression::exp(self(self, depth - 1));
        }
    };
    return build(build, opt.max_depth);
}

BoundedValue evaluate_with_error_bound(const Expression &e, cplx z) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double u = kUnitRoundoff;
    switch (e.kind()) {
        case NodeKind::Variable: return {z, 0.0};
        case NodeKind::Constant: return {e.constant_value(), u * std::abs(e.constant_value())};
        case NodeKind::Add:
        case NodeKind::Sub: {
            const auto a = evaluate_with_error_bound(e.lhs(), z), b = evaluate_with_error_bound(e.rhs(), z);
            const cplx v = e.kind() == NodeKind::Add ? a.value + b.value : a.value - b.value;
            return {v, a.bound + b.bound + 2 * u * std::abs(v)};
        }
        case NodeKind::Mul: {
            const auto a = evaluate_with_error_bound(e.lhs(), z), b = evaluate_with_error_bound(e.rhs(), z);
            const cplx v = a.value * b.value;
            return {v, std::abs(a.value) * b.bound + std::abs(b.value) * a.bound + a.bound * b.bound + 4 * u * std::abs(v)};
        }
        case NodeKind::Div: {
            const auto a = evaluate_with_error_bound(e.lhs(), z), b = evaluate_with_error_bound(e.rhs(), z);
            const double mb = std::abs(b.value);
            if (!(mb > b.bound)) return {cplx{}, inf};
            const cplx v = a.value / b.value;
            return {v, (a.bound + std::abs(v) * b.bound) / (mb - b.bound) + 6 * u * std::abs(v)};
        }
        case NodeKind::Neg: {
            const auto a = evaluate_with_error_bound(e.lhs(), z);
            return {-a.value, a.bound};
        }
        case NodeKind::IntPow: {
            const auto b = evaluate_with_error_bound(e.lhs(), z);
            const int n = e.exponent();
            if (n == 0) return {1.0, 0.0};
            const double mb = std::abs(b.value);
            if (!(mb > b.bound)) return {cplx{}, inf};
            const double rel = b.bound / mb;
            const cplx v = std::pow(b.value, n);
            const double an = std::abs(n);
            return {v, std::abs(v) * (std::expm1(an * std::log1p(rel / (1.0 - rel))) + (4 * an + 6) * u)};
        }
        case NodeKind::Exp: {
            const auto a = evaluate_with_error_bound(e.lhs(), z);
            const cplx v = std::exp(a.value);
            return {v, std::abs(v) * (std::expm1(a.bound) + 4 * u)};
        }
    }
    return {cplx{}, inf};
}

cplx central_difference(const Expression &e, cplx z, double h) {
    return (eval_jet(e, z + h).value - eval_jet(e, z - h).value) / (2.0 * h);
}

Polynomial random_integer_polynomial(std::mt19937_64 &rng, int degree, int range) {
    std::uniform_int_distribution<long> coeff(-range, range);
    std::vector<GaussianRational> c(static_cast<std::size_t>(degree) + 1);
    for (auto &a : c) a = GaussianRational(coeff(rng));
    while (c.back().is_zero()) c.back() = GaussianRational(coeff(rng));
    return Polynomial(std::move(c));
}

}  // namespace merodiv::fixtures
