#include "merodiv/contour.hpp"

#include <atomic>
#include <bit>
#include <climits>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <thread>

#include "merodiv/errors.hpp"

namespace merodiv {

namespace {

using cplx = std::complex<double>;

constexpr int kPerturbationAttempts = 3;
constexpr double kPerturbationStep = 0.013;
// |f'/f| * radius above this means a zero or pole within ~1e-12 relative distance of the node.
constexpr double kSingularityGuard = 1e12;
constexpr std::size_t kParallelThreshold = 4096;

bool finite(cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

/// e^{2 pi i j / n}, computed from the reduced fraction so that node 2j of a
/// 2n-point rule is bit-identical to node j of the n-point rule.
cplx unit_root(long long j, long long n) {
    j %= n;
    if (j < 0) j += n;
    const long long g = std::gcd(j, n);
    j /= g;
    n /= g;
    if (j == 0) return {1.0, 0.0};
    if (n == 2) return {-1.0, 0.0};
    if (n == 4) return j == 1 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    return {std::cos(theta), std::sin(theta)};
}

cplx node(cplx center, double radius, long long j, long long n) { return center + radius * unit_root(j, n); }

/// f'/f at each requested node, or nullopt if any node trips the singularity guard.
std::optional<std::vector<cplx>> log_derivatives(const JetEvaluator &f, std::span<const cplx> nodes, double radius) {
    std::vector<cplx> out(nodes.size());
    std::atomic<bool> tripped{false};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end && !tripped.load(std::memory_order_relaxed); ++j) {
            try {
                const ScaledJet s = f(nodes[j]);
                const cplx ld = s.log_derivative();
                if (s.value == cplx{} || !finite(ld) || std::abs(ld) * radius > kSingularityGuard) {
                    tripped = true;
                    return;
                }
                out[j] = ld;
            } catch (const PoleError &) {
                tripped = true;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                tripped = true;
            }
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (nodes.size() < kParallelThreshold || hw == 1) {
        work(0, nodes.size());
    } else {
        // Each slot is written by exactly one thread; the reduction happens later in index order.
        const std::size_t chunks = std::min<std::size_t>(hw, 16);
        const std::size_t per = (nodes.size() + chunks - 1) / chunks;
        std::vector<std::jthread> threads;
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t begin = c * per, end = std::min(nodes.size(), begin + per);
            if (begin < end) threads.emplace_back(work, begin, end);
        }
    }
    if (failure) std::rethrow_exception(failure);
    if (tripped) return std::nullopt;
    return out;
}

struct Integration {
    double radius = 0.0;
    std::vector<cplx> nodes;
    std::vector<cplx> log_deriv;
    cplx estimate;
    double last_delta = std::numeric_limits<double>::infinity();
};

cplx weighted_mean(const ContourSpec &spec, std::span<const cplx> nodes, std::span<const cplx> log_deriv, int k) {
    std::vector<cplx> w(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        w[j] = (nodes[j] - spec.center) * log_deriv[j];
        for (int p = 0; p < k; ++p) w[j] *= nodes[j];
    }
    return pairwise_sum(w) / static_cast<double>(nodes.size());
}

std::optional<Integration> integrate_at(const JetEvaluator &f, const ContourSpec &spec, double radius, int k) {
    Integration it;
    it.radius = radius;
    const long long n0 = spec.initial_nodes;
    it.nodes.resize(static_cast<std::size_t>(n0));
    for (long long j = 0; j < n0; ++j) it.nodes[static_cast<std::size_t>(j)] = node(spec.center, radius, j, n0);
    auto first = log_derivatives(f, it.nodes, radius);
    if (!first) return std::nullopt;
    it.log_deriv = std::move(*first);
    it.estimate = weighted_mean(spec, it.nodes, it.log_deriv, k);

    // Moments grow like radius^k; the stopping rule scales with them (k = 0 is the plain rule).
    const double stop = spec.tol * std::pow(std::max(1.0, std::abs(spec.center) + radius), k);

    long long n = n0;
    while (n < spec.max_nodes) {
        const long long n2 = 2 * n;
        std::vector<cplx> fresh(static_cast<std::size_t>(n));
        for (long long j = 0; j < n; ++j) fresh[static_cast<std::size_t>(j)] = node(spec.center, radius, 2 * j + 1, n2);
        auto odd = log_derivatives(f, fresh, radius);
        if (!odd) return std::nullopt;

        std::vector<cplx> nodes(static_cast<std::size_t>(n2)), ld(static_cast<std::size_t>(n2));
        for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
            nodes[2 * j] = it.nodes[j];
            ld[2 * j] = it.log_deriv[j];
            nodes[2 * j + 1] = fresh[j];
            ld[2 * j + 1] = (*odd)[j];
        }
        it.nodes = std::move(nodes);
        it.log_deriv = std::move(ld);
        const cplx next = weighted_mean(spec, it.nodes, it.log_deriv, k);
        it.last_delta = std::abs(next - it.estimate);
        it.estimate = next;
        n = n2;
        if (it.last_delta < stop) break;
    }
    return it;
}

Integration integrate(const JetEvaluator &f, const ContourSpec &spec, int k) {
    spec.validate();
    for (int attempt = 0; attempt <= kPerturbationAttempts; ++attempt) {
        const double radius = spec.radius * (1.0 + kPerturbationStep * attempt);
        if (auto it = integrate_at(f, spec, radius, k)) return std::move(*it);
    }
    throw ContourSingularityError("zero or pole on the contour near radius " + std::to_string(spec.radius) +
                                      " persisted after " + std::to_string(kPerturbationAttempts) + " perturbations",
                                  spec.radius);
}

WindingResult finish(const Integration &it, const ContourSpec &spec) {
    WindingResult r;
    r.raw = it.estimate;
    const double re = it.estimate.real();
    if (std::abs(re) < static_cast<double>(INT_MAX) / 2) {
        r.nearest_int = static_cast<int>(std::lround(re));
    } else {
        r.nearest_int = re > 0 ? INT_MAX / 2 : -(INT_MAX / 2);
    }
    r.residual = std::abs(it.estimate - cplx(r.nearest_int, 0.0));
    r.nodes_used = static_cast<int>(it.nodes.size());
    r.radius_used = it.radius;
    r.last_delta = it.last_delta;
    r.converged = it.last_delta <= spec.tol && r.residual <= spec.tol;
    return r;
}

}  // namespace

void ContourSpec::validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("contour radius must be positive and finite");
    if (!std::isfinite(center.real()) || !std::isfinite(center.imag())) throw DomainError("contour center must be finite");
    if (initial_nodes < 8 || !std::has_single_bit(static_cast<unsigned>(initial_nodes))) {
        throw DomainError("initial node count must be a power of two >= 8");
    }
    if (max_nodes < initial_nodes || !std::has_single_bit(static_cast<unsigned>(max_nodes))) {
        throw DomainError("maximum node count must be a power of two >= the initial node count");
    }
    if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
}

std::vector<cplx> circle_nodes(const ContourSpec &spec, int n) {
    if (n < 1) throw DomainError("node count must be at least 1");
    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = node(spec.center, spec.radius, j, n);
    return out;
}

cplx pairwise_sum(std::span<const cplx> values) {
    if (values.size() <= 8) {
        cplx acc{};
        for (const cplx &v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

WindingResult winding_integral(const JetEvaluator &f, const ContourSpec &spec) {
    return finish(integrate(f, spec, 0), spec);
}

ContourSamples sample_winding(const JetEvaluator &f, const ContourSpec &spec) {
    Integration it = integrate(f, spec, 0);
    ContourSamples out;
    out.result = finish(it, spec);
    out.zff.resize(it.nodes.size());
    for (std::size_t j = 0; j < it.nodes.size(); ++j) out.zff[j] = it.nodes[j] * it.log_deriv[j];
    out.nodes = std::move(it.nodes);
    return out;
}

cplx moment_integral(const JetEvaluator &f, const ContourSpec &spec, int k) {
    if (k < 0) throw DomainError("moment order must be non-negative");
    return integrate(f, spec, k).estimate;
}

JetEvaluator make_evaluator(Expression e) {
    return [e = std::move(e)](cplx z) { return eval_scaled_jet(e, z); };
}

JetEvaluator make_evaluator(std::function<JetValue(cplx)> f) {
    return [f = std::move(f)](cplx z) {
        const JetValue j = f(z);
        if (!finite(j.value) || !finite(j.deriv)) throw PoleError("non-finite value from evaluator", z);
        return ScaledJet::from(j);
    };
}

JetEvaluator make_evaluator(const Polynomial &p) {
    std::vector<cplx> c;
    c.reserve(p.coeffs().size());
    for (const auto &a : p.coeffs()) c.push_back(a.to_complex());
    return [c = std::move(c)](cplx z) {
        cplx v{}, d{};
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            d = d * z + v;
            v = v * z + *it;
        }
        if (!finite(v) || !finite(d)) throw PoleError("polynomial overflow", z);
        return ScaledJet::from({v, d});
    };
}

}  // namespace merodiv
