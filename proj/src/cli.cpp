#include "merodiv/cli.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "merodiv/contour.hpp"
#include "merodiv/divisor_estimation.hpp"
#include "merodiv/errors.hpp"
#include "merodiv/expression.hpp"

namespace merodiv::cli {

namespace {

using nlohmann::json;
using cplx = std::complex<double>;

/// Usage-level problem with the supplied parameters.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Expression valid but of the wrong shape for the command.
struct WrongForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

json rational_json(const GaussianRational &c) { return json::array({c.re().get_str(), c.im().get_str()}); }

json polynomial_json(const Polynomial &p) {
    json coeffs = json::array();
    for (const auto &c : p.coeffs()) coeffs.push_back(rational_json(c));
    return {{"text", p.to_string()}, {"degree", p.degree()}, {"coeffs", coeffs}};
}

json winding_json(const WindingResult &w) {
    return {{"raw", complex_json(w.raw)},
            {"nearest_int", w.nearest_int},
            {"residual", w.residual},
            {"nodes", w.nodes_used},
            {"radius_used", w.radius_used},
            {"delta", std::isfinite(w.last_delta) ? json(w.last_delta) : json(nullptr)},
            {"converged", w.converged}};
}

json verdict_json(const Verdict &v) {
    struct Visitor {
        json operator()(const Rational &r) const { return {{"kind", "rational"}, {"d", r.d}}; }
        json operator()(const NotRational &n) const {
            return {{"kind", "not_rational"}, {"reason", to_string(n.reason)}, {"detail", n.detail}};
        }
        json operator()(const Inconclusive &i) const { return {{"kind", "inconclusive"}, {"reason", i.reason}}; }
    };
    return std::visit(Visitor{}, v);
}

std::string num(double v, int precision = 10) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

std::string cnum(cplx c, int precision = 10) {
    std::ostringstream os;
    os << std::setprecision(precision) << c.real() << (std::signbit(c.imag()) ? " - " : " + ")
       << std::abs(c.imag()) << "i";
    return os.str();
}

std::string pad(const std::string &s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

ContourSpec contour_spec(const RunConfig &c, double radius) {
    ContourSpec spec;
    spec.center = c.center;
    spec.radius = radius;
    spec.initial_nodes = c.nodes;
    spec.max_nodes = c.max_nodes;
    spec.tol = c.tol;
    try {
        spec.validate();
    } catch (const DomainError &e) {
        throw UsageError(e.what());
    }
    return spec;
}

json quadrature_params(const RunConfig &c) {
    return {{"nodes", c.nodes}, {"max_nodes", c.max_nodes}, {"tol", c.tol}};
}

std::string winding_text(const WindingResult &w) {
    std::ostringstream os;
    os << "raw:          " << cnum(w.raw, 15) << "\n"
       << "nearest_int:  " << w.nearest_int << "\n"
       << "residual:     " << num(w.residual, 6) << "\n"
       << "nodes:        " << w.nodes_used << "\n"
       << "radius_used:  " << num(w.radius_used, 15) << "\n"
       << "delta:        " << num(w.last_delta, 6) << "\n"
       << "converged:    " << (w.converged ? "true" : "false") << "\n";
    return os.str();
}

CommandOutput cmd_divisor(const Expression &e) {
    const auto exact = as_exact_rational(e);
    if (!exact) throw WrongForm("expression contains exp; use `classify` for transcendental inputs");
    const int m = exact->numer().degree(), n = exact->denom().degree();

    CommandOutput out;
    out.json["params"] = json::object();
    out.json["result"] = {{"numerator", polynomial_json(exact->numer())},
                          {"denominator", polynomial_json(exact->denom())},
                          {"m", m},
                          {"n", n},
                          {"d", divisor(*exact)}};
    std::ostringstream os;
    os << "P(z) = " << exact->numer().to_string() << "\n"
       << "Q(z) = " << exact->denom().to_string() << "\n"
       << "m = deg P = " << m << "\n"
       << "n = deg Q = " << n << "\n"
       << "d = m - n = " << divisor(*exact) << "\n";
    out.text = os.str();
    return out;
}

CommandOutput cmd_classify(const RunConfig &c, const Expression &e) {
    const ContourSpec spec = contour_spec(c, 1.0);

    std::optional<RationalFunctionExact> exact;
    try {
        exact = as_exact_rational(e);
    } catch (const ConversionError &) {
    } catch (const DomainError &) {
        // Identically zero input: the numerical path reports it as a contour failure.
    }

    ProbeSchedule schedule;
    schedule.r0 = c.r0 ? *c.r0 : (exact ? 2.0 * joint_cauchy_bound(*exact) : 4.0);
    schedule.growth = c.growth;
    schedule.steps = c.steps;
    try {
        schedule.validate();
    } catch (const DomainError &err) {
        throw UsageError(err.what());
    }
    if (!(c.tol_int > 0.0)) throw UsageError("--tol-int must be positive");
    if (!(c.decay_factor > 1.0)) throw UsageError("--decay-factor must exceed 1");

    const DivisorEstimate est =
        estimate_divisor(make_evaluator(e), schedule, spec, ClassifyParams{c.tol_int, c.decay_factor});

    CommandOutput out;
    out.json["params"] = {{"r0", schedule.r0},         {"growth", c.growth},     {"steps", c.steps},
                          {"nodes", c.nodes},          {"max_nodes", c.max_nodes}, {"tol", c.tol},
                          {"tol_int", c.tol_int},      {"decay_factor", c.decay_factor}};
    json probes = json::array();
    std::ostringstream os;
    os << pad("radius", 16) << pad("mean", 44) << pad("spread", 16) << pad("winding", 9) << pad("residual", 14)
       << pad("nodes", 8) << "converged\n";
    for (const RadiusProbe &p : est.probes) {
        probes.push_back({{"radius", p.radius},
                          {"mean", complex_json(p.mean_zff)},
                          {"spread", p.spread},
                          {"winding", winding_json(p.winding)}});
        os << pad(num(p.radius), 16) << pad(cnum(p.mean_zff, 15), 44) << pad(num(p.spread, 6), 16)
           << pad(std::to_string(p.winding.nearest_int), 9) << pad(num(p.winding.residual, 6), 14)
           << pad(std::to_string(p.winding.nodes_used), 8) << (p.winding.converged ? "yes" : "no") << "\n";
    }
    out.json["result"] = {{"verdict", verdict_json(est.verdict)}, {"probes", probes}};
    os << "verdict: " << to_string(est.verdict) << "\n";

    if (exact) {
        const int d = divisor(*exact);
        const auto *rational = std::get_if<Rational>(&est.verdict);
        const bool agrees = rational != nullptr && rational->d == d;
        out.json["result"]["exact"] = {{"d", d},
                                       {"numerator", polynomial_json(exact->numer())},
                                       {"denominator", polynomial_json(exact->denom())}};
        out.json["result"]["agrees"] = agrees;
        os << "self-check: exact d = " << d << ", numeric " << to_string(est.verdict) << ": "
           << (agrees ? "agree" : "DISAGREE") << "\n";
    }
    out.text = os.str();
    return out;
}

CommandOutput cmd_winding(const RunConfig &c, const Expression &e) {
    const ContourSpec spec = contour_spec(c, c.radius);
    const WindingResult w = winding_integral(make_evaluator(e), spec);

    CommandOutput out;
    out.json["params"] = quadrature_params(c);
    out.json["params"]["center"] = complex_json(c.center);
    out.json["params"]["radius"] = c.radius;
    out.json["result"] = winding_json(w);
    out.text = "circle: center " + cnum(c.center) + ", radius " + num(c.radius) + "\n" + winding_text(w);
    return out;
}

CommandOutput cmd_fta(const RunConfig &c, const Expression &e) {
    const ContourSpec spec = contour_spec(c, 1.0);
    const auto exact = as_exact_rational(e);
    if (!exact) throw WrongForm("expression contains exp; `fta` needs a polynomial");
    if (exact->denom().degree() != 0) throw WrongForm("expression is not a polynomial (denominator " +
                                                      exact->denom().to_string() + ")");
    const FtaReport r = fta_check(exact->numer(), spec);

    CommandOutput out;
    out.json["params"] = quadrature_params(c);
    out.json["result"] = {{"polynomial", polynomial_json(exact->numer())},
                          {"degree", r.degree},
                          {"count", r.count},
                          {"radius", r.radius},
                          {"pass", r.pass},
                          {"winding", winding_json(r.winding)}};
    std::ostringstream os;
    os << "p(z) = " << exact->numer().to_string() << "\n"
       << "degree:  " << r.degree << "\n"
       << "radius:  " << num(r.radius) << "\n"
       << "count:   " << r.count << "\n"
       << "result:  " << (r.pass ? "pass" : "FAIL") << "\n"
       << winding_text(r.winding);
    out.text = os.str();
    return out;
}

CommandOutput failure(int code, const std::string &kind, const std::string &message) {
    CommandOutput out;
    out.exit_code = code;
    out.json["error"] = {{"kind", kind}, {"message", message}};
    out.text = "error: " + message + "\n";
    return out;
}

}  // namespace

CommandOutput run_command(const RunConfig &config) {
    CommandOutput out;
    try {
        const Expression e = parse(config.expression);
        if (config.command == "divisor") {
            out = cmd_divisor(e);
        } else if (config.command == "classify") {
            out = cmd_classify(config, e);
        } else if (config.command == "winding") {
            out = cmd_winding(config, e);
        } else if (config.command == "fta") {
            out = cmd_fta(config, e);
        } else {
            out = failure(kUsage, "usage", "unknown command '" + config.command + "'");
        }
    } catch (const SyntaxError &e) {
        out = failure(kParseError, "parse", e.what());
        out.json["error"]["offset"] = e.offset();
        out.json["error"]["expected"] = e.expected();
    } catch (const UsageError &e) {
        out = failure(kUsage, "usage", e.what());
    } catch (const WrongForm &e) {
        out = failure(kWrongForm, "wrong_form", e.what());
    } catch (const ConversionError &e) {
        out = failure(kWrongForm, "wrong_form", e.what());
    } catch (const ContourSingularityError &e) {
        out = failure(kNumericalFailure, "contour_singularity", e.what());
    } catch (const PoleError &e) {
        out = failure(kNumericalFailure, "pole", e.what());
    } catch (const DomainError &e) {
        out = failure(kWrongForm, "wrong_form", e.what());
    }
    json doc = {{"schema", 1}, {"command", config.command}, {"input", config.expression}};
    for (auto &[key, value] : out.json.items()) doc[key] = value;
    out.json = std::move(doc);
    return out;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Divisor estimation and rationality checks for meromorphic expressions"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig config;
    std::string format = "text";
    std::vector<double> center;
    double r0 = 0.0;

    app.add_option("--r0", r0, "first probe radius (default: 2 x root bound, or 4)");
    app.add_option("--growth", config.growth, "ratio between successive probe radii")->capture_default_str();
    app.add_option("--steps", config.steps, "number of probe radii")->capture_default_str();
    app.add_option("--nodes", config.nodes, "initial quadrature nodes (power of two)")->capture_default_str();
    app.add_option("--max-nodes", config.max_nodes, "node cap (power of two)")->capture_default_str();
    app.add_option("--tol", config.tol, "quadrature tolerance")->capture_default_str();
    app.add_option("--tol-int", config.tol_int, "integer-rounding tolerance for verdicts")->capture_default_str();
    app.add_option("--decay-factor", config.decay_factor, "required spread decay per radius doubling")
        ->capture_default_str();
    app.add_option("--radius", config.radius, "circle radius for `winding`")->capture_default_str();
    app.add_option("--center", center, "circle center as RE IM")->expected(2);
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    const std::pair<const char *, const char *> commands[] = {
        {"divisor", "exact divisor deg P - deg Q of a rational expression"},
        {"classify", "numerical rationality verdict from z f'/f on growing circles"},
        {"winding", "zeros minus poles inside one circle"},
        {"fta", "zero count of a polynomial versus its degree"},
    };
    for (const auto &[name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("expression", config.expression, "expression in z")->required();
        sub->callback([&config, name = std::string(name)] { config.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kUsage;
    }

    if (app.count("--r0") > 0) config.r0 = r0;
    if (!center.empty()) config.center = {center[0], center[1]};
    config.format = format == "json" ? Format::Json : Format::Text;

    const CommandOutput result = run_command(config);
    if (config.format == Format::Json) {
        out << result.json.dump(2) << "\n";
        if (result.exit_code != kSuccess) err << result.text;
    } else if (result.exit_code == kSuccess) {
        out << result.text;
    } else {
        err << result.text;
    }
    return result.exit_code;
}

}  // namespace merodiv::cli
