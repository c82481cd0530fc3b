#include "bitension/run.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "bitension/closed_form.hpp"
#include "bitension/errors.hpp"
#include "bitension/immersion.hpp"
#include "bitension/report.hpp"
#include "bitension/rng.hpp"

namespace bitension {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Verification thresholds, fixed here once.
constexpr double kTauAtMinimalTol = 1e-8;      // |tau| at the minimal radii
constexpr double kBitensionRelTol = 1e-4;      // |tau2| against |delta tau|
constexpr double kLambdaMatchTol = 1e-8;       // numeric lambda against closed form
constexpr double kTangentialRelTol = 1e-6;     // tangential part of tau2
constexpr double kProperLambdaFloor = 1e-6;    // |lambda| for a proper verdict
constexpr double kEquatorSffTol = 1e-10;       // |B| on the equator hypersphere
constexpr double kParallelMcRelTol = 1e-5;     // normal-bundle derivative of tau
constexpr double kCompositionMatchTol = 1e-8;  // numeric tau against closed nu

std::vector<double> generic_angles(int dim) {
    std::vector<double> u(dim);
    for (int i = 0; i < dim; ++i) u[i] = 0.4 - 0.07 * i;
    return u;
}

AmbientPoint point_on(const SphereProduct& sp, const std::vector<double>& angles) {
    LocalChart chart(sp, sp.base);
    return chart.point(angles);
}

AmbientPoint random_point_on(const SphereProduct& sp, CounterRng& rng) {
    std::vector<double> u(sp.dim());
    for (double& e : u) e = rng.uniform(-0.6, 0.6);
    return point_on(sp, u);
}

AmbientVector random_tangent(const SphereProduct& sp, const AmbientPoint& pt, CounterRng& rng) {
    LocalChart chart(sp, pt);
    std::vector<double> zeros(sp.dim(), 0.0);
    const LocalChart::Frame fr = chart.frame(zeros);
    AmbientVector v = zero_like(pt);
    for (const AmbientVector& e : fr.e) axpy(rng.symmetric(), e, v);
    return v;
}

// Scale for the closed-vs-numeric normal-bitension comparison: |lambda|
// (floored, for points sitting on the minimal locus) times |eta1_T|^2 times
// the larger brace term.
double cross_check_scale(int p, int q, double c, double d, double a, double b) {
    const double a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d;
    const double term_a = p * c2 * c2 / (a2 * a2) + q * d2 * d2 / (b2 * b2);
    const double eta_q_sq = a2 / (c2 * c2) + b2 / (d2 * d2);
    const double term_b = (c2 / a2 + d2 / b2) * (p / c2 + q / d2) / eta_q_sq;
    const double eta_t_sq = c2 * c2 / a2 + d2 * d2 / b2;
    const double lam = q == 0 ? hypersphere_scalars(p, c, d, a, b).lambda
                              : lambda_torus(p, q, c, d, a, b);
    return (std::fabs(lam) + 1e-7) * eta_t_sq * std::max(term_a, term_b);
}

struct CheckList {
    JsonWriter& w;
    bool all_pass = true;

    explicit CheckList(JsonWriter& writer) : w(writer) { w.begin_array("checks"); }

    void close() { w.end_array(); }

    JsonWriter& open(const std::string& name) {
        w.begin_element();
        w.string_field("name", name);
        return w;
    }

    void verdict(bool pass) {
        w.bool_field("pass", pass);
        w.end_object();
        all_pass = all_pass && pass;
    }
};

void emit_geometry(JsonWriter& w, int p, int q, double c, double d) {
    w.begin_object("geometry");
    w.real_field("p", p, "factor-dimension");
    w.real_field("q", q, "factor-dimension");
    w.real_field("c", c, "semi-axis");
    w.real_field("d", d, "semi-axis");
    w.end_object();
}

void emit_numeric_config(JsonWriter& w, const RunConfig& cfg) {
    w.begin_object("numeric");
    w.real_field("h1", cfg.numeric.h1, "fd-step");
    w.real_field("h2", cfg.numeric.h2, "fd-step");
    w.string_field("scheme", cfg.numeric.scheme == FdScheme::central_2nd_order
                                 ? "central_2nd_order"
                                 : "central_4th_order");
    w.real_field("seed", static_cast<double>(cfg.seed), "rng-seed");
    w.real_field("tol", cfg.tol, "classification-tolerance");
    w.end_object();
}

void emit_bitension_scalars(JsonWriter& w, const BitensionReport& rep) {
    w.real_field("lambda_numeric", rep.lambda_est, "tension-coefficient");
    w.real_field("mu_numeric", rep.mu_est, "laplacian-coefficient");
    w.real_field("tau_norm", rep.tau_norm, "tension-norm");
    w.real_field("delta_tau_norm", rep.delta_tau_norm, "rough-laplacian-norm");
    w.real_field("tau2_norm", rep.tau2_norm, "bitension-norm");
    w.real_field("normal_component", rep.normal_component, "normal-bitension");
    w.real_field("tangential_residual", rep.tangential_residual,
                 "bitension-tangential-residual");
}

MinimalInner parse_inner(const std::string& desc, double target_radius) {
    const auto parse_dim = [&](const std::string& s) {
        try {
            return std::stoi(s);
        } catch (const std::exception&) {
            throw InvalidInputError("inner map: bad dimension '" + s + "' in '" + desc + "'");
        }
    };
    if (desc == "identity") return MinimalInner::identity(target_radius);
    const auto colon = desc.find(':');
    const std::string kind = desc.substr(0, colon);
    if (kind == "great_sphere") {
        if (colon == std::string::npos) {
            throw InvalidInputError("inner map: great_sphere needs a dimension, e.g. "
                                    "great_sphere:2");
        }
        return MinimalInner::great_sphere(parse_dim(desc.substr(colon + 1)), target_radius);
    }
    if (kind == "clifford_pair") {
        const auto comma = desc.find(',', colon);
        if (colon == std::string::npos || comma == std::string::npos) {
            throw InvalidInputError("inner map: clifford_pair needs two dimensions, e.g. "
                                    "clifford_pair:1,1");
        }
        const int m1 = parse_dim(desc.substr(colon + 1, comma - colon - 1));
        const int m2 = parse_dim(desc.substr(comma + 1));
        return MinimalInner::clifford_pair(m1, m2, target_radius);
    }
    throw InvalidInputError("inner map: unknown kind '" + desc + "'");
}

// Resolve the radii of a product immersion from the command options.
void resolve_radii(const RunConfig& cfg, const QuadricSpec& spec, double& a, double& b) {
    int given = (cfg.a && cfg.b ? 1 : 0) + (cfg.t ? 1 : 0) + (cfg.locus.empty() ? 0 : 1);
    if (given != 1) {
        throw InvalidInputError("exactly one of --a/--b, --t, or --locus must be given");
    }
    if (cfg.a) {
        a = *cfg.a;
        b = *cfg.b;
    } else if (cfg.t) {
        const ConstraintParam cp{*cfg.t};
        a = cp.a(spec);
        b = cp.b(spec);
    } else if (cfg.locus == "minimal") {
        if (spec.q == 0) {
            a = spec.c;
            b = 0.0;
        } else {
            const RadiiPair r = minimality_radii(spec.p, spec.q, spec.c, spec.d);
            a = std::sqrt(r.a_sq);
            b = std::sqrt(r.b_sq);
        }
    } else if (cfg.locus == "biharmonic") {
        const BiharmonicRadii r = biharmonic_radii(spec.p, spec.q, spec.c, spec.d);
        a = std::sqrt(r.radii.a_sq);
        b = std::sqrt(r.radii.b_sq);
    } else {
        throw InvalidInputError("unknown locus '" + cfg.locus + "'");
    }
}

RunResult finish(JsonWriter& w, CheckList& checks, const std::string& note = "") {
    checks.close();
    w.bool_field("pass", checks.all_pass);
    w.end_object();
    RunResult res;
    res.exit_code = checks.all_pass ? 0 : 2;
    res.artifact = w.take() + "\n";
    res.message = checks.all_pass ? "" : note.empty() ? "verification failed" : note;
    return res;
}

RunResult run_verify_theorem1(const RunConfig& cfg) {
    const QuadricSpec spec(cfg.p, cfg.q, cfg.c, cfg.d);
    if (spec.q < 1) throw InvalidInputError("verify-theorem1 needs q >= 1");
    const int n_points = cfg.samples > 0 ? cfg.samples : 5;
    CounterRng rng(cfg.seed);

    JsonWriter w;
    w.begin_object();
    w.string_field("schema", "bitension-report/1");
    w.string_field("command", "verify-theorem1");
    emit_geometry(w, spec.p, spec.q, spec.c, spec.d);
    emit_numeric_config(w, cfg);
    CheckList checks(w);

    // Minimal radii: the tension vanishes.
    {
        const RadiiPair r = minimality_radii(spec.p, spec.q, spec.c, spec.d);
        const ProductImmersion imm =
            ProductImmersion::torus(spec, std::sqrt(r.a_sq), std::sqrt(r.b_sq));
        const ImmersionView view(imm);
        const AmbientPoint pt = point_on(view.manifold, generic_angles(imm.dim()));
        const TensionReport ten = tension_numeric(view, pt, cfg.numeric);
        const Classification cls = classify(spec, imm.a, imm.b, cfg.tol, cfg.numeric, false);
        checks.open("minimal-radii-tension-vanishes");
        w.real_field("a_sq", r.a_sq, "radii-minimal");
        w.real_field("b_sq", r.b_sq, "radii-minimal");
        w.real_field("tau_norm", norm(ten.tau), "tension-norm");
        w.real_field("threshold", kTauAtMinimalTol, "tolerance");
        w.string_field("verdict", verdict_name(cls.verdict));
        checks.verdict(norm(ten.tau) < kTauAtMinimalTol && cls.verdict == Verdict::minimal);
    }

    // Biharmonic radii: tau2 vanishes, and the immersion is proper exactly
    // when cq != dp.
    {
        const BiharmonicRadii r = biharmonic_radii(spec.p, spec.q, spec.c, spec.d);
        const ProductImmersion imm =
            ProductImmersion::torus(spec, std::sqrt(r.radii.a_sq), std::sqrt(r.radii.b_sq));
        const ImmersionView view(imm);
        const AmbientPoint pt = point_on(view.manifold, generic_angles(imm.dim()));
        const BitensionReport rep = bitension_numeric(view, pt, cfg.numeric);
        const Classification cls = classify(spec, imm.a, imm.b, cfg.tol, cfg.numeric, false);
        const double lambda = lambda_torus(spec.p, spec.q, spec.c, spec.d, imm.a, imm.b);
        checks.open("biharmonic-radii-bitension-vanishes");
        w.real_field("a_sq", r.radii.a_sq, "radii-biharmonic");
        w.real_field("b_sq", r.radii.b_sq, "radii-biharmonic");
        w.bool_field("proper_expected", r.proper);
        w.real_field("lambda", lambda, "tension-coefficient");
        emit_bitension_scalars(w, rep);
        w.real_field("threshold", kBitensionRelTol, "tolerance");
        bool ok;
        if (r.proper) {
            ok = rep.tau2_norm < kBitensionRelTol * rep.delta_tau_norm &&
                 std::fabs(lambda) > kProperLambdaFloor &&
                 cls.verdict == Verdict::proper_biharmonic;
        } else {
            ok = cls.verdict == Verdict::minimal && rep.tau_norm < kTauAtMinimalTol;
        }
        w.string_field("verdict", verdict_name(cls.verdict));
        checks.verdict(ok);
    }

    // Random constraint points: closed form against the pipeline.
    {
        checks.open("closed-form-vs-numeric-at-random-points");
        w.real_field("points", n_points, "sample-count");
        double worst_lambda = 0.0, worst_nb = 0.0, worst_tang = 0.0;
        for (int i = 0; i < n_points; ++i) {
            const double t = rng.uniform(0.1, kPi / 2.0 - 0.1);
            const ConstraintParam cp{t};
            const double a = cp.a(spec), b = cp.b(spec);
            const ProductImmersion imm = ProductImmersion::torus(spec, a, b);
            const ImmersionView view(imm);
            const AmbientPoint pt = random_point_on(view.manifold, rng);
            const BitensionReport rep = bitension_numeric(view, pt, cfg.numeric);
            const double lam = lambda_torus(spec.p, spec.q, spec.c, spec.d, a, b);
            const double nb = normal_bitension_torus(spec.p, spec.q, spec.c, spec.d, a, b);
            worst_lambda = std::max(worst_lambda,
                                    std::fabs(rep.lambda_est - lam) / (1.0 + std::fabs(lam)));
            worst_nb = std::max(worst_nb,
                                std::fabs(rep.normal_component - nb) /
                                    cross_check_scale(spec.p, spec.q, spec.c, spec.d, a, b));
            worst_tang = std::max(worst_tang,
                                  rep.tangential_residual / (1.0 + rep.tau2_norm));
        }
        w.real_field("worst_lambda_mismatch", worst_lambda, "tension-coefficient");
        w.real_field("worst_normal_bitension_mismatch", worst_nb, "normal-bitension");
        w.real_field("worst_tangential_residual", worst_tang, "bitension-tangential-residual");
        w.real_field("lambda_threshold", kLambdaMatchTol, "tolerance");
        w.real_field("cross_check_threshold", kNumericCrossTol, "tolerance");
        w.real_field("tangential_threshold", kTangentialRelTol, "tolerance");
        checks.verdict(worst_lambda <= kLambdaMatchTol && worst_nb <= kNumericCrossTol &&
                       worst_tang <= kTangentialRelTol);
    }

    return finish(w, checks);
}

RunResult run_verify_theorem2(const RunConfig& cfg) {
    const QuadricSpec spec(cfg.p, 0, cfg.c, cfg.d);
    const int n_points = cfg.samples > 0 ? cfg.samples : 5;
    CounterRng rng(cfg.seed);

    JsonWriter w;
    w.begin_object();
    w.string_field("schema", "bitension-report/1");
    w.string_field("command", "verify-theorem2");
    emit_geometry(w, spec.p, 0, spec.c, spec.d);
    emit_numeric_config(w, cfg);
    CheckList checks(w);

    // Equator: totally geodesic, tau = 0.
    {
        const ProductImmersion imm = ProductImmersion::hypersphere(spec, spec.c, 0.0);
        const ImmersionView view(imm);
        double worst_sff = 0.0;
        for (int i = 0; i < n_points; ++i) {
            const AmbientPoint pt = random_point_on(view.manifold, rng);
            const AmbientVector w1 = random_tangent(view.manifold, pt, rng);
            const AmbientVector w2 = random_tangent(view.manifold, pt, rng);
            worst_sff = std::max(worst_sff, norm(sff_T(imm, pt, w1, w2)));
            worst_sff = std::max(worst_sff, norm(sff_T_fd(view, pt, w1, w2, cfg.numeric)));
        }
        const AmbientPoint pt = point_on(view.manifold, generic_angles(imm.dim()));
        const TensionReport ten = tension_numeric(view, pt, cfg.numeric);
        const Classification cls = classify(spec, spec.c, 0.0, cfg.tol, cfg.numeric, false);
        checks.open("equator-totally-geodesic");
        w.real_field("worst_sff_norm", worst_sff, "second-fundamental-form-norm");
        w.real_field("tau_norm", norm(ten.tau), "tension-norm");
        w.real_field("threshold", kEquatorSffTol, "tolerance");
        w.string_field("verdict", verdict_name(cls.verdict));
        checks.verdict(worst_sff < kEquatorSffTol && norm(ten.tau) < kEquatorSffTol &&
                       cls.verdict == Verdict::equator_totally_geodesic);
    }

    // Proper biharmonic radii, both signs of b.
    const BiharmonicRadii r = biharmonic_radii(spec.p, 0, spec.c, spec.d);
    for (const double sign : {1.0, -1.0}) {
        const double a = std::sqrt(r.radii.a_sq);
        const double b = sign * std::sqrt(r.radii.b_sq);
        const ProductImmersion imm = ProductImmersion::hypersphere(spec, a, b);
        const ImmersionView view(imm);
        const AmbientPoint pt = point_on(view.manifold, generic_angles(imm.dim()));
        const BitensionReport rep = bitension_numeric(view, pt, cfg.numeric);
        const Classification cls = classify(spec, a, b, cfg.tol, cfg.numeric, false);
        checks.open(sign > 0 ? "biharmonic-radii-positive-b" : "biharmonic-radii-negative-b");
        w.real_field("a", a, "radii-biharmonic");
        w.real_field("b", b, "radii-biharmonic");
        emit_bitension_scalars(w, rep);
        w.real_field("threshold", kBitensionRelTol, "tolerance");
        w.string_field("verdict", verdict_name(cls.verdict));
        checks.verdict(rep.tau2_norm < kBitensionRelTol * rep.delta_tau_norm &&
                       rep.tau_norm > kProperLambdaFloor &&
                       cls.verdict == Verdict::proper_biharmonic);
    }

    // Random points off the distinguished radii: closed form vs numeric.
    {
        checks.open("closed-form-vs-numeric-at-random-points");
        double worst_lambda = 0.0, worst_nb = 0.0, worst_tang = 0.0;
        for (int i = 0; i < n_points; ++i) {
            const double mag = rng.uniform(0.1, kPi / 2.0 - 0.1);
            const double t = rng.uniform() < 0.5 ? -mag : mag;
            const ConstraintParam cp{t};
            const double a = cp.a(spec), b = cp.b(spec);
            const ProductImmersion imm = ProductImmersion::hypersphere(spec, a, b);
            const ImmersionView view(imm);
            const AmbientPoint pt = random_point_on(view.manifold, rng);
            const BitensionReport rep = bitension_numeric(view, pt, cfg.numeric);
            const ClosedFormReport cf = hypersphere_scalars(spec.p, spec.c, spec.d, a, b);
            worst_lambda = std::max(worst_lambda, std::fabs(rep.lambda_est - cf.lambda) /
                                                      (1.0 + std::fabs(cf.lambda)));
            worst_nb = std::max(worst_nb,
                                std::fabs(rep.normal_component - cf.normal_bitension) /
                                    cross_check_scale(spec.p, 0, spec.c, spec.d, a, b));
            worst_tang =
                std::max(worst_tang, rep.tangential_residual / (1.0 + rep.tau2_norm));
        }
        w.real_field("worst_lambda_mismatch", worst_lambda, "tension-coefficient");
        w.real_field("worst_normal_bitension_mismatch", worst_nb, "normal-bitension");
        w.real_field("worst_tangential_residual", worst_tang, "bitension-tangential-residual");
        checks.verdict(worst_lambda <= kLambdaMatchTol && worst_nb <= kNumericCrossTol &&
                       worst_tang <= kTangentialRelTol);
    }

    return finish(w, checks);
}

RunResult run_verify_composition(const RunConfig& cfg) {
    CounterRng rng(cfg.seed);
    const int n_points = cfg.samples > 0 ? cfg.samples : 10;

    JsonWriter w;
    w.begin_object();
    w.string_field("schema", "bitension-report/1");
    w.string_field("command", "verify-composition");

    if (cfg.inner.empty()) throw InvalidInputError("verify-composition needs --inner");
    const bool paired = !cfg.inner2.empty();

    ComposedImmersion comp = [&] {
        if (paired) {
            const QuadricSpec spec(cfg.p, cfg.q, cfg.c, cfg.d);
            if (spec.q < 1) throw InvalidInputError("paired composition needs q >= 1");
            const BiharmonicRadii r = biharmonic_radii(spec.p, spec.q, spec.c, spec.d);
            if (!r.proper) {
                throw ConfigurationError(
                    "paired composition: the torus at these radii is minimal (cq = dp), not "
                    "proper biharmonic");
            }
            const double a = std::sqrt(r.radii.a_sq), b = std::sqrt(r.radii.b_sq);
            const ProductImmersion outer = ProductImmersion::torus(spec, a, b);
            return ComposedImmersion::compose_pair(outer, parse_inner(cfg.inner, a),
                                                   parse_inner(cfg.inner2, b));
        }
        const QuadricSpec spec(cfg.p, 0, cfg.c, cfg.d);
        const BiharmonicRadii r = biharmonic_radii(spec.p, 0, spec.c, spec.d);
        const double a = std::sqrt(r.radii.a_sq), b = std::sqrt(r.radii.b_sq);
        const ProductImmersion outer = ProductImmersion::hypersphere(spec, a, b);
        return ComposedImmersion::compose(outer, parse_inner(cfg.inner, a));
    }();

    const QuadricSpec& spec = comp.outer.spec;
    emit_geometry(w, spec.p, spec.q, spec.c, spec.d);
    emit_numeric_config(w, cfg);
    w.string_field("inner", cfg.inner);
    if (paired) w.string_field("inner2", cfg.inner2);
    CheckList checks(w);

    const ImmersionView view(comp);
    const AmbientPoint pt = point_on(view.manifold, generic_angles(comp.dim()));
    const BitensionReport rep = bitension_numeric(view, pt, cfg.numeric);

    if (!paired) {
        // The closed-form composed scalars exist for the single-inner case.
        const ClosedFormReport cf =
            composed_scalars(comp.dim(), spec.c, spec.d, comp.outer.a, comp.outer.b);
        checks.open("composed-tension-matches-closed-form");
        w.real_field("nu", *cf.nu, "composition-tension-magnitude");
        w.real_field("tau_norm", rep.tau_norm, "tension-norm");
        w.real_field("threshold", kCompositionMatchTol, "tolerance");
        checks.verdict(std::fabs(rep.tau_norm - *cf.nu) <=
                       kCompositionMatchTol * (1.0 + *cf.nu));

        checks.open("composed-bracket-vanishes-at-biharmonic-radii");
        w.real_field("bracket", *cf.composed_bracket, "composition-bracket");
        checks.verdict(std::fabs(*cf.composed_bracket) <= 1e-10);
    }

    checks.open("composed-bitension-vanishes");
    emit_bitension_scalars(w, rep);
    w.real_field("threshold", kBitensionRelTol, "tolerance");
    checks.verdict(rep.tau_norm > kProperLambdaFloor &&
                   rep.tau2_norm < kBitensionRelTol * rep.delta_tau_norm &&
                   rep.tangential_residual <= kTangentialRelTol * (1.0 + rep.tau2_norm));

    {
        checks.open("parallel-mean-curvature");
        double worst = 0.0;
        for (int i = 0; i < n_points; ++i) {
            const AmbientPoint p = random_point_on(view.manifold, rng);
            const AmbientVector dir = random_tangent(view.manifold, p, rng);
            const double res = parallel_mc_residual(view, p, dir, cfg.numeric);
            const double tn = tension_numeric(view, p, cfg.numeric).lambda_est;
            const AmbientVector n1 = view.outer.eta1_T_at(p);
            worst = std::max(worst, res / (std::fabs(tn) * norm(n1)));
        }
        w.real_field("worst_normal_bundle_residual", worst, "parallel-mean-curvature-residual");
        w.real_field("threshold", kParallelMcRelTol, "tolerance");
        checks.verdict(worst <= kParallelMcRelTol);
    }

    return finish(w, checks);
}

RunResult run_classify(const RunConfig& cfg) {
    const QuadricSpec spec(cfg.p, cfg.q, cfg.c, cfg.d);
    double a = 0.0, b = 0.0;
    resolve_radii(cfg, spec, a, b);
    const Classification cls = classify(spec, a, b, cfg.tol, cfg.numeric, true);

    JsonWriter w;
    w.begin_object();
    w.string_field("schema", "bitension-report/1");
    w.string_field("command", "classify");
    emit_geometry(w, spec.p, spec.q, spec.c, spec.d);
    emit_numeric_config(w, cfg);
    w.real_field("a", a, "factor-radius");
    w.real_field("b", b, "factor-radius");
    w.string_field("verdict", verdict_name(cls.verdict));
    w.real_field("lambda", cls.lambda, "tension-coefficient");
    w.real_field("normal_bitension", cls.normal_bitension, "normal-bitension");
    w.real_field("lambda_numeric", cls.lambda_numeric, "tension-coefficient");
    w.real_field("tau_norm", cls.tau_norm, "tension-norm");
    w.real_field("delta_tau_norm", cls.delta_tau_norm, "rough-laplacian-norm");
    w.real_field("tau2_norm", cls.tau2_norm, "bitension-norm");
    w.real_field("normal_component_numeric", cls.normal_component_numeric, "normal-bitension");
    w.real_field("tangential_residual", cls.tangential_residual,
                 "bitension-tangential-residual");

    // Consistency gates between the two routes.  At a minimal point both
    // normal-bitension routes are zero by construction and their comparison
    // degenerates, so the evidence there is the vanishing tension itself.
    bool pass = cls.tangential_residual <= kTangentialRelTol * (1.0 + cls.tau2_norm);
    if (cls.verdict != Verdict::equator_totally_geodesic) {
        pass = pass && std::fabs(cls.lambda_numeric - cls.lambda) <=
                           kLambdaMatchTol * (1.0 + std::fabs(cls.lambda));
        if (std::fabs(cls.lambda) <= cfg.tol) {
            pass = pass && cls.tau_norm <= kTauAtMinimalTol;
        } else {
            const double scale =
                cross_check_scale(spec.p, spec.q, spec.c, spec.d, a, std::fabs(b));
            pass = pass && std::fabs(cls.normal_component_numeric - cls.normal_bitension) <=
                               kNumericCrossTol * scale;
        }
    }
    w.bool_field("pass", pass);
    w.end_object();

    RunResult res;
    res.exit_code = pass ? 0 : 2;
    res.artifact = w.take() + "\n";
    if (!pass) res.message = "classification cross-checks failed";
    return res;
}

RunResult run_sweep(const RunConfig& cfg) {
    const QuadricSpec spec(cfg.p, cfg.q, cfg.c, cfg.d);
    const int n = cfg.samples > 0 ? cfg.samples : 64;
    const std::vector<SweepRow> rows = sweep(spec, n, cfg.numeric);

    RunResult res;
    if (cfg.output == "csv") {
        std::string csv =
            "t,a,b,lambda,mu,normal_bitension_closed,normal_bitension_numeric,"
            "tangential_residual,verdict\n";
        for (const SweepRow& r : rows) {
            csv += format_real(r.t) + "," + format_real(r.a) + "," + format_real(r.b) + "," +
                   format_real(r.lambda) + "," + format_real(r.mu) + "," +
                   format_real(r.normal_bitension_closed) + "," +
                   format_real(r.normal_bitension_numeric) + "," +
                   format_real(r.tangential_residual) + "," + verdict_name(r.verdict) + "\n";
        }
        res.artifact = csv;
        return res;
    }
    JsonWriter w;
    w.begin_object();
    w.string_field("schema", "bitension-report/1");
    w.string_field("command", "sweep");
    emit_geometry(w, spec.p, spec.q, spec.c, spec.d);
    emit_numeric_config(w, cfg);
    w.begin_array("rows");
    for (const SweepRow& r : rows) {
        w.begin_element();
        w.real_field("t", r.t, "constraint-angle");
        w.real_field("a", r.a, "factor-radius");
        w.real_field("b", r.b, "factor-radius");
        w.real_field("lambda", r.lambda, "tension-coefficient");
        w.real_field("mu", r.mu, "laplacian-coefficient");
        w.real_field("normal_bitension_closed", r.normal_bitension_closed, "normal-bitension");
        w.real_field("normal_bitension_numeric", r.normal_bitension_numeric,
                     "normal-bitension");
        w.real_field("tangential_residual", r.tangential_residual,
                     "bitension-tangential-residual");
        w.string_field("verdict", verdict_name(r.verdict));
        w.end_object();
    }
    w.end_array();
    w.bool_field("pass", true);
    w.end_object();
    res.artifact = w.take() + "\n";
    return res;
}

RunResult run_bitension(const RunConfig& cfg) {
    const QuadricSpec spec(cfg.p, cfg.q, cfg.c, cfg.d);
    double a = 0.0, b = 0.0;
    resolve_radii(cfg, spec, a, b);
    const ProductImmersion imm = spec.q == 0 ? ProductImmersion::hypersphere(spec, a, b)
                                             : ProductImmersion::torus(spec, a, b);
    const ImmersionView view(imm);
    const std::vector<double> angles =
        cfg.angles.empty() ? generic_angles(imm.dim()) : cfg.angles;
    const AmbientPoint pt = point_on(view.manifold, angles);
    const BitensionReport rep = bitension_numeric(view, pt, cfg.numeric);

    JsonWriter w;
    w.begin_object();
    w.string_field("schema", "bitension-report/1");
    w.string_field("command", "bitension");
    emit_geometry(w, spec.p, spec.q, spec.c, spec.d);
    emit_numeric_config(w, cfg);
    w.real_field("a", a, "factor-radius");
    w.real_field("b", b, "factor-radius");
    w.vector_field("tau", rep.tau, "tension-field");
    w.vector_field("delta_tau", rep.delta_tau, "rough-laplacian");
    w.vector_field("curvature_term", rep.curvature_term, "curvature-trace");
    w.vector_field("tau2", rep.tau2, "bitension-field");
    emit_bitension_scalars(w, rep);
    const bool pass = rep.tangential_residual <= kTangentialRelTol * (1.0 + rep.tau2_norm);
    w.bool_field("pass", pass);
    w.end_object();

    RunResult res;
    res.exit_code = pass ? 0 : 2;
    res.artifact = w.take() + "\n";
    if (!pass) res.message = "bitension tangential residual out of tolerance";
    return res;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
    try {
        cfg.numeric.validate();
        if (cfg.command == "verify-theorem1") return run_verify_theorem1(cfg);
        if (cfg.command == "verify-theorem2") return run_verify_theorem2(cfg);
        if (cfg.command == "verify-composition") return run_verify_composition(cfg);
        if (cfg.command == "classify") return run_classify(cfg);
        if (cfg.command == "sweep") return run_sweep(cfg);
        if (cfg.command == "bitension") return run_bitension(cfg);
        RunResult res;
        res.exit_code = 1;
        res.message = "unknown command '" + cfg.command + "'";
        return res;
    } catch (const InvalidInputError& e) {
        return {1, "", std::string("invalid input: ") + e.what()};
    } catch (const ConfigurationError& e) {
        return {1, "", std::string("configuration error: ") + e.what()};
    } catch (const std::exception& e) {
        return {2, "", std::string("verification error: ") + e.what()};
    }
}

}  // namespace bitension
