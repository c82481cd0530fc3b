#include "bitension/classify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "bitension/closed_form.hpp"
#include "bitension/errors.hpp"
#include "bitension/immersion.hpp"

namespace bitension {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Generic evaluation angles used whenever a configuration must be probed at
// one concrete point: fixed, asymmetric, well inside every chart domain.
std::vector<double> generic_angles(int dim) {
    std::vector<double> u(dim);
    for (int i = 0; i < dim; ++i) u[i] = 0.4 - 0.07 * i;
    return u;
}

AmbientPoint generic_point(const ProductImmersion& imm) {
    const SphereProduct sp = imm.manifold();
    LocalChart chart(sp, sp.base);
    const std::vector<double> u = generic_angles(sp.dim());
    return chart.point(u);
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double ConstraintParam::a(const QuadricSpec& spec) const { return spec.c * std::cos(t); }
double ConstraintParam::b(const QuadricSpec& spec) const { return spec.d * std::sin(t); }

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::minimal: return "minimal";
        case Verdict::proper_biharmonic: return "proper_biharmonic";
        case Verdict::neither: return "neither";
        case Verdict::equator_totally_geodesic: return "equator_totally_geodesic";
    }
    return "unknown";
}

Classification classify(const QuadricSpec& spec, double a, double b, double tol,
                        const DerivativeConfig& cfg, bool with_numeric) {
    const double constraint =
        a * a / (spec.c * spec.c) + b * b / (spec.d * spec.d) - 1.0;
    if (std::fabs(constraint) > 1e-9) {
        throw InvalidInputError("classify: radii off the constraint curve, residual " +
                                std::to_string(constraint));
    }
    Classification out;
    out.tol = tol;

    if (spec.q == 0 && std::fabs(b) <= 1e-12 * spec.d) {
        out.verdict = Verdict::equator_totally_geodesic;
        if (with_numeric) {
            const ProductImmersion imm = ProductImmersion::hypersphere(spec, a, 0.0);
            const BitensionReport rep =
                bitension_numeric(ImmersionView(imm), generic_point(imm), cfg);
            out.lambda_numeric = rep.lambda_est;
            out.tau_norm = rep.tau_norm;
            out.delta_tau_norm = rep.delta_tau_norm;
            out.tau2_norm = rep.tau2_norm;
            out.normal_component_numeric = rep.normal_component;
            out.tangential_residual = rep.tangential_residual;
        }
        return out;
    }

    if (spec.q == 0) {
        const ClosedFormReport cf = hypersphere_scalars(spec.p, spec.c, spec.d, a, b);
        out.lambda = cf.lambda;
        out.normal_bitension = cf.normal_bitension;
    } else {
        out.lambda = lambda_torus(spec.p, spec.q, spec.c, spec.d, a, b);
        out.normal_bitension = normal_bitension_torus(spec.p, spec.q, spec.c, spec.d, a, b);
    }

    if (std::fabs(out.lambda) <= tol) {
        out.verdict = Verdict::minimal;
    } else if (std::fabs(out.normal_bitension) <= tol) {
        out.verdict = Verdict::proper_biharmonic;
    } else {
        out.verdict = Verdict::neither;
    }

    if (with_numeric) {
        const ProductImmersion imm = spec.q == 0 ? ProductImmersion::hypersphere(spec, a, b)
                                                 : ProductImmersion::torus(spec, a, b);
        const BitensionReport rep = bitension_numeric(ImmersionView(imm), generic_point(imm), cfg);
        out.lambda_numeric = rep.lambda_est;
        out.tau_norm = rep.tau_norm;
        out.delta_tau_norm = rep.delta_tau_norm;
        out.tau2_norm = rep.tau2_norm;
        out.normal_component_numeric = rep.normal_component;
        out.tangential_residual = rep.tangential_residual;
    }
    return out;
}

Loci find_loci(const QuadricSpec& spec, int grid) {
    if (grid < 8) throw InvalidInputError("find_loci: grid too coarse");
    Loci out;

    // On the constraint curve, with u = c^2/a^2 and v = d^2/b^2, the
    // normal-bitension brace factors exactly:
    //   brace * (u c^2 + v d^2) = (cu - dv)(cu + dv)(pu - qv).
    // (pu - qv) is the minimal-locus factor and (cu + dv) > 0, so the
    // biharmonic locus is the simple, monotone root of cu - dv.  Scanning
    // the brace itself would pick up the minimal radii as well, and at the
    // coincidence cq = dp its double root has no sign change at all.
    const auto biharmonic_gap = [&](double t) {
        const double ct = std::cos(t), st = std::sin(t);
        return spec.c / (ct * ct) - spec.d / (st * st);
    };
    const auto minimal_gap = [&](double t) {
        const double ct = std::cos(t), st = std::sin(t);
        return spec.p / (ct * ct) - spec.q / (st * st);
    };

    const auto scan = [&](const std::function<double(double)>& f) {
        std::vector<double> roots;
        double prev_t = kPi / 2.0 / (grid + 1);
        double prev_v = f(prev_t);
        for (int k = 2; k <= grid; ++k) {
            const double t = kPi / 2.0 * static_cast<double>(k) / (grid + 1);
            const double v = f(t);
            if ((prev_v < 0.0) != (v < 0.0)) roots.push_back(bisect(f, prev_t, t));
            prev_t = t;
            prev_v = v;
        }
        return roots;
    };

    if (spec.q == 0) {
        // Equator: genuinely minimal (totally geodesic), no search needed.
        out.t_minimal = 0.0;
        // The brace is even in t; scan t > 0 and mirror.
        for (const double root : scan(biharmonic_gap)) {
            out.t_biharmonic.push_back(-root);
            out.t_biharmonic.push_back(root);
        }
        std::sort(out.t_biharmonic.begin(), out.t_biharmonic.end());
        return out;
    }

    const std::vector<double> min_roots = scan(minimal_gap);
    if (!min_roots.empty()) out.t_minimal = min_roots.front();
    out.t_biharmonic = scan(biharmonic_gap);
    return out;
}

std::vector<SweepRow> sweep(const QuadricSpec& spec, int n_samples, const DerivativeConfig& cfg) {
    if (n_samples < 8) throw InvalidInputError("sweep: need at least 8 samples");
    std::vector<SweepRow> rows;
    rows.reserve(n_samples);

    double worst = 0.0;
    std::string worst_desc;
    for (int k = 0; k < n_samples; ++k) {
        // Chebyshev nodes: clustered toward the endpoints, never on them.
        const double theta = kPi * (2.0 * k + 1.0) / (2.0 * n_samples);
        SweepRow row;
        if (spec.q == 0) {
            row.t = -kPi / 2.0 * std::cos(theta);
        } else {
            row.t = kPi / 4.0 * (1.0 - std::cos(theta));
        }
        const ConstraintParam cp{row.t};
        row.a = cp.a(spec);
        row.b = cp.b(spec);

        const bool equator = spec.q == 0 && std::fabs(row.b) <= 1e-12 * spec.d;
        const ProductImmersion imm = spec.q == 0
                                         ? ProductImmersion::hypersphere(spec, row.a, row.b)
                                         : ProductImmersion::torus(spec, row.a, row.b);
        const BitensionReport rep = bitension_numeric(ImmersionView(imm), generic_point(imm), cfg);
        row.normal_bitension_numeric = rep.normal_component;
        row.tangential_residual = rep.tangential_residual;

        if (equator) {
            row.verdict = Verdict::equator_totally_geodesic;
        } else {
            const double babs = spec.q == 0 ? std::fabs(row.b) : row.b;
            if (spec.q == 0) {
                const ClosedFormReport cf =
                    hypersphere_scalars(spec.p, spec.c, spec.d, row.a, row.b);
                row.lambda = cf.lambda;
                row.mu = cf.mu;
                row.normal_bitension_closed = cf.normal_bitension;
            } else {
                row.lambda = lambda_torus(spec.p, spec.q, spec.c, spec.d, row.a, babs);
                row.mu = mu_torus(spec.p, spec.q, spec.c, spec.d, row.a, babs);
                row.normal_bitension_closed =
                    normal_bitension_torus(spec.p, spec.q, spec.c, spec.d, row.a, babs);
            }
            if (std::fabs(row.lambda) <= kClassifyTol) {
                row.verdict = Verdict::minimal;
            } else if (std::fabs(row.normal_bitension_closed) <= kClassifyTol) {
                row.verdict = Verdict::proper_biharmonic;
            } else {
                row.verdict = Verdict::neither;
            }

            // Cross-check scale: |lambda| (with a floor for rows that sit on
            // the minimal locus) times the larger brace term.
            const double a2 = row.a * row.a, b2 = row.b * row.b;
            const double c2 = spec.c * spec.c, d2 = spec.d * spec.d;
            const double term_a = spec.p * c2 * c2 / (a2 * a2) + spec.q * d2 * d2 / (b2 * b2);
            const double eta_q_sq = a2 / (c2 * c2) + b2 / (d2 * d2);
            const double term_b =
                (c2 / a2 + d2 / b2) * (spec.p / c2 + spec.q / d2) / eta_q_sq;
            const double eta_t_sq = c2 * c2 / a2 + d2 * d2 / b2;
            const double scale =
                (std::fabs(row.lambda) + 1e-7) * eta_t_sq * std::max(term_a, term_b);
            const double err =
                std::fabs(row.normal_bitension_closed - row.normal_bitension_numeric);
            if (err > kNumericCrossTol * scale && err / scale > worst) {
                worst = err / scale;
                worst_desc = "t = " + std::to_string(row.t) +
                             ", closed = " + std::to_string(row.normal_bitension_closed) +
                             ", numeric = " + std::to_string(row.normal_bitension_numeric);
            }
        }
        rows.push_back(row);
    }
    if (!worst_desc.empty()) {
        throw GeometryError("sweep: closed-form/numeric cross-check failed, worst row: " +
                            worst_desc);
    }
    return rows;
}

}  // namespace bitension
