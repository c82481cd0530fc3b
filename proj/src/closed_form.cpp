#include "bitension/closed_form.hpp"

#include <cmath>
#include <string>

#include "bitension/errors.hpp"

namespace bitension {

namespace {

constexpr double kConstraintTol = 1e-9;

void check_radii(double a, double b, const char* what) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw InvalidInputError(std::string(what) + ": radii must be positive");
    }
}

void check_constraint(double c, double d, double a, double b, const char* what) {
    double r = (a * a) / (c * c) + (b * b) / (d * d) - 1.0;
    if (std::fabs(r) > kConstraintTol) {
        throw InvalidInputError(std::string(what) + ": radii off the constraint curve, residual " +
                                std::to_string(r));
    }
}

}  // namespace

double lambda_torus(int p, int q, double c, double d, double a, double b) {
    check_radii(a, b, "lambda_torus");
    const double a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d;
    const double eta_t_sq = c2 * c2 / a2 + d2 * d2 / b2;
    return -(p * c2 / a2 - q * d2 / b2) / eta_t_sq;
}

double mu_torus(int p, int q, double c, double d, double a, double b) {
    check_radii(a, b, "mu_torus");
    const double a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d;
    const double eta_t_sq = c2 * c2 / a2 + d2 * d2 / b2;
    const double lambda = lambda_torus(p, q, c, d, a, b);
    return lambda / eta_t_sq * (p * c2 * c2 / (a2 * a2) + q * d2 * d2 / (b2 * b2));
}

double bitension_brace_torus(int p, int q, double c, double d, double a, double b) {
    check_radii(a, b, "bitension_brace_torus");
    const double a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d;
    const double eta_q_sq = a2 / (c2 * c2) + b2 / (d2 * d2);
    return (p * c2 * c2 / (a2 * a2) + q * d2 * d2 / (b2 * b2)) -
           (c2 / a2 + d2 / b2) * (p / c2 + q / d2) / eta_q_sq;
}

double normal_bitension_torus(int p, int q, double c, double d, double a, double b) {
    check_constraint(c, d, a, b, "normal_bitension_torus");
    return -lambda_torus(p, q, c, d, a, b) * bitension_brace_torus(p, q, c, d, a, b);
}

RadiiPair minimality_radii(int p, int q, double c, double d) {
    if (q < 1) {
        throw InvalidInputError(
            "minimality_radii: not applicable for q = 0 (only the equator hypersphere is "
            "minimal)");
    }
    const double denom = static_cast<double>(p + q);
    return {c * c * (p / denom), d * d * (q / denom)};
}

BiharmonicRadii biharmonic_radii(int p, int q, double c, double d) {
    BiharmonicRadii out;
    out.radii.a_sq = c * c * (c / (c + d));
    out.radii.b_sq = d * d * (d / (c + d));
    out.proper = std::fabs(c * q - d * p) > 1e-12 * (c * q + d * p);
    return out;
}

ClosedFormReport hypersphere_scalars(int p, double c, double d, double a, double b) {
    if (b == 0.0) {
        throw InvalidInputError(
            "hypersphere_scalars: b = 0 is the totally geodesic equator (tau vanishes; these "
            "formulas do not apply)");
    }
    check_constraint(c, d, a, b, "hypersphere_scalars");
    const double a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d;
    const double eta_s_sq = c2 * c2 / a2 + d2 * d2 / b2;
    const double eta_q_sq = a2 / (c2 * c2) + b2 / (d2 * d2);
    ClosedFormReport rep;
    rep.lambda = -(p * c2 / a2) / eta_s_sq;
    rep.mu = rep.lambda / eta_s_sq * (p * c2 * c2 / (a2 * a2));
    const double brace =
        p * c2 * c2 / (a2 * a2) - (c2 / a2 + d2 / b2) * (p / c2) / eta_q_sq;
    rep.normal_bitension = -rep.lambda * brace;
    return rep;
}

ClosedFormReport composed_scalars(int m, double c, double d, double a, double b) {
    if (m < 1) throw InvalidInputError("composed_scalars: inner dimension must be >= 1");
    if (b == 0.0) {
        throw InvalidInputError("composed_scalars: b = 0 equator target is totally geodesic");
    }
    check_constraint(c, d, a, b, "composed_scalars");
    const double a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d;
    const double eta_s_sq = c2 * c2 / a2 + d2 * d2 / b2;
    const double eta_q_sq = a2 / (c2 * c2) + b2 / (d2 * d2);
    ClosedFormReport rep;
    rep.lambda = -(m * c2 / a2) / eta_s_sq;
    rep.mu = rep.lambda / eta_s_sq * (m * c2 * c2 / (a2 * a2));
    rep.nu = m * (c2 / a2) / std::sqrt(eta_s_sq);
    rep.composed_bracket =
        c2 * c2 / (a2 * a2) - (c2 / a2 + d2 / b2) * (1.0 / c2) / eta_q_sq;
    rep.normal_bitension = -rep.lambda * m * *rep.composed_bracket;
    return rep;
}

}  // namespace bitension
