#include "bitension/quadric.hpp"

#include <cmath>
#include <string>

#include "bitension/errors.hpp"

namespace bitension {

namespace {

void check_dims(const QuadricSpec& spec, const Block& x, const Block& y, const char* what) {
    if (static_cast<int>(x.size()) != spec.p + 1 || static_cast<int>(y.size()) != spec.q + 1) {
        throw InvalidInputError(std::string(what) + ": block sizes (" +
                                std::to_string(x.size()) + "," + std::to_string(y.size()) +
                                ") do not match spec (" + std::to_string(spec.p + 1) + "," +
                                std::to_string(spec.q + 1) + ")");
    }
}

void check_on_quadric(const QuadricSpec& spec, const AmbientPoint& pt) {
    double r = residual_on_quadric(spec, pt);
    if (std::fabs(r) > kOnQuadricTol) {
        throw GeometryError("point is off the quadric: residual " + std::to_string(r));
    }
}

void check_tangent(const QuadricSpec& spec, const AmbientPoint& pt, const AmbientVector& w,
                   const char* what) {
    double r = quadric_tangency_residual(spec, pt, w);
    if (std::fabs(r) > kTangencyTol * (1.0 + norm(w))) {
        throw GeometryError(std::string(what) + ": vector not tangent to the quadric, residual " +
                            std::to_string(r));
    }
}

}  // namespace

QuadricSpec::QuadricSpec(int p_, int q_, double c_, double d_) : p(p_), q(q_), c(c_), d(d_) {
    if (p < 1) throw InvalidInputError("quadric: p must be >= 1");
    if (q < 0) throw InvalidInputError("quadric: q must be >= 0");
    if (p + 1 > static_cast<int>(kMaxBlock) || q + 1 > static_cast<int>(kMaxBlock)) {
        throw InvalidInputError("quadric: factor dimension exceeds the supported desk scale");
    }
    if (!(c > 0.0) || !(d > 0.0)) throw InvalidInputError("quadric: semi-axes must be positive");
}

double residual_on_quadric(const QuadricSpec& spec, const AmbientPoint& pt) {
    check_dims(spec, pt.x, pt.y, "residual_on_quadric");
    return dot(pt.x, pt.x) / (spec.c * spec.c) + dot(pt.y, pt.y) / (spec.d * spec.d) - 1.0;
}

double quadric_tangency_residual(const QuadricSpec& spec, const AmbientPoint& pt,
                                 const AmbientVector& v) {
    check_dims(spec, pt.x, pt.y, "quadric_tangency_residual");
    check_dims(spec, v.x, v.y, "quadric_tangency_residual");
    return dot(pt.x, v.x) / (spec.c * spec.c) + dot(pt.y, v.y) / (spec.d * spec.d);
}

double factor_tangency_residual(const AmbientPoint& pt, const AmbientVector& v) {
    return std::max(std::fabs(dot(pt.x, v.x)), std::fabs(dot(pt.y, v.y)));
}

QuadricNormal quadric_normal(const QuadricSpec& spec, const AmbientPoint& pt) {
    check_dims(spec, pt.x, pt.y, "quadric_normal");
    check_on_quadric(spec, pt);
    QuadricNormal n;
    n.eta1.x.resize(pt.x.size());
    n.eta1.y.resize(pt.y.size());
    const double ic2 = 1.0 / (spec.c * spec.c);
    const double id2 = 1.0 / (spec.d * spec.d);
    for (std::size_t i = 0; i < pt.x.size(); ++i) n.eta1.x[i] = ic2 * pt.x[i];
    for (std::size_t j = 0; j < pt.y.size(); ++j) n.eta1.y[j] = id2 * pt.y[j];
    n.norm_sq = norm_sq(n.eta1);
    return n;
}

AmbientVector project_tangent_quadric(const QuadricSpec& spec, const AmbientPoint& pt,
                                      const AmbientVector& v) {
    check_dims(spec, v.x, v.y, "project_tangent_quadric");
    QuadricNormal n = quadric_normal(spec, pt);
    AmbientVector out = v;
    axpy(-dot(v, n.eta1) / n.norm_sq, n.eta1, out);
    return out;
}

double sff_Q_coefficient(const QuadricSpec& spec, const AmbientPoint& pt,
                         const AmbientVector& w1, const AmbientVector& w2) {
    check_dims(spec, w1.x, w1.y, "sff_Q");
    check_dims(spec, w2.x, w2.y, "sff_Q");
    const double c2 = spec.c * spec.c;
    const double d2 = spec.d * spec.d;
    const double nq = dot(pt.x, pt.x) / (c2 * c2) + dot(pt.y, pt.y) / (d2 * d2);
    return -(dot(w1.x, w2.x) / c2 + dot(w1.y, w2.y) / d2) / nq;
}

AmbientVector sff_Q(const QuadricSpec& spec, const AmbientPoint& pt, const AmbientVector& w1,
                    const AmbientVector& w2) {
    check_on_quadric(spec, pt);
    check_tangent(spec, pt, w1, "sff_Q");
    check_tangent(spec, pt, w2, "sff_Q");
    QuadricNormal n = quadric_normal(spec, pt);
    return sff_Q_coefficient(spec, pt, w1, w2) * n.eta1;
}

}  // namespace bitension
