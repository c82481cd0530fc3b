#include "bitension/calculus.hpp"

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "bitension/errors.hpp"

namespace bitension {

namespace {

using Theta = std::array<double, 2 * kMaxBlock>;

double l2(std::span<const double> v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
}

// d/dt F(t) at t = 0.
template <typename F>
AmbientVector fd_first(const F& f, double h, FdScheme scheme) {
    if (scheme == FdScheme::central_2nd_order) {
        return (1.0 / (2.0 * h)) * (f(h) - f(-h));
    }
    AmbientVector num = f(-2.0 * h) - f(2.0 * h);
    axpy(8.0, f(h), num);
    axpy(-8.0, f(-h), num);
    return (1.0 / (12.0 * h)) * num;
}

// All finite differences of one evaluation run through a single chart
// centered at the query point; every sampled object is then a smooth
// function of the chart coordinates, and steps are taken in angle units so
// the relative truncation error does not depend on the factor radii.
class Engine {
  public:
    Engine(const ImmersionView& view, const AmbientPoint& pt, const DerivativeConfig& cfg,
           std::uint64_t frame_seed)
        : view_(view), cfg_(cfg), chart_(view.manifold, pt, frame_seed), m_(chart_.dim()) {
        cfg_.validate();
        center_pt_ = chart_.point(origin());
        center_frame_ = chart_.frame(origin());
    }

    int dim() const { return m_; }
    const LocalChart& chart() const { return chart_; }
    const AmbientPoint& center() const { return center_pt_; }
    const LocalChart::Frame& center_frame() const { return center_frame_; }

    std::span<const double> origin() const {
        static const Theta zeros{};
        return {zeros.data(), static_cast<std::size_t>(m_)};
    }

    // Derivative of `f` along the ray theta0 + u * dir at u = 0.
    template <typename F>
    AmbientVector ray_derivative(const F& f, std::span<const double> theta0,
                                 std::span<const double> dir, double h) const {
        return fd_first(
            [&](double u) {
                Theta th{};
                for (int k = 0; k < m_; ++k) th[k] = theta0[k] + u * dir[k];
                return f(std::span<const double>(th.data(), m_));
            },
            h, cfg_.scheme);
    }

    // tau = trace over the frame of the second fundamental form of the
    // manifold in Q, each diagonal entry taken as the normal-to-manifold
    // part (within Q) of the ambient derivative of the frame field along
    // itself.  Uses only the chart and the quadric projection.  `h` is the
    // finite-difference step: h1 for a standalone evaluation, h2 when the
    // value feeds a nested second derivative (the smaller first-derivative
    // step would amplify rounding noise by 1/(h1 h2) there).
    AmbientVector tau_at(std::span<const double> theta, double h) const {
        const AmbientPoint pt = chart_.point(theta);
        const LocalChart::Frame fr = chart_.frame(theta);
        AmbientVector acc = zero_like(pt);
        for (int j = 0; j < m_; ++j) {
            const double cn = l2(fr.coord[j]);
            Theta dir{};
            for (int k = 0; k < m_; ++k) dir[k] = fr.coord[j][k] / cn;
            AmbientVector d = ray_derivative(
                [&](std::span<const double> th) { return chart_.frame(th).e[j]; }, theta,
                {dir.data(), static_cast<std::size_t>(m_)}, h);
            d = project_tangent_quadric(view_.spec, pt, cn * d);
            for (int k = 0; k < m_; ++k) axpy(-dot(d, fr.e[k]), fr.e[k], d);
            acc = acc + d;
        }
        return acc;
    }

    // Rough Laplacian (leading-minus convention) of a field given in chart
    // coordinates:
    //   -sum_i { grad_{e_i} grad_{e_i} f - grad_{(nabla_{e_i} e_i)} f }.
    // Every finite difference of the nested computation steps by h2.
    template <typename FieldTheta>
    AmbientVector laplacian(const FieldTheta& f) const {
        const double h = cfg_.h2;
        AmbientVector acc = zero_like(center_pt_);
        for (int i = 0; i < m_; ++i) {
            const double scale_i = l2(center_frame_.coord[i]);
            Theta ray{};
            for (int k = 0; k < m_; ++k) ray[k] = center_frame_.coord[i][k] / scale_i;
            const std::span<const double> ray_dir(ray.data(), m_);

            // G(u) = pullback derivative of f along the frame field e_i,
            // evaluated on the ray through the center.
            auto G = [&](double u) {
                Theta th{};
                for (int k = 0; k < m_; ++k) th[k] = u * ray_dir[k];
                const std::span<const double> theta_u(th.data(), m_);
                const LocalChart::Frame fr = chart_.frame(theta_u);
                const double cn = l2(fr.coord[i]);
                Theta dir{};
                for (int k = 0; k < m_; ++k) dir[k] = fr.coord[i][k] / cn;
                AmbientVector d = ray_derivative(
                    f, theta_u, {dir.data(), static_cast<std::size_t>(m_)}, h);
                return project_tangent_quadric(view_.spec, chart_.point(theta_u), cn * d);
            };
            AmbientVector second = fd_first(G, h, cfg_.scheme);
            second = project_tangent_quadric(view_.spec, center_pt_, scale_i * second);

            // nabla^T_{e_i} e_i: tangential part of the derivative of the
            // frame field along itself, then one more derivative of f.
            AmbientVector de = ray_derivative(
                [&](std::span<const double> th) { return chart_.frame(th).e[i]; }, origin(),
                ray_dir, h);
            de = scale_i * de;
            AmbientVector corr_dir = zero_like(center_pt_);
            for (int k = 0; k < m_; ++k) axpy(dot(de, center_frame_.e[k]), center_frame_.e[k], corr_dir);
            AmbientVector corr = zero_like(center_pt_);
            if (norm(corr_dir) > 1e-14) {
                const std::vector<double> cc = chart_.coords_at_center(corr_dir);
                const double ccn = l2(cc);
                Theta dir{};
                for (int k = 0; k < m_; ++k) dir[k] = cc[k] / ccn;
                AmbientVector d = ray_derivative(
                    f, origin(), {dir.data(), static_cast<std::size_t>(m_)}, h);
                corr = project_tangent_quadric(view_.spec, center_pt_, ccn * d);
            }
            acc = acc + (second - corr);
        }
        return -acc;
    }

  private:
    const ImmersionView& view_;
    DerivativeConfig cfg_;
    LocalChart chart_;
    int m_;
    AmbientPoint center_pt_;
    LocalChart::Frame center_frame_;
};

// Chart coordinates of `direction` at the chart center, with a
// reconstruction check that it really is tangent to the manifold there.
std::vector<double> tangent_coords(const LocalChart& chart, const AmbientVector& direction,
                                   const char* what) {
    std::vector<double> c = chart.coords_at_center(direction);
    Theta zeros{};
    const std::span<const double> origin(zeros.data(), chart.dim());
    const std::vector<AmbientVector> jac = chart.jacobian(origin);
    AmbientVector recon = zero_like(chart.product().base);
    for (int k = 0; k < chart.dim(); ++k) axpy(c[k], jac[k], recon);
    if (norm(recon - direction) > kTangencyTol * (1.0 + norm(direction))) {
        throw GeometryError(std::string(what) +
                            ": direction is not tangent to the manifold, residual " +
                            std::to_string(norm(recon - direction)));
    }
    return c;
}

}  // namespace

void DerivativeConfig::validate() const {
    if (!(h1 >= 1e-8 && h1 <= 1e-2) || !(h2 >= 1e-8 && h2 <= 1e-2)) {
        throw InvalidInputError("derivative steps must lie in [1e-8, 1e-2]");
    }
}

AmbientVector covariant_derivative_Q(const ImmersionView& view, const VectorField& field,
                                     const AmbientPoint& pt, const AmbientVector& direction,
                                     const DerivativeConfig& cfg) {
    cfg.validate();
    LocalChart chart(view.manifold, pt);
    const std::vector<double> c = tangent_coords(chart, direction, "covariant_derivative_Q");
    const double cn = l2(c);
    if (cn == 0.0) return zero_like(pt);
    std::vector<double> dir(c);
    for (double& e : dir) e /= cn;
    AmbientVector d = fd_first(
        [&](double u) {
            std::vector<double> th(dir);
            for (double& e : th) e *= u;
            return field(chart.point(th));
        },
        cfg.h1, cfg.scheme);
    return project_tangent_quadric(view.spec, pt, cn * d);
}

AmbientVector sff_T(const ProductImmersion& imm, const AmbientPoint& pt, const AmbientVector& w1,
                    const AmbientVector& w2) {
    for (const AmbientVector* w : {&w1, &w2}) {
        const double r = factor_tangency_residual(pt, *w);
        if (r > kTangencyTol * (1.0 + norm(*w))) {
            throw GeometryError("sff_T: vector not tangent to the submanifold, residual " +
                                std::to_string(r));
        }
    }
    if (imm.kind == ImmersionKind::hypersphere && imm.b == 0.0) {
        return zero_like(pt);  // totally geodesic equator
    }
    const AmbientVector n1 = imm.eta1_T_at(pt);
    const double c2a2 = imm.spec.c * imm.spec.c / (imm.a * imm.a);
    const double d2b2 = imm.spec.d * imm.spec.d / (imm.b * imm.b);
    const double s = -(c2a2 * dot(w1.x, w2.x) - d2b2 * dot(w1.y, w2.y)) / norm_sq(n1);
    return s * n1;
}

AmbientVector sff_T_fd(const ImmersionView& view, const AmbientPoint& pt, const AmbientVector& w1,
                       const AmbientVector& w2, const DerivativeConfig& cfg) {
    cfg.validate();
    LocalChart chart(view.manifold, pt);
    const std::vector<double> c = tangent_coords(chart, w1, "sff_T_fd");
    const double cn = l2(c);
    if (cn == 0.0) return zero_like(pt);
    std::vector<double> dir(c);
    for (double& e : dir) e /= cn;
    const ProductImmersion& outer = view.outer;
    auto eta_hat = [&](const AmbientPoint& p) {
        AmbientVector n = outer.eta1_T_at(p);
        return (1.0 / norm(n)) * n;
    };
    AmbientVector d = fd_first(
        [&](double u) {
            std::vector<double> th(dir);
            for (double& e : th) e *= u;
            return eta_hat(chart.point(th));
        },
        cfg.h1, cfg.scheme);
    return -cn * dot(d, w2) * eta_hat(pt);
}

TensionReport tension_numeric(const ImmersionView& view, const AmbientPoint& pt,
                              const DerivativeConfig& cfg) {
    Engine eng(view, pt, cfg, 0);
    TensionReport rep;
    rep.tau = eng.tau_at(eng.origin(), cfg.h1);
    const AmbientVector n1 = view.outer.eta1_T_at(pt);
    rep.lambda_est = dot(rep.tau, n1) / norm_sq(n1);
    AmbientVector off = rep.tau;
    axpy(-rep.lambda_est, n1, off);
    rep.residual_off_normal = norm(off);
    return rep;
}

AmbientVector rough_laplacian_numeric(const ImmersionView& view, const VectorField& field,
                                      const AmbientPoint& pt, const DerivativeConfig& cfg) {
    Engine eng(view, pt, cfg, 0);
    return eng.laplacian(
        [&](std::span<const double> th) { return field(eng.chart().point(th)); });
}

AmbientVector curvature_term_numeric(const ImmersionView& view, const AmbientPoint& pt,
                                     const AmbientVector& tau) {
    const double tq = quadric_tangency_residual(view.spec, pt, tau);
    if (std::fabs(tq) > kTangencyTol * (1.0 + norm(tau))) {
        throw GeometryError("curvature_term: tau not tangent to the quadric, residual " +
                            std::to_string(tq));
    }
    // Trace frame of the evaluated manifold.
    LocalChart mchart(view.manifold, pt);
    Theta zeros{};
    const std::vector<AmbientVector> trace =
        mchart.frame(std::span<const double>(zeros.data(), mchart.dim())).e;
    // Full orthonormal basis of the tangent space of Q: the frame of the
    // outer product submanifold completed by its unit normal.
    LocalChart ochart(view.outer.manifold(), pt);
    std::vector<AmbientVector> basis =
        ochart.frame(std::span<const double>(zeros.data(), ochart.dim())).e;
    AmbientVector n1 = view.outer.eta1_T_at(pt);
    basis.push_back((1.0 / norm(n1)) * n1);
    if (static_cast<int>(basis.size()) != view.spec.quadric_dim()) {
        throw GeometryError("curvature_term: tangent basis of Q is incomplete");
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double g = dot(basis[i], basis[j]) - (i == j ? 1.0 : 0.0);
            if (std::fabs(g) > 1e-8) {
                throw GeometryError("curvature_term: tangent basis of Q is not orthonormal");
            }
        }
    }
    const QuadricNormal nq = quadric_normal(view.spec, pt);
    auto bq = [&](const AmbientVector& u, const AmbientVector& v) {
        return sff_Q_coefficient(view.spec, pt, u, v);
    };
    AmbientVector out = zero_like(pt);
    for (const AmbientVector& v : basis) {
        double s = 0.0;
        const double bq_tau_v = bq(tau, v);
        for (const AmbientVector& e : trace) {
            // <R_Q(e, tau) e, v> from the Gauss equation of Q in flat space
            s += bq(e, v) * bq(tau, e) - bq(e, e) * bq_tau_v;
        }
        axpy(s * nq.norm_sq, v, out);
    }
    return out;
}

BitensionReport bitension_numeric(const ImmersionView& view, const AmbientPoint& pt,
                                  const DerivativeConfig& cfg, std::uint64_t frame_seed) {
    Engine eng(view, pt, cfg, frame_seed);
    BitensionReport rep;
    rep.tau = eng.tau_at(eng.origin(), cfg.h1);
    rep.delta_tau =
        eng.laplacian([&](std::span<const double> th) { return eng.tau_at(th, cfg.h2); });
    rep.curvature_term = curvature_term_numeric(view, pt, rep.tau);
    rep.tau2 = -(rep.delta_tau + rep.curvature_term);

    const AmbientVector n1 = view.outer.eta1_T_at(pt);
    const double n1sq = norm_sq(n1);
    rep.lambda_est = dot(rep.tau, n1) / n1sq;
    rep.mu_est = dot(rep.delta_tau, n1) / n1sq;
    rep.normal_component = dot(rep.tau2, n1);
    // Residual along the full tangent frame of the outer submanifold.
    LocalChart ochart(view.outer.manifold(), pt);
    Theta zeros{};
    const std::vector<AmbientVector> frame =
        ochart.frame(std::span<const double>(zeros.data(), ochart.dim())).e;
    double tsq = 0.0;
    for (const AmbientVector& e : frame) {
        const double s = dot(rep.tau2, e);
        tsq += s * s;
    }
    rep.tangential_residual = std::sqrt(tsq);
    rep.tau_norm = norm(rep.tau);
    rep.delta_tau_norm = norm(rep.delta_tau);
    rep.tau2_norm = norm(rep.tau2);
    return rep;
}

double parallel_mc_residual(const ImmersionView& view, const AmbientPoint& pt,
                            const AmbientVector& direction, const DerivativeConfig& cfg) {
    VectorField tau_field = [&](const AmbientPoint& p) {
        Engine eng(view, p, cfg, 0);
        return eng.tau_at(eng.origin(), cfg.h1);
    };
    AmbientVector d = covariant_derivative_Q(view, tau_field, pt, direction, cfg);
    LocalChart chart(view.manifold, pt);
    Theta zeros{};
    const std::vector<AmbientVector> frame =
        chart.frame(std::span<const double>(zeros.data(), chart.dim())).e;
    for (const AmbientVector& e : frame) axpy(-dot(d, e), e, d);
    return norm(d);
}

}  // namespace bitension
