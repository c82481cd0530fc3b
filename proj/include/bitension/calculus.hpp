#pragma once

#include <cstdint>
#include <functional>

#include "bitension/immersion.hpp"
#include "bitension/quadric.hpp"
#include "bitension/vec.hpp"

namespace bitension {

enum class FdScheme { central_2nd_order, central_4th_order };

// Finite-difference steps, in chart angle units.  h1 drives first
// derivatives, h2 the outer step of nested second derivatives.
struct DerivativeConfig {
    double h1 = 1e-5;
    double h2 = 1e-4;
    FdScheme scheme = FdScheme::central_2nd_order;

    void validate() const;
};

// Configuration used by the verification commands and the acceptance run:
// wider stencil, steps tuned so rounding stays far below truncation.
inline DerivativeConfig verification_config() {
    return {1e-4, 1e-3, FdScheme::central_4th_order};
}

struct TensionReport {
    AmbientVector tau;
    double lambda_est = 0.0;          // <tau, eta1_T> / |eta1_T|^2
    double residual_off_normal = 0.0; // |tau - lambda_est * eta1_T|
};

struct BitensionReport {
    AmbientVector tau;
    AmbientVector delta_tau;
    AmbientVector curvature_term;  // sum_i R_Q(e_i, tau) e_i
    AmbientVector tau2;            // -(delta_tau + curvature_term)
    double lambda_est = 0.0;
    double mu_est = 0.0;               // <delta_tau, eta1_T> / |eta1_T|^2
    double normal_component = 0.0;     // <tau2, eta1_T>
    double tangential_residual = 0.0;  // norm of tau2 projected on the frame span
    double tau_norm = 0.0;
    double delta_tau_norm = 0.0;
    double tau2_norm = 0.0;
};

using VectorField = std::function<AmbientVector(const AmbientPoint&)>;

// What the numeric pipeline evaluates on: the trace manifold (a sphere
// product) together with the product immersion whose normal field defines
// the second fundamental form.  Implicitly built from either immersion kind.
struct ImmersionView {
    QuadricSpec spec;
    ProductImmersion outer;
    SphereProduct manifold;

    ImmersionView(const ProductImmersion& imm)
        : spec(imm.spec), outer(imm), manifold(imm.manifold()) {}
    ImmersionView(const ComposedImmersion& comp)
        : spec(comp.outer.spec), outer(comp.outer), manifold(comp.manifold()) {}
};

// Pullback covariant derivative of an ambient-vector field along a curve of
// the manifold through pt with velocity `direction` (tangent to it), i.e.
// the tangential-to-Q projection of the finite-difference derivative.
AmbientVector covariant_derivative_Q(const ImmersionView& view, const VectorField& field,
                                     const AmbientPoint& pt, const AmbientVector& direction,
                                     const DerivativeConfig& cfg);

// Second fundamental form of the product submanifold inside Q, closed form:
//   B_T(w1,w2) = -(1/|eta1_T|^2) [ (c^2/a^2) <X1,X2> - (d^2/b^2) <Y1,Y2> ] eta1_T,
// identically zero for the b = 0 equator hypersphere.
AmbientVector sff_T(const ProductImmersion& imm, const AmbientPoint& pt, const AmbientVector& w1,
                    const AmbientVector& w2);

// Finite-difference variant -<grad_w1 of the unit normal, w2> eta_T, used to
// cross-check the closed form; the derivative runs along a curve of
// view.manifold, so it also serves composed immersions.
AmbientVector sff_T_fd(const ImmersionView& view, const AmbientPoint& pt, const AmbientVector& w1,
                       const AmbientVector& w2, const DerivativeConfig& cfg);

// tau = trace of the second fundamental form over the manifold frame,
// computed through the finite-difference route only.
TensionReport tension_numeric(const ImmersionView& view, const AmbientPoint& pt,
                              const DerivativeConfig& cfg);

// Rough Laplacian (leading minus) of a field along the manifold:
//   -sum_i { grad_{e_i} grad_{e_i} field - grad_{(nabla_{e_i} e_i)} field },
// with the frame correction term computed by finite differences rather than
// assumed to vanish.
AmbientVector rough_laplacian_numeric(const ImmersionView& view, const VectorField& field,
                                      const AmbientPoint& pt, const DerivativeConfig& cfg);

// sum_i R_Q(e_i, tau) e_i assembled against a full orthonormal basis of the
// tangent space of Q, every pairing evaluated from the flat-ambient Gauss
// relation with the closed-form B_Q; no derivatives are taken.  Curvature
// convention: R(X,Y) = grad_X grad_Y - grad_Y grad_X - grad_{[X,Y]}, under
// which <R_Q(X,Y)Z,W> = <B_Q(X,W),B_Q(Y,Z)> - <B_Q(X,Z),B_Q(Y,W)>.
AmbientVector curvature_term_numeric(const ImmersionView& view, const AmbientPoint& pt,
                                     const AmbientVector& tau);

// Full pipeline: tau, its rough Laplacian, the curvature trace, and
// tau2 = -(delta tau + curvature term), with normal/tangential components.
// A nonzero frame_seed rotates the chart frame (the result must not care).
BitensionReport bitension_numeric(const ImmersionView& view, const AmbientPoint& pt,
                                  const DerivativeConfig& cfg, std::uint64_t frame_seed = 0);

// Norm of the normal-bundle component of grad_direction tau; vanishes when
// the mean curvature vector is parallel.
double parallel_mc_residual(const ImmersionView& view, const AmbientPoint& pt,
                            const AmbientVector& direction, const DerivativeConfig& cfg);

}  // namespace bitension
