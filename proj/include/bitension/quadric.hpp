#pragma once

#include "bitension/vec.hpp"

namespace bitension {

// Residual tolerance for membership in the quadric (relative to 1).
inline constexpr double kOnQuadricTol = 1e-9;
// Tolerance for the tangency tests below.
inline constexpr double kTangencyTol = 1e-9;

// The ellipsoid Q^{p+q+1}(c,d) = { (x,y) : |x|^2/c^2 + |y|^2/d^2 = 1 }
// inside R^{p+1} x R^{q+1}.  q = 0 is the ellipsoid of revolution.
struct QuadricSpec {
    int p = 1;
    int q = 0;
    double c = 1.0;
    double d = 1.0;

    QuadricSpec(int p_, int q_, double c_, double d_);

    int ambient_dim() const { return p + q + 2; }
    int quadric_dim() const { return p + q + 1; }
};

// Unnormalized quadric normal eta1_Q = (x/c^2, y/d^2) and |eta1_Q|^2.
struct QuadricNormal {
    AmbientVector eta1;
    double norm_sq = 0.0;
};

// Unnormalized normals of the nested geometries at one point: eta1_Q for the
// quadric in flat space, eta1_T for the product submanifold inside the
// quadric, with their squared norms.
struct GeometryCache {
    AmbientVector eta1_Q;
    double eta1_Q_norm_sq = 0.0;
    AmbientVector eta1_T;
    double eta1_T_norm_sq = 0.0;
};

// |x|^2/c^2 + |y|^2/d^2 - 1; zero iff the point lies on Q.
double residual_on_quadric(const QuadricSpec& spec, const AmbientPoint& pt);

// sum x_i X_i / c^2 + sum y_j Y_j / d^2; zero iff v is tangent to Q at pt.
double quadric_tangency_residual(const QuadricSpec& spec, const AmbientPoint& pt,
                                 const AmbientVector& v);

// max(|sum x_i X_i|, |sum y_j Y_j|); zero iff v is tangent to the product
// submanifold (both factor sphere pairings vanish).
double factor_tangency_residual(const AmbientPoint& pt, const AmbientVector& v);

QuadricNormal quadric_normal(const QuadricSpec& spec, const AmbientPoint& pt);

// Orthogonal projection of v onto the tangent space of Q at pt.
AmbientVector project_tangent_quadric(const QuadricSpec& spec, const AmbientPoint& pt,
                                      const AmbientVector& v);

// Scalar s with B_Q(w1,w2) = s * eta1_Q:
//   s = -(1/|eta1_Q|^2) * [ <X1,X2>/c^2 + <Y1,Y2>/d^2 ].
// Inputs need not be tangent; the curvature assembly feeds it normals too.
double sff_Q_coefficient(const QuadricSpec& spec, const AmbientPoint& pt,
                         const AmbientVector& w1, const AmbientVector& w2);

// Second fundamental form of Q in flat space, as an ambient vector parallel
// to eta1_Q.  Arguments must be tangent to Q at pt.
AmbientVector sff_Q(const QuadricSpec& spec, const AmbientPoint& pt,
                    const AmbientVector& w1, const AmbientVector& w2);

}  // namespace bitension
