#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bitension/quadric.hpp"
#include "bitension/vec.hpp"

namespace bitension {

// Tolerance for the radii constraint when an immersion is built from
// user-supplied (a,b); radii produced by the closed-form module satisfy the
// constraint to better than 1e-12.
inline constexpr double kImmersionConstraintTol = 1e-9;
// Chart coordinates are valid for |theta| below this bound per factor: the
// full sphere minus the antipode, where the geodesic chart degenerates.
inline constexpr double kChartDomainLimit = 3.141592653589793;

// One round-sphere factor S^dim(radius), occupying coordinates
// [offset, offset + dim] of the given block (0 = x block, 1 = y block).
struct SphereFactor {
    int block = 0;
    int offset = 0;
    int dim = 1;
    double radius = 1.0;
};

// A product of round spheres embedded block-wise in the ambient space.
// Coordinates not covered by any factor are frozen to the values in `base`.
// Every submanifold evaluated in this project is of this shape.
struct SphereProduct {
    std::vector<SphereFactor> factors;
    AmbientPoint base;

    int dim() const;
};

// Local geodesic-polar chart of a SphereProduct, centered at a point of it.
// Per factor the chart is the exponential map in angle units,
//   x(theta) = radius * (cos|theta| * center_hat + sinc|theta| * sum theta_i u_i),
// so the differential at the center has per-factor orthogonal columns of
// norm `radius`, and coverage misses only the antipodes.  Steps taken in
// theta keep the same relative finite-difference accuracy at every factor
// radius.  A nonzero frame_seed rotates each factor's tangent basis by a
// seeded orthogonal matrix.
class LocalChart {
  public:
    LocalChart(SphereProduct sp, const AmbientPoint& center, std::uint64_t frame_seed = 0);

    int dim() const { return dim_; }
    const SphereProduct& product() const { return sp_; }

    AmbientPoint point(std::span<const double> theta) const;

    // Columns of the chart differential at theta.
    std::vector<AmbientVector> jacobian(std::span<const double> theta) const;

    // Orthonormal tangent frame at theta (Gram-Schmidt of the jacobian,
    // factor by factor) together with the chart coordinates of each frame
    // vector: e[i] = sum_k J_k * coord[i][k].
    struct Frame {
        std::vector<AmbientVector> e;
        std::vector<std::vector<double>> coord;
    };
    Frame frame(std::span<const double> theta) const;

    // Chart coordinates of a tangent vector at the center (theta = 0 only).
    std::vector<double> coords_at_center(const AmbientVector& w) const;

  private:
    struct FactorBasis {
        Block center_hat;             // unit center axis of the factor
        std::vector<Block> tangent;   // orthonormal tangent basis at the center
    };

    SphereProduct sp_;
    std::vector<FactorBasis> bases_;
    int dim_ = 0;
};

enum class ImmersionKind { torus, hypersphere };

// S^p(a) x S^q(b) (torus, q >= 1) or S^p(a) x {b} (hypersphere, q = 0)
// included in Q^{p+q+1}(c,d).
struct ProductImmersion {
    QuadricSpec spec;
    double a = 1.0;
    double b = 0.0;
    ImmersionKind kind = ImmersionKind::torus;

    static ProductImmersion torus(const QuadricSpec& spec, double a, double b);
    static ProductImmersion hypersphere(const QuadricSpec& spec, double a, double b);

    int dim() const { return kind == ImmersionKind::torus ? spec.p + spec.q : spec.p; }
    SphereProduct manifold() const;

    // Normal field of the submanifold inside Q, as a function of position:
    // ((c^2/a^2) x, -(d^2/b^2) y), or the constant last axis when b = 0.
    AmbientVector eta1_T_at(const AmbientPoint& pt) const;
};

// Intrinsic chart coordinates (angles) on the canonical chart of the
// product, centered at the axis point ((a,0,...), (b,0,...)).
struct ChartPoint {
    std::vector<double> angles_p;
    std::vector<double> angles_q;
};

AmbientPoint embed(const ProductImmersion& imm, const ChartPoint& u);

// Orthonormal tangent frame of the submanifold at embed(u); the first p
// vectors are supported in the x block, the rest in the y block.
std::vector<AmbientVector> tangent_frame(const ProductImmersion& imm, const ChartPoint& u);

// Both nested normals at a point of the submanifold.
GeometryCache submanifold_normal(const ProductImmersion& imm, const AmbientPoint& pt);

// Minimal immersions into a round sphere S^p(a) used as inner maps of a
// composition: the identity, a totally geodesic great sphere S^m(a), or the
// minimal generalized Clifford torus S^{m1}(r1) x S^{m2}(r2) with
// r_i = a sqrt(m_i/(m1+m2)).
struct MinimalInner {
    enum class Kind { identity, great_sphere, clifford_pair };
    Kind kind = Kind::identity;
    int m = 0;
    int m2 = 0;
    double target_radius = 0.0;

    static MinimalInner identity(double target_radius);
    static MinimalInner great_sphere(int m, double target_radius);
    static MinimalInner clifford_pair(int m1, int m2, double target_radius);

    int dim(int p) const;
};

// A minimal inner immersion (or a pair of them) followed by a product
// immersion into the quadric.
struct ComposedImmersion {
    ProductImmersion outer;
    MinimalInner inner;
    std::optional<MinimalInner> inner_y;

    // Single inner map into S^p(a); outer must be a hypersphere.
    static ComposedImmersion compose(const ProductImmersion& outer, const MinimalInner& inner);
    // Pair of inner maps into S^p(a) and S^q(b); outer must be a torus.
    static ComposedImmersion compose_pair(const ProductImmersion& outer,
                                          const MinimalInner& inner_x,
                                          const MinimalInner& inner_y);

    int dim() const;
    SphereProduct manifold() const;
};

AmbientPoint embed_composed(const ComposedImmersion& comp, std::span<const double> u);

}  // namespace bitension
