#pragma once

#include <optional>

namespace bitension {

// Scalar invariants of an immersion configuration, all in closed form.
struct ClosedFormReport {
    double lambda = 0.0;            // coefficient of tau against eta1_T
    double mu = 0.0;                // coefficient of the rough Laplacian of tau
    double normal_bitension = 0.0;  // <tau2, eta1_T>
    std::optional<double> nu;               // composed-tension magnitude
    std::optional<double> composed_bracket; // bracket whose zero marks the biharmonic radii
};

// Squared radii on the constraint curve a^2/c^2 + b^2/d^2 = 1.
struct RadiiPair {
    double a_sq = 0.0;
    double b_sq = 0.0;
};

struct BiharmonicRadii {
    RadiiPair radii;
    // False exactly when the minimal radii coincide with these (cq = dp),
    // so the torus is minimal rather than proper biharmonic.
    bool proper = true;
};

// lambda = -[c^4/a^2 + d^4/b^2]^{-1} [p c^2/a^2 - q d^2/b^2]
double lambda_torus(int p, int q, double c, double d, double a, double b);

// mu = (lambda / |eta1_T|^2) [p c^4/a^4 + q d^4/b^4]
double mu_torus(int p, int q, double c, double d, double a, double b);

// The brace of the normal bitension component:
//   [p c^4/a^4 + q d^4/b^4] - (1/|eta1_Q|^2) [c^2/a^2 + d^2/b^2] [p/c^2 + q/d^2]
// with |eta1_Q|^2 = a^2/c^4 + b^2/d^4, the value on the torus (not the
// global function on Q).  Zero exactly at the biharmonic radii.
double bitension_brace_torus(int p, int q, double c, double d, double a, double b);

// <tau2, eta1_T> = -lambda * brace.  Requires (a,b) on the constraint curve
// within 1e-9.
double normal_bitension_torus(int p, int q, double c, double d, double a, double b);

// a^2 = c^2 p/(p+q), b^2 = d^2 q/(p+q).  Requires q >= 1 (the q = 0
// hypersphere is never minimal except at the equator).
RadiiPair minimality_radii(int p, int q, double c, double d);

// a^2 = c^3/(c+d), b^2 = d^3/(c+d), with the proper flag.
BiharmonicRadii biharmonic_radii(int p, int q, double c, double d);

// Scalars of the hypersphere S^p(a) x {b} in the ellipsoid of revolution.
// Requires b != 0; the b = 0 equator is totally geodesic and handled by the
// caller (tau vanishes identically, lambda is not defined by this formula).
ClosedFormReport hypersphere_scalars(int p, double c, double d, double a, double b);

// Scalars of a composed immersion: minimal M^m -> S^p(a) followed by the
// hypersphere inclusion.  Fills nu = m (c^2/a^2) / |eta1_S| and the bracket
//   [c^4/a^4] - (1/|eta1_Q|^2) [c^2/a^2 + d^2/b^2] [1/c^2],
// which vanishes exactly at the hypersphere biharmonic radii.
ClosedFormReport composed_scalars(int m, double c, double d, double a, double b);

}  // namespace bitension
