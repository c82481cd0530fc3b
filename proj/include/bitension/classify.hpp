#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bitension/calculus.hpp"
#include "bitension/quadric.hpp"

namespace bitension {

// Default tolerance on closed-form scalars when classifying; the CLI honors
// BITENSION_TOL as an override.
inline constexpr double kClassifyTol = 1e-6;
// Relative tolerance on numeric-pipeline residuals recorded as evidence.
inline constexpr double kNumericCrossTol = 1e-4;

// Point of the constraint curve a^2/c^2 + b^2/d^2 = 1:
//   a = c cos t, b = d sin t, with t in (0, pi/2) for a torus and
//   t in (-pi/2, pi/2) for a hypersphere (the sign of b is meaningful).
struct ConstraintParam {
    double t = 0.0;

    double a(const QuadricSpec& spec) const;
    double b(const QuadricSpec& spec) const;
};

enum class Verdict { minimal, proper_biharmonic, neither, equator_totally_geodesic };

const char* verdict_name(Verdict v);

struct Classification {
    Verdict verdict = Verdict::neither;
    double lambda = 0.0;            // closed form
    double normal_bitension = 0.0;  // closed form
    double tol = kClassifyTol;
    // Numeric-pipeline evidence at a generic point of the submanifold.
    double lambda_numeric = 0.0;
    double tau_norm = 0.0;
    double delta_tau_norm = 0.0;
    double tau2_norm = 0.0;
    double normal_component_numeric = 0.0;
    double tangential_residual = 0.0;
};

// Classify the immersion with radii (a, b); q = 0 selects the hypersphere
// family (b = 0 is the equator).  Requires (a,b) on the constraint curve
// within 1e-9.  `with_numeric` controls whether the pipeline evidence is
// computed (set it false for sweeps over many configurations when only the
// verdict matters).
Classification classify(const QuadricSpec& spec, double a, double b, double tol = kClassifyTol,
                        const DerivativeConfig& cfg = verification_config(),
                        bool with_numeric = true);

struct Loci {
    std::optional<double> t_minimal;
    std::vector<double> t_biharmonic;  // every sign change found (not assumed unique)
};

// Locate the minimal and biharmonic radii on the constraint curve by
// bisection over sign changes on a grid of `grid` points.
Loci find_loci(const QuadricSpec& spec, int grid = 512);

struct SweepRow {
    double t = 0.0;
    double a = 0.0;
    double b = 0.0;
    double lambda = 0.0;
    double mu = 0.0;
    double normal_bitension_closed = 0.0;
    double normal_bitension_numeric = 0.0;
    double tangential_residual = 0.0;
    Verdict verdict = Verdict::neither;
};

// Rows at Chebyshev-spaced parameters (clustered toward, but never on, the
// endpoints).  Every row is cross-checked closed form against the numeric
// pipeline; a violation throws with the worst row in the message, since it
// signals a pipeline or sign bug rather than bad input.
std::vector<SweepRow> sweep(const QuadricSpec& spec, int n_samples,
                            const DerivativeConfig& cfg = verification_config());

}  // namespace bitension
