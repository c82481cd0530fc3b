#include <doctest.h>
#include <tuple>

#include <cmath>

#include "bitension/errors.hpp"
#include "bitension/quadric.hpp"
#include "bitension/rng.hpp"

using namespace bitension;

namespace {

// Radial projection onto Q; curves t -> project(pt + t w) stay on Q and
// have velocity w at t = 0 when w is tangent.
AmbientPoint project_radial(const QuadricSpec& spec, const AmbientPoint& z) {
    const double rho = std::sqrt(dot(z.x, z.x) / (spec.c * spec.c) +
                                 dot(z.y, z.y) / (spec.d * spec.d));
    AmbientPoint out = z;
    for (double& e : out.x) e /= rho;
    for (double& e : out.y) e /= rho;
    return out;
}

AmbientPoint random_point_on_quadric(const QuadricSpec& spec, CounterRng& rng) {
    AmbientPoint z;
    z.x.resize(spec.p + 1);
    z.y.resize(spec.q + 1);
    for (double& e : z.x) e = rng.uniform(0.2, 1.0);
    for (double& e : z.y) e = rng.uniform(0.2, 1.0);
    return project_radial(spec, z);
}

AmbientVector random_tangent(const QuadricSpec& spec, const AmbientPoint& pt, CounterRng& rng) {
    AmbientVector v = zero_like(pt);
    for (double& e : v.x) e = rng.symmetric();
    for (double& e : v.y) e = rng.symmetric();
    return project_tangent_quadric(spec, pt, v);
}

// Independent route to the second fundamental form: differentiate the unit
// normal along a curve in Q.
AmbientVector sff_oracle(const QuadricSpec& spec, const AmbientPoint& pt, const AmbientVector& w1,
                         const AmbientVector& w2) {
    const double h = 1e-6;
    auto unit_normal_at = [&](double t) {
        AmbientPoint z = pt + (t * w1);
        QuadricNormal n = quadric_normal(spec, project_radial(spec, z));
        return (1.0 / std::sqrt(n.norm_sq)) * n.eta1;
    };
    const AmbientVector d = (1.0 / (2.0 * h)) * (unit_normal_at(h) - unit_normal_at(-h));
    return -dot(d, w2) * unit_normal_at(0.0);
}

}  // namespace

TEST_CASE("quadric residual") {
    const QuadricSpec unit(1, 1, 1.0, 1.0);
    CHECK(residual_on_quadric(unit, {{1.0, 0.0}, {0.0, 0.0}}) == 0.0);

    const QuadricSpec spec(1, 1, 2.0, 1.0);
    CHECK(residual_on_quadric(spec, {{2.0, 0.0}, {0.0, 0.0}}) == 0.0);
    CHECK(residual_on_quadric(spec, {{1.0, 0.0}, {0.0, 0.0}}) == doctest::Approx(-0.75));

    const AmbientPoint bad{{1.0, 0.0, 0.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(residual_on_quadric(spec, bad), InvalidInputError);
}

TEST_CASE("quadric spec validation") {
    CHECK_THROWS_AS(QuadricSpec(0, 1, 1.0, 1.0), InvalidInputError);
    CHECK_THROWS_AS(QuadricSpec(1, -1, 1.0, 1.0), InvalidInputError);
    CHECK_THROWS_AS(QuadricSpec(1, 1, 0.0, 1.0), InvalidInputError);
    CHECK_THROWS_AS(QuadricSpec(1, 1, 1.0, -2.0), InvalidInputError);
    CHECK_THROWS_AS(QuadricSpec(8, 1, 1.0, 1.0), InvalidInputError);
}

TEST_CASE("quadric normal") {
    const QuadricSpec unit(1, 1, 1.0, 1.0);
    const AmbientPoint sp{{0.6, 0.0}, {0.8, 0.0}};
    const QuadricNormal n = quadric_normal(unit, sp);
    CHECK(n.eta1.x[0] == doctest::Approx(0.6));
    CHECK(n.eta1.y[0] == doctest::Approx(0.8));
    CHECK(n.norm_sq == doctest::Approx(1.0));

    const QuadricSpec spec(1, 1, 2.0, 1.0);
    const QuadricNormal n2 = quadric_normal(spec, {{2.0, 0.0}, {0.0, 0.0}});
    CHECK(n2.eta1.x[0] == doctest::Approx(0.5));
    CHECK(n2.norm_sq == doctest::Approx(0.25));

    // torus point with a^2 = 8/3, b^2 = 1/3 on Q(2,1)
    const AmbientPoint tp{{std::sqrt(8.0 / 3.0), 0.0}, {std::sqrt(1.0 / 3.0), 0.0}};
    CHECK(quadric_normal(spec, tp).norm_sq == doctest::Approx(0.5).epsilon(1e-12));

    const AmbientPoint off{{1.0, 0.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(quadric_normal(spec, off), GeometryError);
}

TEST_CASE("tangent projection") {
    const QuadricSpec spec(2, 1, 2.0, 0.5);
    CounterRng rng(7);
    for (int i = 0; i < 20; ++i) {
        const AmbientPoint pt = random_point_on_quadric(spec, rng);
        AmbientVector v = zero_like(pt);
        for (double& e : v.x) e = rng.symmetric();
        for (double& e : v.y) e = rng.symmetric();

        const AmbientVector pv = project_tangent_quadric(spec, pt, v);
        const QuadricNormal n = quadric_normal(spec, pt);
        CHECK(std::fabs(dot(pv, n.eta1)) < 1e-12);
        CHECK(std::fabs(quadric_tangency_residual(spec, pt, pv)) < 1e-12);

        // idempotent
        const AmbientVector ppv = project_tangent_quadric(spec, pt, pv);
        CHECK(norm(ppv - pv) < 1e-12);

        // difference is parallel to the normal
        const AmbientVector diff = v - pv;
        const double coeff = dot(diff, n.eta1) / n.norm_sq;
        AmbientVector rem = diff;
        axpy(-coeff, n.eta1, rem);
        CHECK(norm(rem) < 1e-12);
    }
    // the normal itself projects to zero
    const AmbientPoint pt = random_point_on_quadric(spec, rng);
    const QuadricNormal n = quadric_normal(spec, pt);
    CHECK(norm(project_tangent_quadric(spec, pt, n.eta1)) < 1e-12);
}

TEST_CASE("second fundamental form of the quadric") {
    CounterRng rng(11);

    SUBCASE("round sphere reduces to -|w|^2 inward normal") {
        for (const double r : {1.0, 2.0}) {
            const QuadricSpec spec(1, 1, r, r);
            const AmbientPoint pt = random_point_on_quadric(spec, rng);
            AmbientVector w = random_tangent(spec, pt, rng);
            w = (1.0 / norm(w)) * w;
            const AmbientVector b = sff_Q(spec, pt, w, w);
            // -(1/r) |w|^2 times the outward unit normal pt/r
            AmbientVector expected = as_vector(pt);
            expected = (-1.0 / (r * r)) * expected;
            CHECK(norm(b - expected) < 1e-12);
        }
    }

    SUBCASE("disjoint block supports vanish") {
        const QuadricSpec spec(1, 1, 2.0, 1.0);
        const AmbientPoint pt{{std::sqrt(8.0 / 3.0), 0.0}, {std::sqrt(1.0 / 3.0), 0.0}};
        const AmbientVector w1{{0.0, 1.0}, {0.0, 0.0}};
        const AmbientVector w2{{0.0, 0.0}, {0.0, 1.0}};
        CHECK(norm(sff_Q(spec, pt, w1, w2)) == 0.0);
    }

    SUBCASE("matches the derivative-of-normal oracle") {
        const std::tuple<int, int, double, double> geoms[] = {
            {1, 1, 2.0, 1.0}, {2, 1, 1.0, 3.0}, {2, 3, 0.5, 2.0}};
        for (const auto& [p, q, c, d] : geoms) {
            const QuadricSpec spec(p, q, c, d);
            for (int i = 0; i < 5; ++i) {
                const AmbientPoint pt = random_point_on_quadric(spec, rng);
                const AmbientVector w1 = random_tangent(spec, pt, rng);
                const AmbientVector w2 = random_tangent(spec, pt, rng);
                const AmbientVector closed = sff_Q(spec, pt, w1, w2);
                const AmbientVector oracle = sff_oracle(spec, pt, w1, w2);
                CHECK(norm(closed - oracle) < 1e-6 * (1.0 + norm(closed)));
            }
        }
    }

    SUBCASE("symmetric, bilinear, normal-valued") {
        const QuadricSpec spec(2, 2, 1.5, 0.75);
        for (int i = 0; i < 10; ++i) {
            const AmbientPoint pt = random_point_on_quadric(spec, rng);
            const AmbientVector w1 = random_tangent(spec, pt, rng);
            const AmbientVector w2 = random_tangent(spec, pt, rng);
            const AmbientVector w3 = random_tangent(spec, pt, rng);

            CHECK(norm(sff_Q(spec, pt, w1, w2) - sff_Q(spec, pt, w2, w1)) == 0.0);

            const AmbientVector lin = sff_Q(spec, pt, w1 + 2.0 * w3, w2);
            const AmbientVector split = sff_Q(spec, pt, w1, w2) + 2.0 * sff_Q(spec, pt, w3, w2);
            CHECK(norm(lin - split) < 1e-12 * (1.0 + norm(split)));

            CHECK(std::fabs(dot(sff_Q(spec, pt, w1, w2), w3)) < 1e-12);
        }
    }

    SUBCASE("rejects non-tangent input") {
        const QuadricSpec spec(1, 1, 2.0, 1.0);
        const AmbientPoint pt{{2.0, 0.0}, {0.0, 0.0}};
        const AmbientVector bad{{1.0, 0.0}, {0.0, 0.0}};
        CHECK_THROWS_AS(sff_Q(spec, pt, bad, bad), GeometryError);
    }
}
