#include "bitension/immersion.hpp"

#include <cmath>
#include <string>

#include "bitension/errors.hpp"
#include "bitension/rng.hpp"

namespace bitension {

namespace {

Block& block_of(AmbientPoint& p, int block) { return block == 0 ? p.x : p.y; }
const Block& block_of(const AmbientPoint& p, int block) { return block == 0 ? p.x : p.y; }
Block& block_of(AmbientVector& v, int block) { return block == 0 ? v.x : v.y; }

// sin(r)/r, stable through r = 0.
double sinc(double r) {
    if (r < 1e-6) return 1.0 - r * r / 6.0;
    return std::sin(r) / r;
}

// (r cos r - sin r) / r^3 = d(sinc)/dr / r, stable through r = 0.
double sinc_slope(double r) {
    if (r < 0.25) {
        const double r2 = r * r;
        return -1.0 / 3.0 + r2 / 30.0 - r2 * r2 / 840.0 + r2 * r2 * r2 / 45360.0;
    }
    return (r * std::cos(r) - std::sin(r)) / (r * r * r);
}

double block_norm(const Block& b, int offset, int len) {
    double s = 0.0;
    for (int i = 0; i < len; ++i) s += b[offset + i] * b[offset + i];
    return std::sqrt(s);
}

void check_constraint(const QuadricSpec& spec, double a, double b, const char* what) {
    double r = (a * a) / (spec.c * spec.c) + (b * b) / (spec.d * spec.d) - 1.0;
    if (std::fabs(r) > kImmersionConstraintTol) {
        throw InvalidInputError(std::string(what) + ": radii off the constraint curve, residual " +
                                std::to_string(r));
    }
}

// Orthonormal basis of the hyperplane orthogonal to the unit vector `axis`,
// via the Householder reflection exchanging e0 and -sign(axis[0]) * axis.
std::vector<Block> tangent_basis(const Block& axis) {
    const int n = static_cast<int>(axis.size());
    const double s = axis[0] >= 0.0 ? 1.0 : -1.0;
    Block v = axis;
    v[0] += s;
    const double vv = 2.0 * (1.0 + s * axis[0]);
    std::vector<Block> basis;
    basis.reserve(n - 1);
    for (int j = 1; j < n; ++j) {
        Block u(n, 0.0);
        u[j] = 1.0;
        const double f = 2.0 * v[j] / vv;
        for (int i = 0; i < n; ++i) u[i] -= f * v[i];
        basis.push_back(std::move(u));
    }
    return basis;
}

void rotate_basis(std::vector<Block>& basis, CounterRng& rng) {
    const int k = static_cast<int>(basis.size());
    if (k < 2) return;
    // Seeded square matrix, orthonormalized; columns mix the basis in place.
    std::vector<std::vector<double>> m(k, std::vector<double>(k));
    for (auto& row : m)
        for (double& e : row) e = rng.symmetric();
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < i; ++j) {
            double r = 0.0;
            for (int l = 0; l < k; ++l) r += m[i][l] * m[j][l];
            for (int l = 0; l < k; ++l) m[i][l] -= r * m[j][l];
        }
        double nrm = 0.0;
        for (int l = 0; l < k; ++l) nrm += m[i][l] * m[i][l];
        nrm = std::sqrt(nrm);
        if (nrm < 1e-8) {
            m[i].assign(k, 0.0);
            m[i][i] = 1.0;
        } else {
            for (int l = 0; l < k; ++l) m[i][l] /= nrm;
        }
    }
    const std::size_t n = basis[0].size();
    std::vector<Block> out(k, Block(n, 0.0));
    for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l)
            for (std::size_t c = 0; c < n; ++c) out[i][c] += m[i][l] * basis[l][c];
    basis = std::move(out);
}

}  // namespace

int SphereProduct::dim() const {
    int d = 0;
    for (const auto& f : factors) d += f.dim;
    return d;
}

LocalChart::LocalChart(SphereProduct sp, const AmbientPoint& center, std::uint64_t frame_seed)
    : sp_(std::move(sp)) {
    dim_ = sp_.dim();
    CounterRng rng(frame_seed);
    for (const auto& f : sp_.factors) {
        const Block& blk = block_of(center, f.block);
        if (static_cast<int>(blk.size()) < f.offset + f.dim + 1) {
            throw InvalidInputError("chart: factor span exceeds block size");
        }
        const double r = block_norm(blk, f.offset, f.dim + 1);
        if (std::fabs(r - f.radius) > 1e-9 * (1.0 + f.radius)) {
            throw GeometryError("chart center off the factor sphere: |span| = " +
                                std::to_string(r) + ", radius = " + std::to_string(f.radius));
        }
        FactorBasis fb;
        fb.center_hat.resize(f.dim + 1);
        for (int i = 0; i <= f.dim; ++i) fb.center_hat[i] = blk[f.offset + i] / r;
        fb.tangent = tangent_basis(fb.center_hat);
        if (frame_seed != 0) rotate_basis(fb.tangent, rng);
        bases_.push_back(std::move(fb));
    }
    // Frozen coordinates must match the template.
    AmbientPoint probe = sp_.base;
    for (std::size_t fi = 0; fi < sp_.factors.size(); ++fi) {
        const auto& f = sp_.factors[fi];
        Block& blk = block_of(probe, f.block);
        for (int i = 0; i <= f.dim; ++i) blk[f.offset + i] = block_of(center, f.block)[f.offset + i];
    }
    const AmbientVector diff = center - probe;
    if (norm(diff) > 1e-9 * (1.0 + norm(as_vector(center)))) {
        throw GeometryError("chart center does not match the frozen coordinates of the product");
    }
}

AmbientPoint LocalChart::point(std::span<const double> theta) const {
    if (static_cast<int>(theta.size()) != dim_) {
        throw InvalidInputError("chart point: wrong number of coordinates");
    }
    AmbientPoint out = sp_.base;
    int at = 0;
    for (std::size_t fi = 0; fi < sp_.factors.size(); ++fi) {
        const auto& f = sp_.factors[fi];
        const auto& fb = bases_[fi];
        double r2 = 0.0;
        for (int i = 0; i < f.dim; ++i) r2 += theta[at + i] * theta[at + i];
        const double r = std::sqrt(r2);
        if (r >= kChartDomainLimit) {
            throw ChartDomainError("chart coordinates outside the valid set: |theta| = " +
                                   std::to_string(r));
        }
        const double cr = std::cos(r);
        const double sc = sinc(r);
        Block& blk = block_of(out, f.block);
        for (int i = 0; i <= f.dim; ++i) {
            double v = cr * fb.center_hat[i];
            for (int l = 0; l < f.dim; ++l) v += sc * theta[at + l] * fb.tangent[l][i];
            blk[f.offset + i] = f.radius * v;
        }
        at += f.dim;
    }
    return out;
}

std::vector<AmbientVector> LocalChart::jacobian(std::span<const double> theta) const {
    if (static_cast<int>(theta.size()) != dim_) {
        throw InvalidInputError("chart jacobian: wrong number of coordinates");
    }
    std::vector<AmbientVector> cols(dim_, zero_like(sp_.base));
    int at = 0;
    for (std::size_t fi = 0; fi < sp_.factors.size(); ++fi) {
        const auto& f = sp_.factors[fi];
        const auto& fb = bases_[fi];
        double r2 = 0.0;
        for (int i = 0; i < f.dim; ++i) r2 += theta[at + i] * theta[at + i];
        const double r = std::sqrt(r2);
        if (r >= kChartDomainLimit) {
            throw ChartDomainError("chart jacobian outside the valid set");
        }
        const double sc = sinc(r);
        const double sl = sinc_slope(r);
        for (int j = 0; j < f.dim; ++j) {
            Block& col = block_of(cols[at + j], f.block);
            for (int i = 0; i <= f.dim; ++i) {
                double v = -sc * theta[at + j] * fb.center_hat[i] + sc * fb.tangent[j][i];
                double w = 0.0;
                for (int l = 0; l < f.dim; ++l) w += theta[at + l] * fb.tangent[l][i];
                v += sl * theta[at + j] * w;
                col[f.offset + i] = f.radius * v;
            }
        }
        at += f.dim;
    }
    return cols;
}

LocalChart::Frame LocalChart::frame(std::span<const double> theta) const {
    Frame fr;
    fr.e = jacobian(theta);
    fr.coord.assign(dim_, std::vector<double>(dim_, 0.0));
    for (int i = 0; i < dim_; ++i) fr.coord[i][i] = 1.0;
    // Gram-Schmidt per factor; columns of different factors have disjoint
    // support and never mix.
    int at = 0;
    for (const auto& f : sp_.factors) {
        for (int i = at; i < at + f.dim; ++i) {
            for (int j = at; j < i; ++j) {
                const double r = dot(fr.e[i], fr.e[j]);
                axpy(-r, fr.e[j], fr.e[i]);
                for (int l = at; l < at + f.dim; ++l) fr.coord[i][l] -= r * fr.coord[j][l];
            }
            const double nrm = norm(fr.e[i]);
            if (nrm < 1e-12) throw ChartDomainError("degenerate chart frame");
            fr.e[i] = (1.0 / nrm) * fr.e[i];
            for (int l = at; l < at + f.dim; ++l) fr.coord[i][l] /= nrm;
        }
        at += f.dim;
    }
    return fr;
}

std::vector<double> LocalChart::coords_at_center(const AmbientVector& w) const {
    std::vector<double> c(dim_, 0.0);
    int at = 0;
    for (std::size_t fi = 0; fi < sp_.factors.size(); ++fi) {
        const auto& f = sp_.factors[fi];
        const auto& fb = bases_[fi];
        const Block& wb = f.block == 0 ? w.x : w.y;
        for (int j = 0; j < f.dim; ++j) {
            double s = 0.0;
            for (int i = 0; i <= f.dim; ++i) s += wb[f.offset + i] * fb.tangent[j][i];
            c[at + j] = s / f.radius;
        }
        at += f.dim;
    }
    return c;
}

ProductImmersion ProductImmersion::torus(const QuadricSpec& spec, double a, double b) {
    if (spec.q < 1) throw InvalidInputError("torus immersion requires q >= 1");
    if (!(a > 0.0) || !(b > 0.0)) {
        throw InvalidInputError("torus immersion requires positive radii (b -> 0 degenerates "
                                "the submanifold normal)");
    }
    check_constraint(spec, a, b, "torus immersion");
    return {spec, a, b, ImmersionKind::torus};
}

ProductImmersion ProductImmersion::hypersphere(const QuadricSpec& spec, double a, double b) {
    if (spec.q != 0) throw InvalidInputError("hypersphere immersion requires q = 0");
    if (!(a > 0.0)) throw InvalidInputError("hypersphere immersion requires a > 0");
    if (!(std::fabs(b) < spec.d)) {
        throw InvalidInputError("hypersphere immersion requires |b| < d");
    }
    check_constraint(spec, a, b, "hypersphere immersion");
    return {spec, a, b, ImmersionKind::hypersphere};
}

SphereProduct ProductImmersion::manifold() const {
    SphereProduct sp;
    sp.base.x.assign(spec.p + 1, 0.0);
    sp.base.y.assign(spec.q + 1, 0.0);
    sp.base.x[0] = a;
    sp.base.y[0] = b;
    sp.factors.push_back({0, 0, spec.p, a});
    if (kind == ImmersionKind::torus) sp.factors.push_back({1, 0, spec.q, b});
    return sp;
}

AmbientVector ProductImmersion::eta1_T_at(const AmbientPoint& pt) const {
    AmbientVector n = zero_like(pt);
    if (kind == ImmersionKind::hypersphere && b == 0.0) {
        n.y[0] = 1.0;
        return n;
    }
    const double fx = spec.c * spec.c / (a * a);
    const double fy = -spec.d * spec.d / (b * b);
    for (std::size_t i = 0; i < pt.x.size(); ++i) n.x[i] = fx * pt.x[i];
    for (std::size_t j = 0; j < pt.y.size(); ++j) n.y[j] = fy * pt.y[j];
    return n;
}

AmbientPoint embed(const ProductImmersion& imm, const ChartPoint& u) {
    if (static_cast<int>(u.angles_p.size()) != imm.spec.p ||
        static_cast<int>(u.angles_q.size()) != (imm.kind == ImmersionKind::torus ? imm.spec.q : 0)) {
        throw InvalidInputError("embed: chart coordinate counts do not match the immersion");
    }
    std::vector<double> theta = u.angles_p;
    theta.insert(theta.end(), u.angles_q.begin(), u.angles_q.end());
    const SphereProduct sp = imm.manifold();
    LocalChart chart(sp, sp.base);
    return chart.point(theta);
}

std::vector<AmbientVector> tangent_frame(const ProductImmersion& imm, const ChartPoint& u) {
    const AmbientPoint pt = embed(imm, u);
    LocalChart chart(imm.manifold(), pt);
    std::vector<double> origin(imm.dim(), 0.0);
    return chart.frame(origin).e;
}

GeometryCache submanifold_normal(const ProductImmersion& imm, const AmbientPoint& pt) {
    // LocalChart validates membership in the image (factor radii and frozen
    // coordinates).
    LocalChart chart(imm.manifold(), pt);
    GeometryCache cache;
    QuadricNormal nq = quadric_normal(imm.spec, pt);
    cache.eta1_Q = std::move(nq.eta1);
    cache.eta1_Q_norm_sq = nq.norm_sq;
    cache.eta1_T = imm.eta1_T_at(pt);
    cache.eta1_T_norm_sq = norm_sq(cache.eta1_T);
    return cache;
}

MinimalInner MinimalInner::identity(double target_radius) {
    if (!(target_radius > 0.0)) throw InvalidInputError("inner immersion: radius must be positive");
    return {Kind::identity, 0, 0, target_radius};
}

MinimalInner MinimalInner::great_sphere(int m, double target_radius) {
    if (m < 1) throw InvalidInputError("great sphere inner immersion requires m >= 1");
    if (!(target_radius > 0.0)) throw InvalidInputError("inner immersion: radius must be positive");
    return {Kind::great_sphere, m, 0, target_radius};
}

MinimalInner MinimalInner::clifford_pair(int m1, int m2, double target_radius) {
    if (m1 < 1 || m2 < 1) {
        throw InvalidInputError("clifford pair inner immersion requires m1, m2 >= 1");
    }
    if (!(target_radius > 0.0)) throw InvalidInputError("inner immersion: radius must be positive");
    return {Kind::clifford_pair, m1, m2, target_radius};
}

int MinimalInner::dim(int p) const {
    switch (kind) {
        case Kind::identity: return p;
        case Kind::great_sphere: return m;
        case Kind::clifford_pair: return m + m2;
    }
    return 0;
}

namespace {

// Appends the factors of one inner immersion into the given block of `sp`,
// whose base must already be zero-filled with the block's first coordinate
// available.  The factor target sphere has dimension `p` and radius `rad`.
void append_inner(SphereProduct& sp, const MinimalInner& inner, int block, int p, double rad) {
    if (std::fabs(inner.target_radius - rad) > 1e-12 * (1.0 + rad)) {
        throw ConfigurationError("composition: inner target radius " +
                                 std::to_string(inner.target_radius) +
                                 " does not match the outer factor radius " + std::to_string(rad));
    }
    Block& base = block == 0 ? sp.base.x : sp.base.y;
    switch (inner.kind) {
        case MinimalInner::Kind::identity:
            sp.factors.push_back({block, 0, p, rad});
            base[0] = rad;
            break;
        case MinimalInner::Kind::great_sphere:
            if (inner.m >= p) {
                throw ConfigurationError("great sphere inner immersion requires m < p");
            }
            sp.factors.push_back({block, 0, inner.m, rad});
            base[0] = rad;
            break;
        case MinimalInner::Kind::clifford_pair: {
            if (inner.m + inner.m2 + 1 != p) {
                throw ConfigurationError(
                    "clifford pair inner immersion requires m1 + m2 + 1 = p");
            }
            const double total = inner.m + inner.m2;
            const double r1 = rad * std::sqrt(inner.m / total);
            const double r2 = rad * std::sqrt(inner.m2 / total);
            sp.factors.push_back({block, 0, inner.m, r1});
            sp.factors.push_back({block, inner.m + 1, inner.m2, r2});
            base[0] = r1;
            base[inner.m + 1] = r2;
            break;
        }
    }
}

}  // namespace

ComposedImmersion ComposedImmersion::compose(const ProductImmersion& outer,
                                             const MinimalInner& inner) {
    if (outer.kind != ImmersionKind::hypersphere) {
        throw ConfigurationError("single-inner composition requires a hypersphere outer "
                                 "immersion; use compose_pair for a torus");
    }
    ComposedImmersion comp{outer, inner, std::nullopt};
    comp.manifold();  // validate dimensions and radii now
    return comp;
}

ComposedImmersion ComposedImmersion::compose_pair(const ProductImmersion& outer,
                                                  const MinimalInner& inner_x,
                                                  const MinimalInner& inner_y) {
    if (outer.kind != ImmersionKind::torus) {
        throw ConfigurationError("paired composition requires a torus outer immersion");
    }
    ComposedImmersion comp{outer, inner_x, inner_y};
    comp.manifold();
    return comp;
}

int ComposedImmersion::dim() const {
    int d = inner.dim(outer.spec.p);
    if (inner_y) d += inner_y->dim(outer.spec.q);
    return d;
}

SphereProduct ComposedImmersion::manifold() const {
    // Identity inners fall through the general path and reproduce the outer
    // product exactly (same factors, same base values).
    SphereProduct sp;
    sp.base.x.assign(outer.spec.p + 1, 0.0);
    sp.base.y.assign(outer.spec.q + 1, 0.0);
    append_inner(sp, inner, 0, outer.spec.p, outer.a);
    if (outer.kind == ImmersionKind::hypersphere) {
        sp.base.y[0] = outer.b;
    } else {
        if (!inner_y) throw ConfigurationError("torus composition requires a second inner map");
        append_inner(sp, *inner_y, 1, outer.spec.q, outer.b);
    }
    return sp;
}

AmbientPoint embed_composed(const ComposedImmersion& comp, std::span<const double> u) {
    SphereProduct sp = comp.manifold();
    if (static_cast<int>(u.size()) != sp.dim()) {
        throw InvalidInputError("embed_composed: wrong number of chart coordinates");
    }
    LocalChart chart(sp, sp.base);
    return chart.point(u);
}

}  // namespace bitension
