#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace bitension {

// Largest supported block length (p+1 or q+1).  Everything here is desk
// scale; the fixed capacity keeps the dense kernels allocation-free.
inline constexpr std::size_t kMaxBlock = 8;

// Fixed-capacity dense real vector with a std::vector-like surface.
class Block {
  public:
    Block() = default;
    explicit Block(std::size_t n, double v = 0.0) { assign(n, v); }
    Block(std::initializer_list<double> l) {
        for (double e : l) push_back(e);
    }

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    double& operator[](std::size_t i) { return d_[i]; }
    const double& operator[](std::size_t i) const { return d_[i]; }

    double* begin() { return d_.data(); }
    double* end() { return d_.data() + n_; }
    const double* begin() const { return d_.data(); }
    const double* end() const { return d_.data() + n_; }
    const double* data() const { return d_.data(); }

    void assign(std::size_t n, double v) {
        check(n);
        n_ = n;
        for (std::size_t i = 0; i < n; ++i) d_[i] = v;
    }
    void resize(std::size_t n, double v = 0.0) {
        check(n);
        for (std::size_t i = n_; i < n; ++i) d_[i] = v;
        n_ = n;
    }
    void push_back(double v) {
        check(n_ + 1);
        d_[n_++] = v;
    }

    friend bool operator==(const Block& a, const Block& b) {
        if (a.n_ != b.n_) return false;
        for (std::size_t i = 0; i < a.n_; ++i)
            if (a.d_[i] != b.d_[i]) return false;
        return true;
    }

  private:
    static void check(std::size_t n) {
        if (n > kMaxBlock) throw std::length_error("Block: capacity exceeded");
    }

    std::array<double, kMaxBlock> d_{};
    std::size_t n_ = 0;
};

// Point of R^{p+1} x R^{q+1}.  The two blocks are kept separate everywhere;
// they are concatenated only when writing reports.
struct AmbientPoint {
    Block x, y;
};

// Vector of R^{p+1} x R^{q+1}, same block layout as AmbientPoint.
struct AmbientVector {
    Block x, y;
};

inline double dot(const Block& a, const Block& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double dot(const AmbientVector& a, const AmbientVector& b) {
    return dot(a.x, b.x) + dot(a.y, b.y);
}

inline double norm_sq(const AmbientVector& v) { return dot(v, v); }
inline double norm(const AmbientVector& v) { return std::sqrt(norm_sq(v)); }

inline AmbientVector zero_vector(std::size_t nx, std::size_t ny) {
    return {Block(nx, 0.0), Block(ny, 0.0)};
}

inline AmbientVector zero_like(const AmbientPoint& p) {
    return zero_vector(p.x.size(), p.y.size());
}

inline AmbientVector operator+(const AmbientVector& a, const AmbientVector& b) {
    AmbientVector c = a;
    for (std::size_t i = 0; i < c.x.size(); ++i) c.x[i] += b.x[i];
    for (std::size_t i = 0; i < c.y.size(); ++i) c.y[i] += b.y[i];
    return c;
}

inline AmbientVector operator-(const AmbientVector& a, const AmbientVector& b) {
    AmbientVector c = a;
    for (std::size_t i = 0; i < c.x.size(); ++i) c.x[i] -= b.x[i];
    for (std::size_t i = 0; i < c.y.size(); ++i) c.y[i] -= b.y[i];
    return c;
}

inline AmbientVector operator*(double s, const AmbientVector& v) {
    AmbientVector c = v;
    for (double& e : c.x) e *= s;
    for (double& e : c.y) e *= s;
    return c;
}

inline AmbientVector operator-(const AmbientVector& v) { return -1.0 * v; }

inline void axpy(double s, const AmbientVector& v, AmbientVector& acc) {
    for (std::size_t i = 0; i < acc.x.size(); ++i) acc.x[i] += s * v.x[i];
    for (std::size_t i = 0; i < acc.y.size(); ++i) acc.y[i] += s * v.y[i];
}

inline AmbientPoint operator+(const AmbientPoint& p, const AmbientVector& v) {
    AmbientPoint r = p;
    for (std::size_t i = 0; i < r.x.size(); ++i) r.x[i] += v.x[i];
    for (std::size_t i = 0; i < r.y.size(); ++i) r.y[i] += v.y[i];
    return r;
}

// Displacement between points, as a vector.
inline AmbientVector operator-(const AmbientPoint& a, const AmbientPoint& b) {
    AmbientVector c{a.x, a.y};
    for (std::size_t i = 0; i < c.x.size(); ++i) c.x[i] -= b.x[i];
    for (std::size_t i = 0; i < c.y.size(); ++i) c.y[i] -= b.y[i];
    return c;
}

inline AmbientVector as_vector(const AmbientPoint& p) { return {p.x, p.y}; }

}  // namespace bitension
