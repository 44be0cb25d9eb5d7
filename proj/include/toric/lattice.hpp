#pragma once

/**
 * @file lattice.hpp
 * @brief Exact integer and rational linear algebra in dimension 2:
 *        GL(2,Z) matrices, Aff(2,Z) maps, and Z-basis tests.
 */

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "toric/rational.hpp"

namespace toric {

struct IntVec2 {
    std::int64_t a = 0;
    std::int64_t b = 0;

    friend bool operator==(const IntVec2&, const IntVec2&) = default;
    IntVec2 operator-() const { return {-a, -b}; }
};

/// Exact rational point/vector in the moment plane.
struct RatVec2 {
    Rational x;
    Rational y;

    friend bool operator==(const RatVec2&, const RatVec2&) = default;
    RatVec2 operator+(const RatVec2& o) const { return {x + o.x, y + o.y}; }
    RatVec2 operator-(const RatVec2& o) const { return {x - o.x, y - o.y}; }
};

/// 2x2 integer matrix, row-major.
struct IntMat2 {
    std::int64_t m00 = 1, m01 = 0;
    std::int64_t m10 = 0, m11 = 1;

    friend bool operator==(const IntMat2&, const IntMat2&) = default;

    IntVec2 operator*(const IntVec2& v) const {
        return {m00 * v.a + m01 * v.b, m10 * v.a + m11 * v.b};
    }
    RatVec2 operator*(const RatVec2& v) const {
        return {Rational(m00) * v.x + Rational(m01) * v.y,
                Rational(m10) * v.x + Rational(m11) * v.y};
    }
    IntMat2 operator*(const IntMat2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
};

/// 2x2 rational matrix, row-major. Result type of exact inversion.
struct RatMat2 {
    Rational m00, m01, m10, m11;

    friend bool operator==(const RatMat2&, const RatMat2&) = default;

    RatVec2 operator*(const RatVec2& v) const {
        return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
    }
    Rational det() const { return m00 * m11 - m01 * m10; }
};

inline std::int64_t det(const IntMat2& m) { return m.m00 * m.m11 - m.m01 * m.m10; }

inline std::int64_t det(const IntVec2& u, const IntVec2& v) { return u.a * v.b - u.b * v.a; }

inline Rational det(const RatVec2& u, const RatVec2& v) { return u.x * v.y - u.y * v.x; }

inline bool is_unimodular(const IntMat2& m) {
    std::int64_t d = det(m);
    return d == 1 || d == -1;
}

/// True iff {u, v} is a Z-basis of Z^2.
inline bool is_unimodular_pair(const IntVec2& u, const IntVec2& v) {
    std::int64_t d = det(u, v);
    return d == 1 || d == -1;
}

/// v / gcd(|a|,|b|); same direction, coprime entries. Throws on (0,0).
inline IntVec2 primitive(const IntVec2& v) {
    if (v.a == 0 && v.b == 0) throw std::domain_error("degenerate edge");
    std::int64_t g = std::gcd(v.a < 0 ? -v.a : v.a, v.b < 0 ? -v.b : v.b);
    return {v.a / g, v.b / g};
}

/// Primitive integer vector in the direction of a nonzero rational vector.
inline IntVec2 primitive_direction(const RatVec2& v) {
    if (v.x.is_zero() && v.y.is_zero()) throw std::domain_error("degenerate edge");
    std::int64_t l = std::lcm(v.x.den(), v.y.den());
    IntVec2 w{(v.x * Rational(l)).num(), (v.y * Rational(l)).num()};
    return primitive(w);
}

/// Affine map p -> Ap + b with A in GL(2,Z) and rational offset b.
struct AffineMapZ {
    IntMat2 linear;
    RatVec2 offset;

    friend bool operator==(const AffineMapZ&, const AffineMapZ&) = default;
};

inline RatVec2 apply_affine(const AffineMapZ& mu, const RatVec2& p) {
    return mu.linear * p + mu.offset;
}

inline RatMat2 to_rational(const IntMat2& m) {
    return {Rational(m.m00), Rational(m.m01), Rational(m.m10), Rational(m.m11)};
}

inline RatMat2 inverse(const IntMat2& m) {
    std::int64_t d = det(m);
    if (d == 0) throw std::domain_error("singular matrix");
    Rational rd(d);
    return {Rational(m.m11) / rd, Rational(-m.m01) / rd,
            Rational(-m.m10) / rd, Rational(m.m00) / rd};
}

/// (m^T)^-1, exact. Integral whenever |det m| = 1.
inline RatMat2 inverse_transpose(const IntMat2& m) {
    RatMat2 inv = inverse(m);
    return {inv.m00, inv.m10, inv.m01, inv.m11};
}

/// Transport of a t-vector (e.g. a circle stabilizer generator) under the
/// torus reparametrization induced by p -> Ap + b on the moment plane.
inline IntVec2 transport_stabilizer(const IntMat2& a, const IntVec2& xi) {
    RatMat2 it = inverse_transpose(a);
    RatVec2 im = it * RatVec2{Rational(xi.a), Rational(xi.b)};
    return primitive_direction(im);
}

inline std::string str(const IntVec2& v) {
    return "(" + std::to_string(v.a) + ", " + std::to_string(v.b) + ")";
}

inline std::string str(const RatVec2& v) {
    return "(" + v.x.str() + ", " + v.y.str() + ")";
}

}  // namespace toric
