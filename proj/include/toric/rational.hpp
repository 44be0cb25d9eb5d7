#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational arithmetic on 64-bit integers.
 *
 * All lattice and polygon computations in this library are exact: the
 * smoothness tests are integer determinant conditions where rounding is
 * fatal. Values are kept normalized (gcd(|num|,den) = 1, den > 0) and
 * intermediate products are carried in 128 bits; a result that does not
 * fit 64 bits throws.
 *
 * Serialization grammar (shared with the polygon file format):
 * "p/q" or "p", base 10, optional leading '-'.
 */

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace toric {

class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("rational: zero denominator");
        normalize_from(static_cast<__int128>(n), static_cast<__int128>(d));
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    Rational operator-() const { return make_raw(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational: division by zero");
        return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& r) { return *this = *this + r; }
    Rational& operator-=(const Rational& r) { return *this = *this - r; }
    Rational& operator*=(const Rational& r) { return *this = *this * r; }
    Rational& operator/=(const Rational& r) { return *this = *this / r; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

    /// Parses "p" or "p/q". Throws std::invalid_argument on any other input.
    static Rational parse(std::string_view text) {
        auto bad = [&] {
            return std::invalid_argument("rational: cannot parse '" + std::string(text) + "'");
        };
        size_t slash = text.find('/');
        std::string_view ns = text.substr(0, slash);
        std::int64_t n = parse_int(ns, bad);
        if (slash == std::string_view::npos) return Rational(n);
        std::string_view ds = text.substr(slash + 1);
        if (!ds.empty() && ds[0] == '-') throw bad();  // sign lives on the numerator
        std::int64_t d = parse_int(ds, bad);
        if (d == 0) throw bad();
        return Rational(n, d);
    }

private:
    std::int64_t num_;
    std::int64_t den_;

    static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }

    static Rational make_raw(std::int64_t n, std::int64_t d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    static Rational from128(__int128 n, __int128 d) {
        Rational r;
        r.normalize_from(n, d);
        return r;
    }

    void normalize_from(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        if (n == 0) { num_ = 0; den_ = 1; return; }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        n /= a;
        d /= a;
        constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
        if (n > lim || n < -lim || d > lim)
            throw std::overflow_error("rational: value exceeds 64-bit range");
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
    }

    template <class MakeErr>
    static std::int64_t parse_int(std::string_view s, MakeErr bad) {
        if (s.empty()) throw bad();
        size_t i = 0;
        bool neg = false;
        if (s[0] == '-') { neg = true; i = 1; }
        if (i == s.size()) throw bad();
        __int128 v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw bad();
            v = v * 10 + (s[i] - '0');
            if (v > static_cast<__int128>(INT64_MAX)) throw bad();
        }
        return neg ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
    }
};

}  // namespace toric
