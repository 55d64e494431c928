#pragma once

// Exact integer/rational scalars and the small number-theoretic kernel
// everything else is built on: binomials, gcds, Bezout rows, 2-adic
// splits, and coefficients in Q(sqrt 2).

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kflip {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int pow2(long e) {
    if (e < 0)
        throw std::invalid_argument("pow2: negative exponent");
    return Int(1) << static_cast<unsigned>(e);
}

// 2^e as a rational, e may be negative.
inline Rat pow2q(long e) {
    if (e >= 0)
        return Rat(pow2(e));
    return Rat(1, pow2(-e));
}

inline Int binom(long n, long k) {
    if (n < 0)
        throw std::invalid_argument("binom: n must be nonnegative");
    if (k < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    Int r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i; // exact at every step
    }
    return r;
}

inline Int gcd_list(std::span<const Int> xs) {
    if (xs.empty())
        throw std::invalid_argument("gcd_list: empty input");
    Int g = 0;
    for (const Int& x : xs)
        g = boost::multiprecision::gcd(g, x);
    if (g == 0)
        throw std::invalid_argument("gcd_list: all entries are zero");
    return g;
}

inline Int gcd_list(const std::vector<Int>& xs) {
    return gcd_list(std::span<const Int>(xs));
}

// g = a*x + b*y with g = gcd(a,b) >= 0.
inline void ext_gcd(const Int& a, const Int& b, Int& g, Int& x, Int& y) {
    Int old_r = a, r = b;
    Int old_x = 1, xx = 0;
    Int old_y = 0, yy = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_x - q * xx;
        old_x = xx;
        xx = t;
        t = old_y - q * yy;
        old_y = yy;
        yy = t;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_x = -old_x;
        old_y = -old_y;
    }
    g = old_r;
    x = old_x;
    y = old_y;
}

struct BezoutResult {
    Int g;
    std::vector<Int> coeffs;
};

// Coefficients with sum coeffs[i]*xs[i] = gcd(xs). Such a vector always
// has gcd 1 (any common factor d of the coefficients would make g/d an
// integer combination of the xs, forcing d = 1); asserted anyway since
// the unimodular completion downstream depends on it.
inline BezoutResult bezout_coeffs(std::span<const Int> xs) {
    if (xs.empty())
        throw std::invalid_argument("bezout_coeffs: empty input");
    BezoutResult res;
    res.coeffs.assign(xs.size(), 0);
    Int g = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == 0)
            continue;
        if (g == 0) {
            g = xs[i] < 0 ? Int(-xs[i]) : xs[i];
            res.coeffs[i] = xs[i] < 0 ? -1 : 1;
            continue;
        }
        Int g2, u, v;
        ext_gcd(g, xs[i], g2, u, v);
        for (size_t j = 0; j < i; ++j)
            res.coeffs[j] *= u;
        res.coeffs[i] = v;
        g = g2;
    }
    if (g == 0)
        throw std::invalid_argument("bezout_coeffs: all entries are zero");
    res.g = g;
    Int cg = 0;
    for (const Int& c : res.coeffs)
        cg = boost::multiprecision::gcd(cg, c);
    if (cg != 1)
        throw std::logic_error("bezout_coeffs: coefficient gcd != 1");
    return res;
}

inline BezoutResult bezout_coeffs(const std::vector<Int>& xs) {
    return bezout_coeffs(std::span<const Int>(xs));
}

// x = 2^v * odd.
inline std::pair<unsigned, Int> two_adic_split(const Int& x) {
    if (x == 0)
        throw std::invalid_argument("two_adic_split: zero input");
    Int a = boost::multiprecision::abs(x);
    unsigned v = boost::multiprecision::lsb(a);
    Int odd = x >> v;
    return {v, odd};
}

// a + b*sqrt(2) with rational a, b. A field: a^2 - 2b^2 = 0 only at 0.
struct QSqrt2 {
    Rat a{0};
    Rat b{0};

    QSqrt2() = default;
    QSqrt2(Rat ra) : a(std::move(ra)) {}
    QSqrt2(Rat ra, Rat rb) : a(std::move(ra)), b(std::move(rb)) {}
    static QSqrt2 sqrt2() { return QSqrt2(Rat(0), Rat(1)); }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) {
        return QSqrt2(x.a + y.a, x.b + y.b);
    }
    friend QSqrt2 operator-(const QSqrt2& x, const QSqrt2& y) {
        return QSqrt2(x.a - y.a, x.b - y.b);
    }
    friend QSqrt2 operator-(const QSqrt2& x) { return QSqrt2(-x.a, -x.b); }
    friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
        return QSqrt2(x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a);
    }
    friend bool operator==(const QSqrt2& x, const QSqrt2& y) {
        return x.a == y.a && x.b == y.b;
    }

    QSqrt2 inverse() const {
        Rat n = a * a - 2 * b * b;
        if (n == 0)
            throw std::invalid_argument("QSqrt2: inverse of zero");
        return QSqrt2(a / n, -b / n);
    }

    std::string str() const {
        std::string s = a.str();
        if (b != 0) {
            s += (b < 0 ? " - " : " + ");
            Rat ab = b < 0 ? Rat(-b) : b;
            if (ab != 1)
                s += ab.str() + "*";
            s += "sqrt2";
        }
        return s;
    }
};

inline QSqrt2 operator*(const Rat& r, const QSqrt2& x) {
    return QSqrt2(r * x.a, r * x.b);
}

} // namespace kflip
