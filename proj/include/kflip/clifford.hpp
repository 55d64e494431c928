#pragma once

// Exact arithmetic in the real Clifford algebra C_m with e_i^2 = -1 and
// e_i e_j = -e_j e_i, coefficients in Q(sqrt 2).  Sparse multivectors
// keyed by basis-blade bitmask; m is capped at 16 (desk-scale checks
// only ever need s <= 8).

#include "kflip/exact.hpp"
#include "kflip/intlinalg.hpp"

#include <bit>
#include <cstdint>
#include <map>

namespace kflip {

constexpr int kMaxCliffordDim = 16;

struct CliffordElement {
    int m{0};
    std::map<uint32_t, QSqrt2> terms; // blade bitmask -> coefficient

    CliffordElement() = default;
    explicit CliffordElement(int dim) : m(dim) {
        if (dim < 0 || dim > kMaxCliffordDim)
            throw std::invalid_argument("CliffordElement: dimension out of range");
    }

    static CliffordElement scalar(int dim, QSqrt2 c) {
        CliffordElement e(dim);
        if (!c.is_zero())
            e.terms[0] = std::move(c);
        return e;
    }
    static CliffordElement one(int dim) { return scalar(dim, QSqrt2(Rat(1))); }

    // e_i, 1-indexed
    static CliffordElement basis_vector(int dim, int i) {
        if (i < 1 || i > dim)
            throw std::invalid_argument("basis_vector: index out of range");
        CliffordElement e(dim);
        e.terms[1u << (i - 1)] = QSqrt2(Rat(1));
        return e;
    }

    static CliffordElement blade(int dim, uint32_t mask, QSqrt2 c) {
        CliffordElement e(dim);
        if (!c.is_zero())
            e.terms[mask] = std::move(c);
        return e;
    }

    bool is_zero() const { return terms.empty(); }

    bool is_scalar() const {
        return terms.empty() || (terms.size() == 1 && terms.begin()->first == 0);
    }

    QSqrt2 scalar_part() const {
        auto it = terms.find(0);
        return it == terms.end() ? QSqrt2() : it->second;
    }

    QSqrt2 coeff(uint32_t mask) const {
        auto it = terms.find(mask);
        return it == terms.end() ? QSqrt2() : it->second;
    }

    void add_term(uint32_t mask, const QSqrt2& c) {
        if (c.is_zero())
            return;
        QSqrt2& slot = terms[mask];
        slot = slot + c;
        if (slot.is_zero())
            terms.erase(mask);
    }

    int max_grade() const {
        int g = 0;
        for (const auto& [mask, c] : terms)
            g = std::max(g, std::popcount(mask));
        return g;
    }

    bool is_grade(int k) const {
        for (const auto& [mask, c] : terms)
            if (std::popcount(mask) != k)
                return false;
        return true;
    }

    friend bool operator==(const CliffordElement& x, const CliffordElement& y) {
        return x.m == y.m && x.terms == y.terms;
    }
};

namespace detail {

// sign and mask of e_A * e_B; signature e_i^2 = -1
inline std::pair<int, uint32_t> blade_mul(uint32_t a, uint32_t b) {
    int parity = 0;
    uint32_t acc = a;
    for (uint32_t rest = b; rest != 0;) {
        uint32_t bit = rest & (~rest + 1); // lowest set bit
        rest &= ~bit;
        // swaps to move this generator past the part of acc above it
        parity ^= std::popcount(acc & ~((bit << 1) - 1)) & 1;
        if (acc & bit) {
            parity ^= 1; // e_i * e_i = -1
            acc &= ~bit;
        } else {
            acc |= bit;
        }
    }
    return {parity ? -1 : 1, acc};
}

} // namespace detail

inline CliffordElement operator+(const CliffordElement& x, const CliffordElement& y) {
    if (x.m != y.m)
        throw std::invalid_argument("clifford: dimension mismatch");
    CliffordElement r = x;
    for (const auto& [mask, c] : y.terms)
        r.add_term(mask, c);
    return r;
}

inline CliffordElement operator-(const CliffordElement& x, const CliffordElement& y) {
    if (x.m != y.m)
        throw std::invalid_argument("clifford: dimension mismatch");
    CliffordElement r = x;
    for (const auto& [mask, c] : y.terms)
        r.add_term(mask, -c);
    return r;
}

inline CliffordElement cl_multiply(const CliffordElement& x, const CliffordElement& y) {
    if (x.m != y.m)
        throw std::invalid_argument("cl_multiply: dimension mismatch");
    CliffordElement r(x.m);
    for (const auto& [ma, ca] : x.terms)
        for (const auto& [mb, cb] : y.terms) {
            auto [sign, mask] = detail::blade_mul(ma, mb);
            QSqrt2 c = ca * cb;
            if (sign < 0)
                c = -c;
            r.add_term(mask, c);
        }
    return r;
}

inline CliffordElement operator*(const CliffordElement& x, const CliffordElement& y) {
    return cl_multiply(x, y);
}

inline CliffordElement operator*(const QSqrt2& c, const CliffordElement& x) {
    CliffordElement r(x.m);
    for (const auto& [mask, t] : x.terms)
        r.add_term(mask, c * t);
    return r;
}

// canonical automorphism: -1 on grade-odd part
inline CliffordElement grade_involution(const CliffordElement& x) {
    CliffordElement r(x.m);
    for (const auto& [mask, c] : x.terms)
        r.add_term(mask, (std::popcount(mask) & 1) ? -c : c);
    return r;
}

// reversion: (-1)^{k(k-1)/2} on grade k
inline CliffordElement reversion(const CliffordElement& x) {
    CliffordElement r(x.m);
    for (const auto& [mask, c] : x.terms) {
        int k = std::popcount(mask);
        r.add_term(mask, ((k * (k - 1) / 2) & 1) ? -c : c);
    }
    return r;
}

inline CliffordElement clifford_conjugate(const CliffordElement& x) {
    return reversion(grade_involution(x));
}

inline uint32_t support_mask(const CliffordElement& x) {
    uint32_t s = 0;
    for (const auto& [mask, c] : x.terms)
        s |= mask;
    return s;
}

// Exact inverse.  Fast path: u * conj(u) scalar (covers versors, the
// torus elements, h).  Fallback: solve the left-multiplication system
// on the subalgebra generated by the support, capped at 2^8 unknowns.
inline CliffordElement cl_invert(const CliffordElement& u) {
    if (u.is_zero())
        throw std::invalid_argument("cl_invert: zero element");
    CliffordElement cj = clifford_conjugate(u);
    CliffordElement z = u * cj;
    if (z.is_scalar() && !z.is_zero())
        return z.scalar_part().inverse() * cj;

    uint32_t sup = support_mask(u);
    std::vector<int> idx; // positions of support generators
    for (int i = 0; i < u.m; ++i)
        if (sup & (1u << i))
            idx.push_back(i);
    int k = static_cast<int>(idx.size());
    if (k > 8)
        throw std::invalid_argument("cl_invert: support too large for dense solve");
    int n = 1 << k;
    auto expand = [&](int compact) {
        uint32_t mask = 0;
        for (int b = 0; b < k; ++b)
            if (compact & (1 << b))
                mask |= 1u << idx[b];
        return mask;
    };
    // columns: u * blade_j, in the compact basis; all products stay in
    // the subalgebra generated by the support
    std::vector<QSqrt2> mat(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        CliffordElement col = u * CliffordElement::blade(u.m, expand(j), QSqrt2(Rat(1)));
        for (const auto& [mask, c] : col.terms) {
            int ci = 0;
            for (int b = 0; b < k; ++b)
                if (mask & (1u << idx[b]))
                    ci |= 1 << b;
            mat[static_cast<size_t>(ci) * n + j] = c;
        }
    }
    // Gaussian elimination over the field Q(sqrt 2), rhs = e_scalar
    std::vector<QSqrt2> rhs(n);
    rhs[0] = QSqrt2(Rat(1));
    std::vector<int> perm(n);
    for (int c = 0, r = 0; c < n && r < n; ++c) {
        int p = -1;
        for (int i = r; i < n; ++i)
            if (!mat[static_cast<size_t>(i) * n + c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0)
            throw std::invalid_argument("cl_invert: element is not a unit");
        if (p != r) {
            for (int j = 0; j < n; ++j)
                std::swap(mat[static_cast<size_t>(p) * n + j],
                          mat[static_cast<size_t>(r) * n + j]);
            std::swap(rhs[p], rhs[r]);
        }
        QSqrt2 inv = mat[static_cast<size_t>(r) * n + c].inverse();
        for (int j = c; j < n; ++j)
            mat[static_cast<size_t>(r) * n + j] = inv * mat[static_cast<size_t>(r) * n + j] * QSqrt2(Rat(1));
        rhs[r] = inv * rhs[r];
        for (int i = 0; i < n; ++i) {
            if (i == r)
                continue;
            QSqrt2 f = mat[static_cast<size_t>(i) * n + c];
            if (f.is_zero())
                continue;
            for (int j = c; j < n; ++j)
                mat[static_cast<size_t>(i) * n + j] =
                    mat[static_cast<size_t>(i) * n + j] - f * mat[static_cast<size_t>(r) * n + j];
            rhs[i] = rhs[i] - f * rhs[r];
        }
        perm[r] = c;
        ++r;
    }
    CliffordElement result(u.m);
    for (int r2 = 0; r2 < n; ++r2)
        result.add_term(expand(perm[r2]), rhs[r2]);
    // paranoia: the dense path is rare, make failure loud
    if (!(u * result == CliffordElement::one(u.m)))
        throw std::invalid_argument("cl_invert: element is not a unit");
    return result;
}

// omega_i = (e_{2i-1} - e_{2i})/sqrt 2
inline CliffordElement omega_factor(int m, int i) {
    QSqrt2 inv_sqrt2(Rat(0), Rat(1, 2)); // 1/sqrt2 = sqrt2/2
    CliffordElement d =
        CliffordElement::basis_vector(m, 2 * i - 1) - CliffordElement::basis_vector(m, 2 * i);
    return inv_sqrt2 * d;
}

// omega = omega_1 ... omega_s; rational coefficients for even s
inline CliffordElement omega(int s, int m) {
    if (s <= 0 || s % 2 != 0)
        throw std::invalid_argument("omega: s must be even and positive");
    if (m < 2 * s)
        throw std::invalid_argument("omega: ambient dimension must be >= 2s");
    CliffordElement w = CliffordElement::one(m);
    for (int i = 1; i <= s; ++i)
        w = w * omega_factor(m, i);
    for (const auto& [mask, c] : w.terms)
        if (!c.is_rational())
            throw std::logic_error("omega: sqrt2 parts failed to cancel");
    return w;
}

// v_i = (e_{2i-1} + e_{2i})/sqrt 2
inline CliffordElement v_factor(int m, int i) {
    QSqrt2 inv_sqrt2(Rat(0), Rat(1, 2));
    CliffordElement d =
        CliffordElement::basis_vector(m, 2 * i - 1) + CliffordElement::basis_vector(m, 2 * i);
    return inv_sqrt2 * d;
}

// The m x m matrix of v -> alpha(x) v x^{-1} on e_1..e_m, entries in
// Q(sqrt 2); errors if some image is not grade 1 (x outside Gamma_m).
struct ProjectionMatrix {
    int m{0};
    std::vector<QSqrt2> a;
    QSqrt2& operator()(int i, int j) { return a[static_cast<size_t>(i) * m + j]; }
    const QSqrt2& operator()(int i, int j) const {
        return a[static_cast<size_t>(i) * m + j];
    }

    bool is_rational() const {
        return std::all_of(a.begin(), a.end(),
                           [](const QSqrt2& x) { return x.is_rational(); });
    }

    // exact rational matrix scaled to integers: returns (numerators, den)
    std::pair<IntMat, Int> to_scaled_int() const {
        Int den = 1;
        for (const QSqrt2& x : a) {
            if (!x.is_rational())
                throw std::invalid_argument("ProjectionMatrix: irrational entry");
            Int d = boost::multiprecision::denominator(x.a);
            den = den / boost::multiprecision::gcd(den, d) * d;
        }
        IntMat mat(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const Rat& r = (*this)(i, j).a;
                mat(i, j) = boost::multiprecision::numerator(r) *
                            (den / boost::multiprecision::denominator(r));
            }
        return {mat, den};
    }

    friend bool operator==(const ProjectionMatrix& x, const ProjectionMatrix& y) {
        return x.m == y.m && x.a == y.a;
    }
};

inline ProjectionMatrix twisted_projection(const CliffordElement& x) {
    int m = x.m;
    CliffordElement xinv = cl_invert(x);
    CliffordElement ax = grade_involution(x);
    ProjectionMatrix p;
    p.m = m;
    p.a.assign(static_cast<size_t>(m) * m, QSqrt2());
    for (int j = 1; j <= m; ++j) {
        CliffordElement img = ax * CliffordElement::basis_vector(m, j) * xinv;
        if (!img.is_zero() && !img.is_grade(1))
            throw std::invalid_argument(
                "twisted_projection: image not grade 1, element outside Gamma_m");
        for (const auto& [mask, c] : img.terms) {
            int i = std::countr_zero(mask) + 1;
            p(i - 1, j - 1) = c;
        }
    }
    return p;
}

// h = h_1 h_2 ... h_{s/2}, h_i = 1 + e_{4i-3}e_{4i} - e_{4i-2}e_{4i} + e_{4i-1}e_{4i}
inline CliffordElement conjugating_element(int s, int m) {
    if (s <= 0 || s % 2 != 0)
        throw std::invalid_argument("conjugating_element: s must be even");
    if (m < 2 * s)
        throw std::invalid_argument("conjugating_element: ambient dimension < 2s");
    CliffordElement h = CliffordElement::one(m);
    for (int i = 1; i <= s / 2; ++i) {
        CliffordElement hi = CliffordElement::one(m);
        auto e = [&](int k) { return CliffordElement::basis_vector(m, k); };
        hi = hi + e(4 * i - 3) * e(4 * i) - e(4 * i - 2) * e(4 * i) + e(4 * i - 1) * e(4 * i);
        h = h * hi;
    }
    return h;
}

// supported only on products of adjacent-pair blocks e_{2i-1}e_{2i}
inline bool in_standard_torus_support(const CliffordElement& x) {
    for (const auto& [mask, c] : x.terms) {
        uint32_t rest = mask;
        while (rest != 0) {
            uint32_t bit = rest & (~rest + 1);
            int i = std::countr_zero(bit);
            if (i % 2 != 0)
                return false; // block must start on an odd index (0-based even)
            if (!(rest & (bit << 1)))
                return false; // partner missing
            rest &= ~(bit | (bit << 1));
        }
    }
    return true;
}

enum class TorusVariant { Standard, Conjugate };

// Quarter-turn angles only (theta = k*pi/2), so cos/sin are exact.
// Standard: prod (cos t_j + e_{2j-1}e_{2j} sin t_j).
// Conjugate: the torus containing omega; for j <= s the odd factors use
// v_{2k-1}v_{2k} and the even factors -omega_{2k-1}omega_{2k}.
inline CliffordElement torus_element(const std::vector<int>& quarter_turns, int s,
                                     int m, TorusVariant variant) {
    int n = static_cast<int>(quarter_turns.size());
    if (2 * n > m)
        throw std::invalid_argument("torus_element: too many angles");
    auto cs = [](int k) {
        switch (((k % 4) + 4) % 4) {
        case 0: return std::pair<int, int>{1, 0};
        case 1: return std::pair<int, int>{0, 1};
        case 2: return std::pair<int, int>{-1, 0};
        default: return std::pair<int, int>{0, -1};
        }
    };
    CliffordElement t = CliffordElement::one(m);
    for (int j = 1; j <= n; ++j) {
        auto [c, sn] = cs(quarter_turns[j - 1]);
        CliffordElement bi(m);
        if (variant == TorusVariant::Standard || j > s) {
            bi = CliffordElement::basis_vector(m, 2 * j - 1) *
                 CliffordElement::basis_vector(m, 2 * j);
        } else if (j % 2 == 1) {
            bi = v_factor(m, j) * v_factor(m, j + 1);
        } else {
            bi = omega_factor(m, j - 1) * omega_factor(m, j);
            bi = QSqrt2(Rat(-1)) * bi;
        }
        CliffordElement f = CliffordElement::scalar(m, QSqrt2(Rat(c))) +
                            QSqrt2(Rat(sn)) * bi;
        t = t * f;
    }
    return t;
}

} // namespace kflip
