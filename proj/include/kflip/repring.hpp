#pragma once

// Case parameters for FV_{m,2s}, the finite-rank quotient ring B in
// which all homology is computed, the closed-form restriction images,
// and the change-of-generators chain P -> U -> V.
//
// Case tags: m odd/even crossed with s = 0/2 mod 4.  The ring B has
// Z-basis {1, y, dc, dc*y} for m odd and additionally the delta^+
// monomials for m even.  Reduction rules:
//   y^2   = -2y
//   dc^2  = -2^{c+1} dc + 2^{2c-1}(1 -+ K) y          K  = C(s/2+c, c)
//   (d+)^2 = dc*d+ + 2^{c-1} dc - 2^{2c-3}(1 -+ K') y  K' = C(s/2+c-1, c-1)
// with the upper sign for s = 0 mod 4 and the lower for s = 2 mod 4.

#include "kflip/exact.hpp"
#include "kflip/intlinalg.hpp"

#include <array>
#include <map>
#include <optional>

namespace kflip {

enum class CaseTag { OddZero, EvenZero, OddTwo, EvenTwo };

inline const char* case_name(CaseTag t) {
    switch (t) {
    case CaseTag::OddZero: return "odd-s0mod4";
    case CaseTag::EvenZero: return "even-s0mod4";
    case CaseTag::OddTwo: return "odd-s2mod4";
    default: return "even-s2mod4";
    }
}

struct invalid_parameters : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// m even with s = 2: the b0 index range c+1..n-2 is empty and the
// two-generator Koszul reduction does not exist.  Restriction formulas
// are still served; homology ops refuse.
struct degenerate_case : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CaseParams {
    int m{0};
    int s{0};
    int n{0};         // floor(m/2)
    int c{0};         // floor((m-2s)/2)
    CaseTag tag{CaseTag::OddZero};
    bool m_odd{true};
    int sign{1};      // +1 for s = 0 mod 4, -1 for s = 2 mod 4
    int pi_top{0};    // Pi generators of RSpin(m) run 1..pi_top
    Int K;            // binom(s/2+c, c)
    Int Kp;           // binom(s/2+c-1, c-1), used for m even
    // b0 data; absent exactly in the degenerate even/s=2 sub-case
    bool has_b0{false};
    Int b0;
    unsigned v2_b0{0};
    int alpha{0};
    int alpha_bound{0}; // alpha = min(alpha_bound, v2(b0)); u4 exists iff alpha < alpha_bound
    std::vector<Int> betas;
    std::vector<Int> b0_entries; // binom(s/2+i-1,i)*2^{2i-1}, i = c+1..pi_top

    bool has_u4() const { return has_b0 && alpha < alpha_bound; }
    int rank() const { return m_odd ? 4 : 8; }

    void require_b0(const char* who) const {
        if (!has_b0)
            throw degenerate_case(std::string(who) +
                                  ": no Pi generators above c for m even, s = 2 "
                                  "(empty b0 range), two-generator reduction undefined");
    }

    std::string id() const {
        return "FV(" + std::to_string(m) + "," + std::to_string(2 * s) + ")";
    }
};

inline CaseParams build_case(int m, int s) {
    if (s < 2 || s % 2 != 0)
        throw invalid_parameters("build_case: s must be even and >= 2");
    if (2 * s > m)
        throw invalid_parameters("build_case: need 2s <= m");
    CaseParams p;
    p.m = m;
    p.s = s;
    p.n = m / 2;
    p.c = (m - 2 * s) / 2;
    p.m_odd = (m % 2 == 1);
    if (p.c < 1)
        throw invalid_parameters("build_case: c = 0 is unsupported (degenerate fibre)");
    bool s0 = (s % 4 == 0);
    p.sign = s0 ? 1 : -1;
    p.tag = p.m_odd ? (s0 ? CaseTag::OddZero : CaseTag::OddTwo)
                    : (s0 ? CaseTag::EvenZero : CaseTag::EvenTwo);
    p.pi_top = p.m_odd ? p.n - 1 : p.n - 2;
    p.K = binom(s / 2 + p.c, p.c);
    p.Kp = binom(s / 2 + p.c - 1, p.c - 1);
    p.alpha_bound = p.m_odd ? p.n : p.n - 1;
    if (p.pi_top >= p.c + 1) {
        for (int i = p.c + 1; i <= p.pi_top; ++i)
            p.b0_entries.push_back(binom(s / 2 + i - 1, i) * pow2(2 * i - 1));
        BezoutResult bz = bezout_coeffs(p.b0_entries);
        p.has_b0 = true;
        p.b0 = bz.g;
        p.betas = bz.coeffs;
        p.v2_b0 = two_adic_split(p.b0).first;
        p.alpha = std::min<long>(p.alpha_bound, static_cast<long>(p.v2_b0));
    }
    return p;
}

// Element of B as an integer coordinate vector against the fixed
// monomial basis.  Monomial index: bit0 = y-exponent, bit1 = dc,
// bit2 = d+; rank 4 (m odd) uses indices 0..3.
using BElement = std::vector<Int>;

struct BAlgebra {
    CaseParams params;
    int rank{4};
    std::vector<std::string> basis_names;
    std::vector<std::vector<BElement>> mult_table; // [i][j] -> coords

    const BElement& mono_product(int i, int j) const { return mult_table[i][j]; }

    BElement zero() const { return BElement(rank, Int(0)); }

    BElement monomial(int idx, Int coeff = Int(1)) const {
        BElement e = zero();
        e[idx] = std::move(coeff);
        return e;
    }

    BElement one() const { return monomial(0); }
    BElement y() const { return monomial(1); }
    BElement dc() const { return monomial(2); }

    static bool is_zero(const BElement& x) {
        return std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
    }

    BElement add(const BElement& x, const BElement& y_) const {
        BElement r = x;
        for (int i = 0; i < rank; ++i)
            r[i] += y_[i];
        return r;
    }

    BElement sub(const BElement& x, const BElement& y_) const {
        BElement r = x;
        for (int i = 0; i < rank; ++i)
            r[i] -= y_[i];
        return r;
    }

    BElement scale(const Int& c, const BElement& x) const {
        BElement r = x;
        for (int i = 0; i < rank; ++i)
            r[i] *= c;
        return r;
    }

    BElement mul(const BElement& x, const BElement& y_) const {
        BElement r = zero();
        for (int i = 0; i < rank; ++i) {
            if (x[i] == 0)
                continue;
            for (int j = 0; j < rank; ++j) {
                if (y_[j] == 0)
                    continue;
                const BElement& t = mult_table[i][j];
                Int f = x[i] * y_[j];
                for (int k = 0; k < rank; ++k)
                    if (t[k] != 0)
                        r[k] += f * t[k];
            }
        }
        return r;
    }

    // matrix of multiplication by u; column k = u * basis_k
    IntMat mult_operator(const BElement& u) const {
        IntMat op(rank, rank);
        for (int k = 0; k < rank; ++k) {
            BElement col = mul(u, monomial(k));
            for (int i = 0; i < rank; ++i)
                op(i, k) = col[i];
        }
        return op;
    }

    // (2 + y), (2^{c+1} + dc) and friends appear all over
    BElement y_plus_two() const {
        BElement e = zero();
        e[0] = 2;
        e[1] = 1;
        return e;
    }

    std::string str(const BElement& x) const {
        std::string s;
        for (int i = 0; i < rank; ++i) {
            if (x[i] == 0)
                continue;
            if (!s.empty())
                s += " + ";
            s += x[i].str();
            if (i != 0)
                s += "*" + basis_names[i];
        }
        return s.empty() ? "0" : s;
    }
};

namespace detail {

// exponent vector (y, dc, d+) -> reduced B coordinates
struct BPoly {
    std::map<std::array<int, 3>, Int> terms;
    void add(std::array<int, 3> e, const Int& c) {
        if (c == 0)
            return;
        Int& slot = terms[e];
        slot += c;
        if (slot == 0)
            terms.erase(e);
    }
};

inline BElement reduce_bpoly(const CaseParams& p, BPoly poly) {
    // dc^2 coefficient on y: 2^{2c-1}(1 -+ K); integral for all c >= 1
    // since 1 -+ K is even whenever the power is fractional (c has no
    // such case here: 2c-1 >= 1).
    Int dc2_dc = -pow2(p.c + 1);
    Int dc2_y = pow2(2 * p.c - 1) * (Int(1) - Int(p.sign) * p.K);
    // (d+)^2 = dc*d+ + 2^{c-1}dc - 2^{2c-3}(1 -+ K')y ; for c = 1 the
    // bracket is even and the product is computed as an exact halving
    Int dp2_y_num = (Int(1) - Int(p.sign) * p.Kp); // times 2^{2c-3}
    for (;;) {
        auto it = std::find_if(poly.terms.begin(), poly.terms.end(), [](const auto& kv) {
            return kv.first[0] >= 2 || kv.first[1] >= 2 || kv.first[2] >= 2;
        });
        if (it == poly.terms.end())
            break;
        auto e = it->first;
        Int c = it->second;
        poly.terms.erase(it);
        if (e[0] >= 2) {
            // y^2 -> -2y
            auto e2 = e;
            e2[0] -= 1;
            poly.add(e2, Int(-2) * c);
        } else if (e[1] >= 2) {
            auto base = e;
            base[1] -= 2;
            auto edc = base, ey = base;
            edc[1] += 1;
            ey[0] += 1;
            poly.add(edc, dc2_dc * c);
            poly.add(ey, dc2_y * c);
        } else {
            auto base = e;
            base[2] -= 2;
            auto edcdp = base, edc = base, ey = base;
            edcdp[1] += 1;
            edcdp[2] += 1;
            edc[1] += 1;
            ey[0] += 1;
            poly.add(edcdp, c);
            poly.add(edc, pow2(p.c - 1) * c);
            if (p.c >= 2) {
                poly.add(ey, -pow2(2 * p.c - 3) * dp2_y_num * c);
            } else {
                // c = 1: 2^{-1} * (1 -+ K'); the bracket is always even here
                Int num = dp2_y_num * c;
                if (num % 2 != 0)
                    throw std::logic_error("reduce_bpoly: non-integral reduction");
                poly.add(ey, -num / 2);
            }
        }
    }
    int rank = p.m_odd ? 4 : 8;
    BElement out(rank, Int(0));
    for (const auto& [e, c] : poly.terms) {
        int idx = e[0] + 2 * e[1] + 4 * e[2];
        if (idx >= rank)
            throw std::logic_error("reduce_bpoly: monomial outside basis");
        out[idx] += c;
    }
    return out;
}

} // namespace detail

inline BAlgebra build_B(const CaseParams& p) {
    BAlgebra alg;
    alg.params = p;
    alg.rank = p.rank();
    static const char* names4[] = {"1", "y", "dc", "dc*y"};
    static const char* names8[] = {"1",  "y",    "dc",    "dc*y",
                                   "d+", "d+*y", "dc*d+", "dc*d+*y"};
    for (int i = 0; i < alg.rank; ++i)
        alg.basis_names.push_back(alg.rank == 4 ? names4[i] : names8[i]);
    alg.mult_table.assign(alg.rank, std::vector<BElement>(alg.rank));
    auto expo = [](int idx) {
        return std::array<int, 3>{idx & 1, (idx >> 1) & 1, (idx >> 2) & 1};
    };
    for (int i = 0; i < alg.rank; ++i)
        for (int j = 0; j < alg.rank; ++j) {
            auto ei = expo(i), ej = expo(j);
            detail::BPoly poly;
            poly.add({ei[0] + ej[0], ei[1] + ej[1], ei[2] + ej[2]}, Int(1));
            alg.mult_table[i][j] = detail::reduce_bpoly(p, std::move(poly));
        }
    return alg;
}

// ---------------------------------------------------------------------------
// Restriction images

// Res(delta-class) in B coordinates:
//   m odd : sign * (2^{s-1}(y+2) dc + 2^{n-1} y)
//   m even: sign * (2^{s-2}(y+2) dc + 2^{n-2} y)   (the delta^+ class)
inline BElement res_delta(const CaseParams& p, const BAlgebra& alg) {
    int e = p.m_odd ? p.s - 1 : p.s - 2;
    int f = p.m_odd ? p.n - 1 : p.n - 2;
    BElement r = alg.zero();
    r[3] = Int(p.sign) * pow2(e);     // dc*y
    r[2] = Int(p.sign) * pow2(e + 1); // dc
    r[1] = Int(p.sign) * pow2(f);     // y
    return r;
}

// Res(Pi_i) as a formal sum over Pibar_0..Pibar_c: the Pibar_i term
// itself (coefficient 1, no y) when i <= c, plus y-carrying lower
// terms.  Same formula in all four cases.
struct PiRestriction {
    int i{0};
    // coefficient of Pibar_j is const_coeff[j] + y_coeff[j] * y
    std::vector<Int> const_coeff;
    std::vector<Int> y_coeff;
};

inline PiRestriction res_pi_in_RH(const CaseParams& p, int i) {
    if (i < 1 || i > p.pi_top)
        throw invalid_parameters("res_pi_in_RH: index out of range");
    PiRestriction r;
    r.i = i;
    r.const_coeff.assign(p.c + 1, Int(0));
    r.y_coeff.assign(p.c + 1, Int(0));
    if (i <= p.c)
        r.const_coeff[i] = 1;
    for (int j = std::max(0, i - p.s / 2); j <= std::min(p.c, i - 1); ++j) {
        int d = i - j;
        Int coef = binom(p.s / 2, d) * pow2(2 * d - 1);
        if (d % 2 == 0)
            coef = -coef; // (-1)^{d-1}
        r.y_coeff[j] = coef;
    }
    return r;
}

// Pi'_i in B is w_i * y with
//   w_i = C(s/2+i-1, i) 2^{2i-1} - sum_{j=c+1}^{i-1} C(s/2+i-j-1, i-j) 2^{2(i-j)} w_j
inline Int pi_prime_scalar(const CaseParams& p, int i) {
    if (i <= p.c || i > p.pi_top)
        throw invalid_parameters("pi_prime_in_B: index must lie in c+1..pi_top");
    std::map<int, Int> memo;
    std::vector<int> stack;
    // iterative bottom-up, indices are tiny
    for (int k = p.c + 1; k <= i; ++k) {
        Int w = binom(p.s / 2 + k - 1, k) * pow2(2 * k - 1);
        for (int j = p.c + 1; j <= k - 1; ++j)
            w -= binom(p.s / 2 + k - j - 1, k - j) * pow2(2 * (k - j)) * memo[j];
        memo[k] = w;
    }
    return memo[i];
}

inline BElement pi_prime_in_B(const CaseParams& p, const BAlgebra& alg, int i) {
    BElement r = alg.zero();
    r[1] = pi_prime_scalar(p, i);
    return r;
}

// Pibar_i evaluated in B: 1 for i = 0, -C(s/2+i-1,i) 2^{2i-1} y for
// 1 <= i <= c, zero above c.
inline BElement pibar_in_B(const CaseParams& p, const BAlgebra& alg, int i) {
    BElement r = alg.zero();
    if (i == 0)
        r[0] = 1;
    else if (i <= p.c)
        r[1] = -binom(p.s / 2 + i - 1, i) * pow2(2 * i - 1);
    return r;
}

// Formal identity behind the closed form: expanding
// (1+2ty)^{s/2} * Pibar[t] in B reproduces the recursive Pi' values.
inline bool check_pi_prime_generating_identity(const CaseParams& p,
                                               const BAlgebra& alg) {
    // t-polynomial with BElement coefficients
    int top = p.pi_top;
    std::vector<BElement> acc(top + 1, alg.zero());
    acc[0] = alg.one();
    // multiply by (1+2ty) s/2 times
    BElement two_y = alg.scale(Int(2), alg.y());
    for (int rep = 0; rep < p.s / 2; ++rep) {
        std::vector<BElement> nxt(top + 1, alg.zero());
        for (int d = 0; d <= top; ++d) {
            nxt[d] = alg.add(nxt[d], acc[d]);
            if (d + 1 <= top)
                nxt[d + 1] = alg.add(nxt[d + 1], alg.mul(two_y, acc[d]));
        }
        acc = std::move(nxt);
    }
    // multiply by Pibar[t] = sum_j Pibar_j t^j  (j <= c)
    std::vector<BElement> full(top + 1, alg.zero());
    for (int j = 0; j <= p.c; ++j) {
        BElement pb = pibar_in_B(p, alg, j);
        for (int d = 0; d + j <= top; ++d)
            full[d + j] = alg.add(full[d + j], alg.mul(pb, acc[d]));
    }
    for (int i = p.c + 1; i <= top; ++i) {
        BElement expect = pi_prime_in_B(p, alg, i);
        if (full[i] != expect)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Change of generators: P_i (unitriangular in Pi), U_l = E * P,
// V_1 = U_1, V_l = U_l - a_l U_1.

struct ChangeOfGenerators {
    IntMat p_sub;        // P_{c+1+a} = sum_b p_sub(a,b) Pi'_{c+1+b} (unitriangular)
    std::vector<Int> p_res; // Res(P_{c+1+a}) = p_res[a] * y
    IntMat e;            // GL matrix, first row = betas
    std::vector<Int> a_l;   // Res(U_l) = a_l * b0 * y, a_0 = 1
    bool res_chain_ok{false}; // Res(V_1) = b0 y and Res(V_l) = 0 verified
};

inline ChangeOfGenerators change_of_generators(const CaseParams& p) {
    p.require_b0("change_of_generators");
    int r = p.pi_top - p.c; // = s-1 (m odd) or s-2 (m even)
    ChangeOfGenerators cg;
    cg.p_sub = IntMat(r, r);
    for (int a = 0; a < r; ++a) {
        int i = p.c + 1 + a;
        cg.p_sub(a, a) = 1;
        for (int b = 0; b < a; ++b) {
            int j = p.c + 1 + b;
            cg.p_sub(a, b) = binom(p.s / 2 + i - j - 1, i - j) * pow2(2 * (i - j));
        }
    }
    // Res(P_i) via the w-chain must equal the closed form C(s/2+i-1,i)2^{2i-1}
    cg.p_res.resize(r);
    for (int a = 0; a < r; ++a) {
        Int acc = 0;
        for (int b = 0; b <= a; ++b)
            acc += cg.p_sub(a, b) * pi_prime_scalar(p, p.c + 1 + b);
        cg.p_res[a] = acc;
        if (acc != p.b0_entries[a])
            throw std::logic_error("change_of_generators: P restriction mismatch");
    }
    cg.e = unimodular_completion(p.betas);
    cg.a_l.resize(r);
    for (int l = 0; l < r; ++l) {
        Int g = 0;
        for (int j = 0; j < r; ++j)
            g += cg.e(l, j) * cg.p_res[j];
        if (g % p.b0 != 0)
            throw std::logic_error("change_of_generators: U restriction not a b0 multiple");
        cg.a_l[l] = g / p.b0;
    }
    if (cg.a_l[0] != 1)
        throw std::logic_error("change_of_generators: Res(U_1) != b0 y");
    // V_l = U_l - a_l U_1 for l >= 2: Res(V_l) = (a_l - a_l) b0 y = 0
    cg.res_chain_ok = true;
    for (int l = 1; l < r; ++l) {
        Int resv = cg.a_l[l] * p.b0 - cg.a_l[l] * (cg.a_l[0] * p.b0);
        if (resv != 0)
            cg.res_chain_ok = false;
    }
    return cg;
}

} // namespace kflip
