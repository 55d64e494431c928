#pragma once

// Exact integer linear algebra on small dense matrices: Hermite and
// Smith normal forms with transforms, saturated kernel bases, lattice
// membership/equality, cokernel presentations.  Everything is
// deterministic; canonical forms double as equality certificates.

#include "kflip/exact.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <sstream>

namespace kflip {

struct IntMat {
    int rows{0};
    int cols{0};
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Int& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& operator()(int i, int j) const {
        return a[static_cast<size_t>(i) * cols + j];
    }

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static IntMat from_columns(const std::vector<std::vector<Int>>& cols_in, int dim) {
        IntMat m(dim, static_cast<int>(cols_in.size()));
        for (int j = 0; j < m.cols; ++j) {
            assert(static_cast<int>(cols_in[j].size()) == dim);
            for (int i = 0; i < dim; ++i)
                m(i, j) = cols_in[j][i];
        }
        return m;
    }

    std::vector<Int> column(int j) const {
        std::vector<Int> v(rows);
        for (int i = 0; i < rows; ++i)
            v[i] = (*this)(i, j);
        return v;
    }

    IntMat transpose() const {
        IntMat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
    }

    friend bool operator==(const IntMat& x, const IntMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    friend IntMat operator*(const IntMat& x, const IntMat& y) {
        assert(x.cols == y.rows);
        IntMat r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const Int& xik = x(i, k);
                if (xik == 0)
                    continue;
                for (int j = 0; j < y.cols; ++j)
                    r(i, j) += xik * y(k, j);
            }
        return r;
    }

    std::vector<Int> apply(std::span<const Int> v) const {
        assert(static_cast<int>(v.size()) == cols);
        std::vector<Int> r(rows, Int(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if ((*this)(i, j) != 0)
                    r[i] += (*this)(i, j) * v[j];
        return r;
    }

    IntMat hstack(const IntMat& other) const {
        assert(rows == other.rows);
        IntMat r(rows, cols + other.cols);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j)
                r(i, j) = (*this)(i, j);
            for (int j = 0; j < other.cols; ++j)
                r(i, cols + j) = other(i, j);
        }
        return r;
    }

    std::string str() const {
        std::ostringstream os;
        for (int i = 0; i < rows; ++i) {
            os << (i == 0 ? "[" : " ");
            for (int j = 0; j < cols; ++j)
                os << (*this)(i, j) << (j + 1 < cols ? " " : "");
            os << (i + 1 < rows ? ";\n" : "]");
        }
        return os.str();
    }
};

// Exact determinant, Bareiss fraction-free elimination.
inline Int det(const IntMat& m) {
    assert(m.rows == m.cols);
    int n = m.rows;
    if (n == 0)
        return 1;
    IntMat w = m;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (w(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0)
                return 0;
            for (int j = 0; j < n; ++j)
                std::swap(w(k, j), w(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = w(i, j) * w(k, k) - w(i, k) * w(k, j);
                w(i, j) = t / prev; // divides exactly (Bareiss)
            }
        prev = w(k, k);
    }
    return sign * w(n - 1, n - 1);
}

namespace detail {

inline void swap_rows(IntMat& m, int i, int j) {
    for (int k = 0; k < m.cols; ++k)
        std::swap(m(i, k), m(j, k));
}

inline void neg_row(IntMat& m, int i) {
    for (int k = 0; k < m.cols; ++k)
        m(i, k) = -m(i, k);
}

inline void add_row(IntMat& m, int dst, int src, const Int& f) {
    if (f == 0)
        return;
    for (int k = 0; k < m.cols; ++k)
        m(dst, k) += f * m(src, k);
}

// Rows (i, j) at column `col`: row_i <- x*row_i + y*row_j lands the gcd
// at (i,col), row_j <- -(b/g)*row_i + (a/g)*row_j zeroes (j,col).
// Determinant +1; mirrored into u.  When the pivot already divides the
// entry a plain elimination is used: the general operation would
// replace row i and the resulting fill-in can ping-pong forever.
inline void gcd_rows(IntMat& m, IntMat& u, int i, int j, int col) {
    Int a = m(i, col), b = m(j, col);
    if (a != 0 && b % a == 0) {
        Int q = b / a;
        for (int k = 0; k < m.cols; ++k)
            m(j, k) -= q * m(i, k);
        for (int k = 0; k < u.cols; ++k)
            u(j, k) -= q * u(i, k);
        return;
    }
    Int g, x, y;
    ext_gcd(a, b, g, x, y);
    Int p = a / g, q = b / g;
    for (int k = 0; k < m.cols; ++k) {
        Int mi = m(i, k), mj = m(j, k);
        m(i, k) = x * mi + y * mj;
        m(j, k) = -q * mi + p * mj;
    }
    for (int k = 0; k < u.cols; ++k) {
        Int ui = u(i, k), uj = u(j, k);
        u(i, k) = x * ui + y * uj;
        u(j, k) = -q * ui + p * uj;
    }
}

// Columns (i, j) at row `row`, mirrored into v (right transform).
inline void gcd_cols(IntMat& m, IntMat& v, int i, int j, int row) {
    Int a = m(row, i), b = m(row, j);
    if (a != 0 && b % a == 0) {
        Int q = b / a;
        for (int k = 0; k < m.rows; ++k)
            m(k, j) -= q * m(k, i);
        for (int k = 0; k < v.rows; ++k)
            v(k, j) -= q * v(k, i);
        return;
    }
    Int g, x, y;
    ext_gcd(a, b, g, x, y);
    Int p = a / g, q = b / g;
    for (int k = 0; k < m.rows; ++k) {
        Int mi = m(k, i), mj = m(k, j);
        m(k, i) = x * mi + y * mj;
        m(k, j) = -q * mi + p * mj;
    }
    for (int k = 0; k < v.rows; ++k) {
        Int vi = v(k, i), vj = v(k, j);
        v(k, i) = x * vi + y * vj;
        v(k, j) = -q * vi + p * vj;
    }
}

inline void swap_cols(IntMat& m, int i, int j) {
    for (int k = 0; k < m.rows; ++k)
        std::swap(m(k, i), m(k, j));
}

// Clear row t and column t beyond the diagonal; iterates because a
// column pass can re-dirty the row and vice versa, but |s(t,t)| only
// ever shrinks, so this terminates.
inline void clear_cross(IntMat& s, IntMat& u, IntMat& v, int t) {
    for (;;) {
        for (int i = t + 1; i < s.rows; ++i)
            if (s(i, t) != 0)
                gcd_rows(s, u, t, i, t);
        for (int j = t + 1; j < s.cols; ++j)
            if (s(t, j) != 0)
                gcd_cols(s, v, t, j, t);
        bool clean = true;
        for (int i = t + 1; i < s.rows; ++i)
            if (s(i, t) != 0)
                clean = false;
        if (clean)
            return;
    }
}

} // namespace detail

struct HermiteResult {
    IntMat h; // row-style HNF: echelon, positive pivots, reduced above
    IntMat u; // unimodular, u*m = h
    std::vector<int> pivot_cols;
};

inline HermiteResult hermite_normal_form(const IntMat& m) {
    HermiteResult res{m, IntMat::identity(m.rows), {}};
    IntMat& h = res.h;
    IntMat& u = res.u;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (h(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        if (p != r) {
            detail::swap_rows(h, r, p);
            detail::swap_rows(u, r, p);
        }
        for (int i = r + 1; i < m.rows; ++i)
            if (h(i, c) != 0)
                detail::gcd_rows(h, u, r, i, c);
        if (h(r, c) < 0) {
            detail::neg_row(h, r);
            detail::neg_row(u, r);
        }
        for (int i = 0; i < r; ++i) {
            Int q = h(i, c) / h(r, c);
            if (h(i, c) - q * h(r, c) < 0)
                q -= 1; // floor division, entries land in [0, pivot)
            detail::add_row(h, i, r, -q);
            detail::add_row(u, i, r, -q);
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    return res;
}

struct SmithResult {
    IntMat s; // diagonal, d1 | d2 | ..., nonnegative
    IntMat u; // unimodular
    IntMat v; // unimodular, u*m*v = s
    int rank{0};
};

inline SmithResult smith_normal_form(const IntMat& m) {
    SmithResult res{m, IntMat::identity(m.rows), IntMat::identity(m.cols), 0};
    IntMat& s = res.s;
    IntMat& u = res.u;
    IntMat& v = res.v;
    int n = std::min(m.rows, m.cols);
    for (int t = 0; t < n; ++t) {
        int pi = -1, pj = -1;
        for (int i = t; i < s.rows && pi < 0; ++i)
            for (int j = t; j < s.cols; ++j)
                if (s(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0)
            break;
        if (pi != t) {
            detail::swap_rows(s, t, pi);
            detail::swap_rows(u, t, pi);
        }
        if (pj != t) {
            detail::swap_cols(s, t, pj);
            detail::swap_cols(v, t, pj);
        }
        detail::clear_cross(s, u, v, t);
        if (s(t, t) < 0) {
            detail::neg_row(s, t);
            detail::neg_row(u, t);
        }
        ++res.rank;
    }
    // enforce the divisibility chain d_t | d_j for t < j
    bool changed = true;
    while (changed) {
        changed = false;
        for (int t = 0; t + 1 < res.rank && !changed; ++t)
            for (int j = t + 1; j < res.rank && !changed; ++j) {
                if (s(j, j) % s(t, t) == 0)
                    continue;
                // fold column j into column t, then re-clear the corner:
                // the new corner entry is gcd(d_t, d_j), strictly smaller
                for (int i = 0; i < s.rows; ++i)
                    s(i, t) += s(i, j);
                for (int i = 0; i < v.rows; ++i)
                    v(i, t) += v(i, j);
                detail::clear_cross(s, u, v, t);
                if (s(t, t) < 0) {
                    detail::neg_row(s, t);
                    detail::neg_row(u, t);
                }
                if (s(j, j) < 0) {
                    detail::neg_row(s, j);
                    detail::neg_row(u, j);
                }
                changed = true;
            }
    }
    return res;
}

// Z-basis of {x : m*x = 0}, saturated, canonical (HNF-reduced columns).
inline IntMat kernel_basis(const IntMat& m) {
    SmithResult snf = smith_normal_form(m);
    int k = m.cols - snf.rank;
    if (k == 0)
        return IntMat(m.cols, 0);
    IntMat raw(m.cols, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m.cols; ++i)
            raw(i, j) = snf.v(i, snf.rank + j);
    HermiteResult h = hermite_normal_form(raw.transpose());
    IntMat out(m.cols, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m.cols; ++i)
            out(i, j) = h.h(j, i);
    return out;
}

// Column lattice with a canonical (row-HNF of transpose) basis; the
// canonical form certifies lattice equality.
struct Lattice {
    int dim{0};
    IntMat basis_rows; // one basis vector per row, HNF-canonical
    std::vector<int> pivot_cols;

    Lattice() = default;
    explicit Lattice(const IntMat& generators) : dim(generators.rows) {
        HermiteResult h = hermite_normal_form(generators.transpose());
        int r = static_cast<int>(h.pivot_cols.size());
        basis_rows = IntMat(r, dim);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < dim; ++j)
                basis_rows(i, j) = h.h(i, j);
        pivot_cols = h.pivot_cols;
    }

    int rank() const { return basis_rows.rows; }

    bool contains(std::span<const Int> v) const {
        assert(static_cast<int>(v.size()) == dim);
        std::vector<Int> w(v.begin(), v.end());
        for (int i = 0; i < basis_rows.rows; ++i) {
            int p = pivot_cols[i];
            if (w[p] == 0)
                continue;
            if (w[p] % basis_rows(i, p) != 0)
                return false;
            Int q = w[p] / basis_rows(i, p);
            for (int j = 0; j < dim; ++j)
                w[j] -= q * basis_rows(i, j);
        }
        return std::all_of(w.begin(), w.end(), [](const Int& x) { return x == 0; });
    }

    bool contains_columns(const IntMat& m) const {
        for (int j = 0; j < m.cols; ++j)
            if (!contains(m.column(j)))
                return false;
        return true;
    }

    friend bool operator==(const Lattice& x, const Lattice& y) {
        return x.dim == y.dim && x.basis_rows == y.basis_rows;
    }

    IntMat basis_columns() const { return basis_rows.transpose(); }
};

inline bool lattice_equal(const IntMat& a, const IntMat& b) {
    assert(a.rows == b.rows);
    return Lattice(a) == Lattice(b);
}

// Smallest k > 0 with k*v in the lattice; 0 if v is outside the
// rational span.  Greedy product of per-pivot requirements: any valid
// multiplier must contain each factor, so the product is minimal.
inline Int element_order_mod_lattice(std::span<const Int> v, const Lattice& lat) {
    std::vector<Int> w(v.begin(), v.end());
    Int order = 1;
    for (int i = 0; i < lat.basis_rows.rows; ++i) {
        int p = lat.pivot_cols[i];
        if (w[p] == 0)
            continue;
        Int piv = lat.basis_rows(i, p);
        Int need = piv / boost::multiprecision::gcd(w[p], piv);
        if (need != 1) {
            order *= need;
            for (Int& x : w)
                x *= need;
        }
        Int q = w[p] / piv;
        for (int j = 0; j < lat.basis_rows.cols; ++j)
            w[j] -= q * lat.basis_rows(i, j);
    }
    bool zero = std::all_of(w.begin(), w.end(), [](const Int& x) { return x == 0; });
    return zero ? order : Int(0);
}

struct RatMat {
    int rows{0};
    int cols{0};
    std::vector<Rat> a;
    RatMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    Rat& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& operator()(int i, int j) const {
        return a[static_cast<size_t>(i) * cols + j];
    }
};

// Solve m*x = b exactly over Q; nullopt if inconsistent.  With
// dependent columns the free coordinates are returned as 0.
inline std::optional<std::vector<Rat>> solve_rational(const IntMat& m,
                                                      std::span<const Int> b) {
    RatMat w(m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j)
            w(i, j) = Rat(m(i, j));
        w(i, m.cols) = Rat(b[i]);
    }
    std::vector<int> pivot_of_col(m.cols, -1);
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (w(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        for (int j = 0; j <= m.cols; ++j)
            std::swap(w(r, j), w(p, j));
        Rat inv = w(r, c);
        for (int j = c; j <= m.cols; ++j)
            w(r, j) /= inv;
        for (int i = 0; i < m.rows; ++i)
            if (i != r && w(i, c) != 0) {
                Rat f = w(i, c);
                for (int j = c; j <= m.cols; ++j)
                    w(i, j) -= f * w(r, j);
            }
        pivot_of_col[c] = r;
        ++r;
    }
    for (int i = r; i < m.rows; ++i)
        if (w(i, m.cols) != 0)
            return std::nullopt;
    std::vector<Rat> x(m.cols, Rat(0));
    for (int c = 0; c < m.cols; ++c)
        if (pivot_of_col[c] >= 0)
            x[c] = w(pivot_of_col[c], m.cols);
    return x;
}

// Finitely generated abelian group: generators + integer relation
// matrix; canonical form = invariant factors with the 1-entries dropped
// and one 0 per free rank.
struct AbelianPresentation {
    std::vector<std::string> generator_labels;
    IntMat relation_matrix; // columns are relations in the generators
    std::vector<Int> invariant_factors;
    int free_rank{0};

    std::string group_str() const {
        std::vector<std::string> parts;
        for (const Int& d : invariant_factors)
            if (d != 0)
                parts.push_back("Z/" + d.str());
        if (free_rank == 1)
            parts.push_back("Z");
        else if (free_rank > 1)
            parts.push_back("Z^" + std::to_string(free_rank));
        if (parts.empty())
            return "0";
        std::string s = parts[0];
        for (size_t i = 1; i < parts.size(); ++i)
            s += " + " + parts[i];
        return s;
    }
};

// Presentation of (lattice spanned by sub_gens)/(lattice spanned by
// rels).  sub_gens must have independent columns; relations must lie in
// their Z-span (anything else signals a broken differential).
inline AbelianPresentation quotient_presentation(
    const IntMat& sub_gens, const std::optional<IntMat>& ambient_rels,
    std::vector<std::string> labels = {}) {
    int g = sub_gens.cols;
    {
        SmithResult s = smith_normal_form(sub_gens);
        if (s.rank != g)
            throw std::invalid_argument("quotient_presentation: dependent generators");
    }
    AbelianPresentation pres;
    if (labels.empty())
        for (int i = 0; i < g; ++i)
            labels.push_back("g" + std::to_string(i));
    pres.generator_labels = std::move(labels);
    int nrels = ambient_rels ? ambient_rels->cols : 0;
    IntMat coords(g, nrels);
    for (int j = 0; j < nrels; ++j) {
        auto col = ambient_rels->column(j);
        auto x = solve_rational(sub_gens, col);
        if (!x)
            throw std::invalid_argument(
                "quotient_presentation: relation outside generator span");
        for (int i = 0; i < g; ++i) {
            const Rat& xi = (*x)[i];
            if (boost::multiprecision::denominator(xi) != 1)
                throw std::invalid_argument(
                    "quotient_presentation: relation not in the generator lattice");
            coords(i, j) = boost::multiprecision::numerator(xi);
        }
    }
    pres.relation_matrix = coords;
    SmithResult snf = smith_normal_form(coords);
    for (int i = 0; i < snf.rank; ++i)
        if (snf.s(i, i) != 1)
            pres.invariant_factors.push_back(snf.s(i, i));
    pres.free_rank = g - snf.rank;
    for (int i = 0; i < pres.free_rank; ++i)
        pres.invariant_factors.push_back(0);
    return pres;
}

// Square integer matrix with |det| = 1 whose first row is the given
// primitive row.  Pairwise extended-gcd column operations folded right
// to left reduce the row to e1; the accumulated inverse operations are
// the completion.
inline IntMat unimodular_completion(std::span<const Int> row) {
    if (row.empty())
        throw std::invalid_argument("unimodular_completion: empty row");
    int r = static_cast<int>(row.size());
    {
        Int g = 0;
        for (const Int& x : row)
            g = boost::multiprecision::gcd(g, x);
        if (g != 1)
            throw std::invalid_argument("unimodular_completion: row gcd != 1");
    }
    std::vector<Int> cur(row.begin(), row.end());
    IntMat minv = IntMat::identity(r);
    for (int i = r - 2; i >= 0; --i) {
        Int a = cur[i], b = cur[i + 1];
        if (b == 0)
            continue; // tail already folded
        Int g, x, y;
        ext_gcd(a, b, g, x, y);
        Int p = a / g, q = b / g;
        cur[i] = g;
        cur[i + 1] = 0;
        // column op E with b*E = (..., g, 0, ...); minv <- E^{-1} * minv
        for (int k = 0; k < r; ++k) {
            Int mi = minv(i, k), mj = minv(i + 1, k);
            minv(i, k) = p * mi + q * mj;
            minv(i + 1, k) = -y * mi + x * mj;
        }
    }
    if (cur[0] == -1) {
        detail::neg_row(minv, 0);
        cur[0] = 1;
    }
    assert(cur[0] == 1);
    for (int k = 0; k < r; ++k)
        assert(minv(0, k) == row[k]);
    return minv;
}

inline IntMat unimodular_completion(const std::vector<Int>& row) {
    return unimodular_completion(std::span<const Int>(row));
}

} // namespace kflip
