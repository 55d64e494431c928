#include "doctest.h"

#include "kflip/intlinalg.hpp"

#include <random>

using namespace kflip;

namespace {

IntMat make(int r, int c, std::initializer_list<long> vals) {
    IntMat m(r, c);
    auto it = vals.begin();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m(i, j) = *it++;
    return m;
}

bool is_hermite(const IntMat& h, const std::vector<int>& pivots) {
    int prev = -1;
    for (size_t r = 0; r < pivots.size(); ++r) {
        int p = pivots[r];
        if (p <= prev)
            return false;
        prev = p;
        if (h(static_cast<int>(r), p) <= 0)
            return false;
        for (int j = 0; j < p; ++j)
            if (h(static_cast<int>(r), j) != 0)
                return false;
        for (int i = 0; i < static_cast<int>(r); ++i) {
            if (h(i, p) < 0 || h(i, p) >= h(static_cast<int>(r), p))
                return false;
        }
    }
    for (int i = static_cast<int>(pivots.size()); i < h.rows; ++i)
        for (int j = 0; j < h.cols; ++j)
            if (h(i, j) != 0)
                return false;
    return true;
}

IntMat random_matrix(std::mt19937_64& rng, int maxr, int maxc, long bound) {
    int r = 1 + static_cast<int>(rng() % maxr);
    int c = 1 + static_cast<int>(rng() % maxc);
    IntMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m(i, j) = static_cast<long>(rng() % (2 * bound + 1)) - bound;
    return m;
}

} // namespace

TEST_CASE("hermite examples") {
    {
        auto [h, u, piv] = hermite_normal_form(IntMat::identity(3));
        CHECK(h == IntMat::identity(3));
        CHECK(u == IntMat::identity(3));
    }
    {
        IntMat m = make(2, 2, {2, 4, 0, 3});
        auto res = hermite_normal_form(m);
        CHECK(res.h == make(2, 2, {2, 1, 0, 3}));
        CHECK(res.u * m == res.h);
        CHECK(boost::multiprecision::abs(det(res.u)) == 1);
    }
    {
        IntMat z(2, 2);
        auto res = hermite_normal_form(z);
        CHECK(res.h == z);
        CHECK(res.u == IntMat::identity(2));
    }
}

TEST_CASE("smith examples") {
    {
        IntMat m = make(2, 2, {6, 0, 0, 4});
        auto res = smith_normal_form(m);
        CHECK(res.s == make(2, 2, {2, 0, 0, 12})); // invariant factors of Z/6+Z/4
        CHECK(res.u * m * res.v == res.s);
    }
    {
        auto res = smith_normal_form(IntMat::identity(2));
        CHECK(res.s == IntMat::identity(2));
    }
    {
        IntMat m = make(2, 2, {2, 0, 0, 0});
        auto res = smith_normal_form(m);
        CHECK(res.s == make(2, 2, {2, 0, 0, 0}));
    }
}

TEST_CASE("kernel examples") {
    {
        IntMat m = make(1, 2, {1, 1});
        IntMat k = kernel_basis(m);
        REQUIRE(k.cols == 1);
        CHECK((m * k).is_zero());
        CHECK(lattice_equal(k, make(2, 1, {1, -1})));
    }
    {
        IntMat m = make(1, 2, {2, 4});
        IntMat k = kernel_basis(m);
        REQUIRE(k.cols == 1);
        CHECK((m * k).is_zero());
        CHECK(lattice_equal(k, make(2, 1, {2, -1})));
    }
    {
        IntMat k = kernel_basis(IntMat::identity(2));
        CHECK(k.cols == 0);
    }
}

TEST_CASE("quotient presentations") {
    {
        auto pres = quotient_presentation(IntMat::identity(2),
                                          make(2, 2, {2, 0, 0, 3}));
        REQUIRE(pres.invariant_factors.size() == 1);
        CHECK(pres.invariant_factors[0] == 6);
        CHECK(pres.free_rank == 0);
        CHECK(pres.group_str() == "Z/6");
    }
    {
        auto pres = quotient_presentation(IntMat::identity(1), std::nullopt);
        CHECK(pres.free_rank == 1);
        CHECK(pres.group_str() == "Z");
    }
    {
        auto pres = quotient_presentation(make(2, 2, {2, 0, 0, 1}),
                                          make(2, 1, {2, 0}));
        CHECK(pres.invariant_factors.size() == 1);
        CHECK(pres.invariant_factors[0] == 0);
        CHECK(pres.free_rank == 1);
    }
    CHECK_THROWS_AS(quotient_presentation(make(2, 1, {2, 0}), make(2, 1, {0, 1})),
                    std::invalid_argument);
    CHECK_THROWS_AS(quotient_presentation(make(2, 2, {2, 0, 0, 1}), make(2, 1, {1, 0})),
                    std::invalid_argument);
}

TEST_CASE("lattice equality") {
    CHECK(lattice_equal(IntMat::identity(2), IntMat::identity(2)));
    CHECK_FALSE(lattice_equal(make(2, 1, {1, 0}), make(2, 1, {2, 0})));
    CHECK(lattice_equal(make(2, 2, {2, 1, 1, 1}), IntMat::identity(2)));
}

TEST_CASE("element order mod lattice") {
    Lattice l(make(2, 2, {2, 1, 1, 1})); // full lattice Z^2
    std::vector<Int> v{1, 0};
    CHECK(element_order_mod_lattice(v, l) == 1);
    Lattice l2(make(2, 2, {2, 0, 0, 3}));
    CHECK(element_order_mod_lattice(std::vector<Int>{1, 0}, l2) == 2);
    CHECK(element_order_mod_lattice(std::vector<Int>{1, 1}, l2) == 6);
    Lattice l3(make(2, 1, {2, 1}));
    CHECK(element_order_mod_lattice(std::vector<Int>{1, 0}, l3) == 0); // outside span
    Lattice l4(make(2, 2, {2, 0, 1, 2}));
    // 4*(1,0) = 2*(2,1) - (0,2); 2*(1,0) is not in the lattice
    CHECK(element_order_mod_lattice(std::vector<Int>{1, 0}, l4) == 4);
}

TEST_CASE("unimodular completion examples") {
    {
        IntMat m = unimodular_completion(std::vector<Int>{1, 0, 0});
        CHECK(m == IntMat::identity(3));
    }
    {
        IntMat m = unimodular_completion(std::vector<Int>{2, 3});
        CHECK(m(0, 0) == 2);
        CHECK(m(0, 1) == 3);
        CHECK(boost::multiprecision::abs(det(m)) == 1);
    }
    {
        std::vector<Int> row{6, 10, 15};
        IntMat m = unimodular_completion(row);
        for (int j = 0; j < 3; ++j)
            CHECK(m(0, j) == row[j]);
        // determinant by explicit cofactor expansion as the oracle
        Int d = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        CHECK(boost::multiprecision::abs(d) == 1);
    }
    CHECK(unimodular_completion(std::vector<Int>{-1})(0, 0) == -1);
    CHECK_THROWS_AS(unimodular_completion(std::vector<Int>{2, 4}), std::invalid_argument);
}

TEST_CASE("random HNF/SNF postconditions") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 300; ++t) {
        IntMat m = random_matrix(rng, 6, 6, 50);
        auto hr = hermite_normal_form(m);
        CHECK(hr.u * m == hr.h);
        CHECK(boost::multiprecision::abs(det(hr.u)) == 1);
        CHECK(is_hermite(hr.h, hr.pivot_cols));

        auto sr = smith_normal_form(m);
        CHECK(sr.u * m * sr.v == sr.s);
        CHECK(boost::multiprecision::abs(det(sr.u)) == 1);
        CHECK(boost::multiprecision::abs(det(sr.v)) == 1);
        for (int i = 0; i < std::min(sr.s.rows, sr.s.cols); ++i)
            for (int j = 0; j < std::min(sr.s.rows, sr.s.cols); ++j)
                if (i != j)
                    CHECK(sr.s(i, j) == 0);
        for (int i = 0; i + 1 < sr.rank; ++i)
            CHECK(sr.s(i + 1, i + 1) % sr.s(i, i) == 0);

        IntMat k = kernel_basis(m);
        CHECK((m * k).is_zero());
        if (k.cols > 0) {
            auto ks = smith_normal_form(k);
            CHECK(ks.rank == k.cols);
            for (int i = 0; i < ks.rank; ++i)
                CHECK(ks.s(i, i) == 1); // saturation
        }
    }
}

TEST_CASE("quotient vs brute-force group enumeration") {
    std::mt19937_64 rng(99);
    int done = 0;
    while (done < 40) {
        int n = 2 + static_cast<int>(rng() % 2);
        IntMat rels(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rels(i, j) = static_cast<long>(rng() % 13) - 6;
        Int d = boost::multiprecision::abs(det(rels));
        if (d == 0 || d > 1000)
            continue;
        ++done;
        auto pres = quotient_presentation(IntMat::identity(n), rels);
        Int order = 1;
        for (const Int& f : pres.invariant_factors) {
            REQUIRE(f != 0);
            order *= f;
        }
        CHECK(order == d);
        // enumerate coset representatives via the HNF fundamental box and
        // tally element orders; compare with the invariant-factor prediction
        Lattice lat(rels);
        REQUIRE(lat.rank() == n);
        std::vector<Int> diag(n);
        for (int i = 0; i < n; ++i)
            diag[i] = lat.basis_rows(i, lat.pivot_cols[i]);
        std::map<Int, long> got, want;
        std::vector<Int> idx(n, Int(0));
        for (;;) {
            std::vector<Int> v = idx;
            got[element_order_mod_lattice(v, lat)] += 1;
            int k = n - 1;
            while (k >= 0) {
                idx[k] += 1;
                if (idx[k] < diag[k])
                    break;
                idx[k] = 0;
                --k;
            }
            if (k < 0)
                break;
        }
        // predicted multiset of element orders in sum of Z/f_i
        std::vector<long> fs;
        for (const Int& f : pres.invariant_factors)
            fs.push_back(static_cast<long>(f));
        std::vector<std::vector<long>> tuples{{}};
        for (long f : fs) {
            std::vector<std::vector<long>> next;
            for (const auto& t : tuples)
                for (long v = 0; v < f; ++v) {
                    auto t2 = t;
                    t2.push_back(v);
                    next.push_back(std::move(t2));
                }
            tuples = std::move(next);
        }
        for (const auto& t : tuples) {
            Int o = 1;
            for (size_t i = 0; i < t.size(); ++i) {
                long f = fs[i];
                long g = std::gcd(t[i], f);
                long ord = f / (g == 0 ? f : g);
                if (t[i] == 0)
                    ord = 1;
                Int oi(ord);
                o = o / boost::multiprecision::gcd(o, oi) * oi;
            }
            want[o] += 1;
        }
        CHECK(got == want);
    }
}
