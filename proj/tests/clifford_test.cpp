#include "doctest.h"

#include "kflip/clifford.hpp"

#include <random>

using namespace kflip;

namespace {

CliffordElement e(int m, int i) { return CliffordElement::basis_vector(m, i); }

QSqrt2 q(long num, long den = 1) { return QSqrt2(Rat(num, den)); }

bool is_identity(const ProjectionMatrix& p) {
    for (int i = 0; i < p.m; ++i)
        for (int j = 0; j < p.m; ++j)
            if (!(p(i, j) == (i == j ? q(1) : q(0))))
                return false;
    return true;
}

} // namespace

TEST_CASE("defining relations") {
    int m = 4;
    CHECK(e(m, 1) * e(m, 1) == CliffordElement::scalar(m, q(-1)));
    CHECK(e(m, 1) * e(m, 2) == CliffordElement(m) - (e(m, 2) * e(m, 1)) - CliffordElement(m));
    CHECK((e(m, 1) * e(m, 2)) + (e(m, 2) * e(m, 1)) == CliffordElement(m));
}

TEST_CASE("associativity on random elements") {
    std::mt19937_64 rng(5);
    int m = 5;
    auto rand_elem = [&]() {
        CliffordElement x(m);
        for (int t = 0; t < 4; ++t)
            x.add_term(static_cast<uint32_t>(rng() % (1u << m)),
                       QSqrt2(Rat(static_cast<long>(rng() % 7) - 3),
                              Rat(static_cast<long>(rng() % 7) - 3)));
        return x;
    };
    for (int t = 0; t < 50; ++t) {
        CliffordElement a = rand_elem(), b = rand_elem(), c = rand_elem();
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("omega for s = 2 expands to (e1-e2)(e3-e4)/2") {
    CliffordElement w = omega(2, 4);
    CliffordElement expect(4);
    expect.add_term(0b0101, q(1, 2));  // e1 e3
    expect.add_term(0b1001, q(-1, 2)); // e1 e4
    expect.add_term(0b0110, q(-1, 2)); // e2 e3
    expect.add_term(0b1010, q(1, 2));  // e2 e4
    CHECK(w == expect);
}

TEST_CASE("omega squares to the parity sign") {
    for (int s = 2; s <= 8; s += 2) {
        CliffordElement w = omega(s, 2 * s);
        CliffordElement sq = w * w;
        int expect = (s % 4 == 0) ? 1 : -1;
        CHECK(sq == CliffordElement::scalar(2 * s, q(expect)));
    }
    CHECK_THROWS_AS(omega(3, 8), std::invalid_argument);
}

TEST_CASE("inverse: fast path and dense path") {
    int m = 4;
    CHECK(cl_invert(CliffordElement::one(m)) == CliffordElement::one(m));
    CHECK(cl_invert(e(m, 1)) == CliffordElement(m) - e(m, 1) - CliffordElement(m));
    CliffordElement h = conjugating_element(2, 4);
    CHECK(h * cl_invert(h) == CliffordElement::one(4));
    // 1 + 2 e1e2e3 has no scalar u*conj(u); exercises the dense solve
    CliffordElement u = CliffordElement::one(4);
    u.add_term(0b0111, q(2));
    CHECK(u * cl_invert(u) == CliffordElement::one(4));
    // 1 + e1e2e3 is a zero divisor ((e1e2e3)^2 = 1)
    CliffordElement zd = CliffordElement::one(4);
    zd.add_term(0b0111, q(1));
    CHECK_THROWS_AS(cl_invert(zd), std::invalid_argument);
    CHECK_THROWS_AS(cl_invert(CliffordElement(4)), std::invalid_argument);
}

TEST_CASE("twisted projection of 1 and of a reflection vector") {
    CHECK(is_identity(twisted_projection(CliffordElement::one(3))));
    // u = (e1 - e2)/sqrt2: reflection across the hyperplane orthogonal to u
    int m = 4;
    QSqrt2 inv_sqrt2(Rat(0), Rat(1, 2));
    CliffordElement u = inv_sqrt2 * (e(m, 1) - e(m, 2));
    ProjectionMatrix p = twisted_projection(u);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            QSqrt2 expect = q(0);
            if ((i == 0 && j == 1) || (i == 1 && j == 0))
                expect = q(1);
            else if (i == j && i >= 2)
                expect = q(1);
            CHECK(p(i, j) == expect);
        }
}

TEST_CASE("twisted projection of omega is the flip matrix") {
    for (int s : {2, 4}) {
        for (int m : {2 * s, 2 * s + 1}) {
            ProjectionMatrix p = twisted_projection(omega(s, m));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    QSqrt2 expect = q(0);
                    if (i < 2 * s && j < 2 * s) {
                        if ((i ^ 1) == j)
                            expect = q(1); // the 2x2 swap blocks
                    } else if (i == j) {
                        expect = q(1);
                    }
                    CHECK(p(i, j) == expect);
                }
        }
    }
}

TEST_CASE("random rational vectors project to reflections") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 30; ++t) {
        int m = 3 + static_cast<int>(rng() % 3);
        CliffordElement u(m);
        bool nz = false;
        for (int i = 1; i <= m; ++i) {
            long v = static_cast<long>(rng() % 9) - 4;
            if (v != 0)
                nz = true;
            u = u + QSqrt2(Rat(v)) * e(m, i);
        }
        if (!nz)
            continue;
        ProjectionMatrix p = twisted_projection(u);
        REQUIRE(p.is_rational());
        auto [mat, den] = p.to_scaled_int();
        // orthogonal: M^T M = den^2 I, and det = -den^m (a reflection)
        IntMat mt = mat.transpose() * mat;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                CHECK(mt(i, j) == (i == j ? den * den : Int(0)));
        Int d = det(mat);
        Int expect = -1;
        for (int i = 0; i < m; ++i)
            expect *= den;
        CHECK(d == expect);
    }
}

TEST_CASE("projection is a homomorphism on torus samples") {
    std::mt19937_64 rng(13);
    int s = 2, m = 5;
    for (int t = 0; t < 20; ++t) {
        std::vector<int> th1(m / 2), th2(m / 2);
        for (auto& v : th1)
            v = static_cast<int>(rng() % 4) - 1;
        for (auto& v : th2)
            v = static_cast<int>(rng() % 4) - 1;
        CliffordElement x = torus_element(th1, s, m, TorusVariant::Conjugate);
        CliffordElement y = torus_element(th2, s, m, TorusVariant::Conjugate);
        ProjectionMatrix pxy = twisted_projection(x * y);
        auto [mp, dp] = pxy.to_scaled_int();
        auto [mx, dx] = twisted_projection(x).to_scaled_int();
        auto [my, dy] = twisted_projection(y).to_scaled_int();
        // compare p(xy) and p(x)p(y) after clearing denominators
        IntMat lhs = mp;
        for (Int& v : lhs.a)
            v *= dx * dy;
        IntMat rhs = mx * my;
        for (Int& v : rhs.a)
            v *= dp;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("conjugating element h") {
    CliffordElement h = conjugating_element(2, 4);
    CliffordElement expect = CliffordElement::one(4);
    expect.add_term(0b1001, q(1));  // e1 e4
    expect.add_term(0b1010, q(-1)); // e2 e4
    expect.add_term(0b1100, q(1));  // e3 e4
    CHECK(h == expect);

    // h (w1 w2) h^{-1} = +- e3 e4
    CliffordElement w = omega(2, 4);
    CliffordElement conj = h * w * cl_invert(h);
    CliffordElement e34 = e(4, 3) * e(4, 4);
    bool plus = (conj == e34);
    bool minus = (conj == CliffordElement(4) - e34 - CliffordElement(4));
    CHECK((plus || minus));
    CHECK(in_standard_torus_support(conj));

    // s = 4: h w h^{-1} lands in the standard torus span
    CliffordElement h4 = conjugating_element(4, 8);
    CliffordElement w4 = omega(4, 8);
    CHECK(in_standard_torus_support(h4 * w4 * cl_invert(h4)));
}

TEST_CASE("torus elements at quarter turns") {
    int s = 2, m = 6;
    std::vector<int> zero(m / 2, 0);
    CHECK(torus_element(zero, s, m, TorusVariant::Conjugate) == CliffordElement::one(m));
    // theta_{2i-1} = 0, theta_{2i} = -pi/2 recovers omega
    std::vector<int> th(m / 2, 0);
    th[1] = -1;
    CHECK(torus_element(th, s, m, TorusVariant::Conjugate) == omega(2, m));
    // standard variant, theta_1 = pi: the factor is -1
    std::vector<int> pi_angle{2};
    CHECK(torus_element(pi_angle, 0, 2, TorusVariant::Standard) ==
          CliffordElement::scalar(2, q(-1)));
    // s = 4 check of the omega embedding
    std::vector<int> th4(4, 0);
    th4[1] = -1;
    th4[3] = -1;
    CHECK(torus_element(th4, 4, 8, TorusVariant::Conjugate) == omega(4, 8));
}

TEST_CASE("dimension guards") {
    CHECK_THROWS_AS(CliffordElement(17), std::invalid_argument);
    CHECK_THROWS_AS(cl_multiply(CliffordElement::one(3), CliffordElement::one(4)),
                    std::invalid_argument);
}
