#pragma once

// The canonical relation tables of the four parity cases, encoded as
// printed in their source tables, with corrected variants attached
// where the printed row fails mechanical verification.  Relations are
// polynomials over {y, dc, d+} times exterior words in {u1..u4, v}.

#include "kflip/koszul.hpp"

namespace kflip {

struct RelTerm {
    Rat coeff;            // instantiated; must be integral to be testable
    int ye{0}, dce{0}, dpe{0}; // B-monomial exponents (reduced at evaluation)
    std::vector<int> ext; // 1..4 = u_i in written order, 5 = v
};

enum class RelLevel { B, H0, H1, H2 };

struct Relation {
    std::string id;      // e.g. "H1.4"
    RelLevel level;
    std::vector<RelTerm> terms;
    std::optional<std::vector<RelTerm>> corrected; // set when the printed row is wrong
    bool involves_u4{false};
};

enum class RelStatus { Pass, FailKnownErratum, Fail, SkippedNoU4, SkippedFractional };

struct RelationOutcome {
    std::string id;
    RelStatus status{RelStatus::Pass};
    std::string witness; // residual for failures
};

struct RelationReport {
    std::vector<RelationOutcome> rows;
    bool b_h0_all_pass{true};
    bool h1_h2_clean{true}; // no unexplained failures
};

namespace detail {

inline RelTerm term(Rat coeff, int ye, int dce, std::vector<int> ext, int dpe = 0) {
    return RelTerm{std::move(coeff), ye, dce, dpe, std::move(ext)};
}

inline bool mentions_u4(const std::vector<RelTerm>& ts) {
    for (const RelTerm& t : ts)
        for (int e : t.ext)
            if (e == 4)
                return true;
    return false;
}

} // namespace detail

// Build the case's canonical relation list.  Coefficients are exact
// rationals at this point; the verifier requires them integral.
inline std::vector<Relation> canonical_relations(const CaseParams& p) {
    using detail::term;
    std::vector<Relation> rels;
    auto push = [&](std::string id, RelLevel lv, std::vector<RelTerm> ts,
                    std::optional<std::vector<RelTerm>> fix = std::nullopt) {
        Relation r;
        r.id = std::move(id);
        r.level = lv;
        r.involves_u4 = detail::mentions_u4(ts);
        r.terms = std::move(ts);
        r.corrected = std::move(fix);
        rels.push_back(std::move(r));
    };
    const int n = p.n, c = p.c, s = p.s;
    const int sg = p.sign; // +1: s = 0 mod 4, -1: s = 2 mod 4
    const Rat K(p.K), Kp(p.Kp);
    const Rat bracketK = Rat(1) - Rat(sg) * K;   // [1 -+ C(s/2+c,c)]
    const Rat bracketKp = Rat(1) - Rat(sg) * Kp; // [1 -+ C(s/2+c-1,c-1)]
    const int a = p.has_b0 ? p.alpha : 0;
    const Rat b0 = p.has_b0 ? Rat(p.b0) : Rat(0);
    const int de = p.m_odd ? 0 : 1; // exponent drop for even m (s-1 -> s-2 etc.)

    // --- B level ---
    push("B.1", RelLevel::B, {term(1, 2, 0, {}), term(2, 1, 0, {})});
    push("B.2", RelLevel::B,
         {term(1, 0, 2, {}), term(pow2q(c + 1), 0, 1, {}),
          term(-pow2q(2 * c - 1) * bracketK, 1, 0, {})});
    if (!p.m_odd) {
        // dc*d+ + 2^{c-1} dc - 2^{2c-3}[...] y - (d+)^2 ; the s = 2 mod 4
        // table drops the factor y from the third term (erratum)
        std::vector<RelTerm> printed{
            term(1, 0, 1, {}, 1), term(pow2q(c - 1), 0, 1, {}),
            term(-pow2q(2 * c - 3) * bracketKp, sg > 0 ? 1 : 0, 0, {}),
            term(-1, 0, 0, {}, 2)};
        std::vector<RelTerm> fixed{
            term(1, 0, 1, {}, 1), term(pow2q(c - 1), 0, 1, {}),
            term(-pow2q(2 * c - 3) * bracketKp, 1, 0, {}), term(-1, 0, 0, {}, 2)};
        if (sg > 0)
            push("B.3", RelLevel::B, std::move(printed));
        else
            push("B.3", RelLevel::B, std::move(printed), std::move(fixed));
    }

    // --- H0 level ---
    if (p.has_b0) {
        push("H0.1", RelLevel::H0, {term(pow2q(a), 1, 0, {})});
        push("H0.2", RelLevel::H0,
             {term(pow2q(s - 1 - de), 1, 1, {}), term(pow2q(s - de), 0, 1, {}),
              term(pow2q(n - 1 - de), 1, 0, {})});
    }

    if (!p.has_b0)
        return rels; // degenerate even/s=2: no Koszul-level relations

    // --- H1 level ---
    // (1) +-2^a u3 -+ (2^{s-1-de} dc + 2^{n-1-de}) u1
    push("H1.1", RelLevel::H1,
         {term(Rat(sg) * pow2q(a), 0, 0, {3}),
          term(Rat(-sg) * pow2q(s - 1 - de), 0, 1, {1}),
          term(Rat(-sg) * pow2q(n - 1 - de), 0, 0, {1})});
    // (2) (y+2)u3 - 2^{n-a-de} u1
    push("H1.2", RelLevel::H1,
         {term(1, 1, 0, {3}), term(2, 0, 0, {3}), term(-pow2q(n - a - de), 0, 0, {1})});
    push("H1.3a", RelLevel::H1, {term(1, 1, 0, {1})});
    push("H1.3b", RelLevel::H1, {term(1, 1, 0, {2})});
    push("H1.3c", RelLevel::H1, {term(1, 0, 1, {2})});
    // (4) (y+2)u4 - 2^{n-1-a-de} dc u1 +- 2^{-a} b0 u2
    {
        Rat u2sign = p.m_odd && sg > 0 ? Rat(1) : Rat(-1); // printed forms differ
        std::vector<RelTerm> printed{
            term(1, 1, 0, {4}), term(2, 0, 0, {4}),
            term(-pow2q(n - 1 - a - de), 0, 1, {1}),
            term(u2sign * pow2q(-a) * b0, 0, 0, {2})};
        if (p.tag == CaseTag::EvenZero) {
            // printed "- 2^{-a} b0 u2" fails; the sign must be +
            std::vector<RelTerm> fixed = printed;
            fixed[3] = term(pow2q(-a) * b0, 0, 0, {2});
            push("H1.4", RelLevel::H1, std::move(printed), std::move(fixed));
        } else {
            push("H1.4", RelLevel::H1, std::move(printed));
        }
    }
    // (5) (y+2)(2^c dc + 1)u3 +- (y+2) dc u4 - 2^{n-a-de} u1
    {
        Rat u4sign = (p.tag == CaseTag::EvenTwo) ? Rat(-1) : Rat(1);
        auto build = [&](Rat s4) {
            return std::vector<RelTerm>{
                term(pow2q(c), 1, 1, {3}), term(pow2q(c + 1), 0, 1, {3}),
                term(1, 1, 0, {3}), term(2, 0, 0, {3}),
                term(s4, 1, 1, {4}), term(s4 * 2, 0, 1, {4}),
                term(-pow2q(n - a - de), 0, 0, {1})};
        };
        if (p.tag == CaseTag::EvenTwo)
            // the printed minus on the u4 terms fails; + verifies
            push("H1.5", RelLevel::H1, build(u4sign), build(Rat(1)));
        else
            push("H1.5", RelLevel::H1, build(u4sign));
    }
    // (6) 2^{c-a+1} b0 u2 +- (y+2)(2^{c+1}+dc) u4
    {
        Rat s4(sg);
        push("H1.6", RelLevel::H1,
             {term(pow2q(c - a + 1) * b0, 0, 0, {2}), term(s4, 1, 1, {4}),
              term(s4 * 2, 0, 1, {4}), term(s4 * pow2q(c + 1), 1, 0, {4}),
              term(s4 * pow2q(c + 2), 0, 0, {4})});
    }
    // (7) +-2^{c-a-1} b0 u2 + (2^{c-1}dc + 2^{2c-2}[..]y + 2^{c-1}dc y)u3
    //     + (2^c + dc + 2^c y + dc y)u4
    push("H1.7", RelLevel::H1,
         {term(Rat(sg) * pow2q(c - a - 1) * b0, 0, 0, {2}),
          term(pow2q(c - 1), 0, 1, {3}), term(pow2q(2 * c - 2) * bracketK, 1, 0, {3}),
          term(pow2q(c - 1), 1, 1, {3}), term(pow2q(c), 0, 0, {4}),
          term(1, 0, 1, {4}), term(pow2q(c), 1, 0, {4}), term(1, 1, 1, {4})});

    // --- H2 level ---
    push("H2.1", RelLevel::H2, {term(1, 0, 0, {2, 4})});
    push("H2.2", RelLevel::H2, {term(1, 0, 0, {1, 3})});
    push("H2.3", RelLevel::H2, {term(1, 0, 1, {1, 4})});
    // combos; uniform shells with per-case signs and exponent drops
    {
        Rat sgn(sg);
        // (A) 2^{n-a-2de} b0 u1u2 +- 2^n u1u4 +- b0 u2u3 ; the u2u3 sign
        // is + for m odd and - for m even in all printed variants
        push("H2.4", RelLevel::H2,
             {term(pow2q(n - a - 2 * de) * b0, 0, 0, {1, 2}),
              term(sgn * pow2q(n), 0, 0, {1, 4}),
              term((p.m_odd ? Rat(1) : Rat(-1)) * b0, 0, 0, {2, 3})});
        // (B) 2^{n-2a-de} b0 u1u2 + 2^{-a} b0 u2u3 +- 2 u3u4
        push("H2.5", RelLevel::H2,
             {term(pow2q(n - 2 * a - de) * b0, 0, 0, {1, 2}),
              term(pow2q(-a) * b0, 0, 0, {2, 3}), term(Rat(sg) * 2, 0, 0, {3, 4})});
        // (C) -2^{n-a+1-de} u1u4 +- 2^{-a} b0 u2u3 + 2 u3u4
        {
            int e = p.m_odd ? n - a + 1 : n - a;
            push("H2.6", RelLevel::H2,
                 {term(-pow2q(e), 0, 0, {1, 4}),
                  term(Rat(sg) * pow2q(-a) * b0, 0, 0, {2, 3}), term(2, 0, 0, {3, 4})});
        }
        // (D) 2^{n-2a-de} b0 u1u2 +- 2^{n-a-de} u1u4 +- 2 u3u4
        push("H2.7", RelLevel::H2,
             {term(pow2q(n - 2 * a - de) * b0, 0, 0, {1, 2}),
              term(Rat(sg) * pow2q(n - a - de), 0, 0, {1, 4}),
              term(Rat(sg) * 2, 0, 0, {3, 4})});
    }
    push("H2.8", RelLevel::H2, {term(1, 0, 0, {1, 2}), term(-2, 0, 0, {5})});
    return rels;
}

// ---------------------------------------------------------------------------
// evaluation

namespace detail {

// reduce coeff * y^ye dc^dce d+^dpe to a BElement; nullopt if the
// instantiated coefficient is fractional
inline std::optional<BElement> term_belement(const BAlgebra& alg, const RelTerm& t) {
    if (boost::multiprecision::denominator(t.coeff) != 1)
        return std::nullopt;
    BPoly poly;
    poly.add({t.ye, t.dce, t.dpe}, boost::multiprecision::numerator(t.coeff));
    return reduce_bpoly(alg.params, std::move(poly));
}

} // namespace detail

struct RelationEvaluator {
    const KoszulData& kd;
    GeneratorSet gens;
    Lattice im_d1;
    Lattice im_d2;
    BElement v_coeff;

    explicit RelationEvaluator(const KoszulData& k)
        : kd(k), gens(paper_kernel_generators(k)), im_d1(k.d1), im_d2(k.d2),
          v_coeff(h2_generator_coefficient(k)) {}

    // evaluate one relation's terms; returns pass/fail + witness, or
    // nullopt if a coefficient is fractional (row not instantiable)
    std::optional<std::pair<bool, std::string>>
    evaluate(RelLevel level, const std::vector<RelTerm>& terms) const {
        const BAlgebra& alg = kd.algebra;
        if (level == RelLevel::B || level == RelLevel::H0) {
            BElement acc = alg.zero();
            for (const RelTerm& t : terms) {
                auto b = detail::term_belement(alg, t);
                if (!b)
                    return std::nullopt;
                acc = alg.add(acc, *b);
            }
            bool ok = (level == RelLevel::B) ? BAlgebra::is_zero(acc) : im_d1.contains(acc);
            return std::make_pair(ok, ok ? std::string() : alg.str(acc));
        }
        if (level == RelLevel::H1) {
            ModuleVector acc(2 * kd.rank(), Int(0));
            for (const RelTerm& t : terms) {
                auto b = detail::term_belement(alg, t);
                if (!b)
                    return std::nullopt;
                if (t.ext.size() != 1 || t.ext[0] > 4)
                    throw std::logic_error("H1 relation with non-u term");
                ModuleVector part =
                    kd.module_scale(*b, gens.by_name("u" + std::to_string(t.ext[0])));
                for (size_t i = 0; i < acc.size(); ++i)
                    acc[i] += part[i];
            }
            bool ok = im_d2.contains(acc);
            std::string w;
            if (!ok)
                w = "x1: " + alg.str(kd.x1_block(acc)) + " | x2: " + alg.str(kd.x2_block(acc));
            return std::make_pair(ok, w);
        }
        // H2: exact zero in Ker(d2) = B(x1^x2)
        BElement acc = kd.algebra.zero();
        for (const RelTerm& t : terms) {
            auto b = detail::term_belement(alg, t);
            if (!b)
                return std::nullopt;
            BElement val;
            if (t.ext.size() == 1 && t.ext[0] == 5) {
                val = v_coeff;
            } else if (t.ext.size() == 2) {
                val = wedge_multiply(kd, gens.by_name("u" + std::to_string(t.ext[0])),
                                     gens.by_name("u" + std::to_string(t.ext[1])));
            } else {
                throw std::logic_error("H2 relation with unexpected exterior word");
            }
            acc = alg.add(acc, alg.mul(*b, val));
        }
        bool ok = BAlgebra::is_zero(acc);
        return std::make_pair(ok, ok ? std::string() : alg.str(acc));
    }
};

// B-level rows can be tested without the Koszul complex; used for the
// degenerate even/s=2 cases where no complex exists.
inline std::vector<RelationOutcome> verify_b_relations_only(const CaseParams& p,
                                                            const BAlgebra& alg) {
    std::vector<RelationOutcome> rows;
    for (const Relation& rel : canonical_relations(p)) {
        if (rel.level != RelLevel::B)
            continue;
        RelationOutcome out;
        out.id = rel.id;
        auto eval = [&](const std::vector<RelTerm>& ts) -> std::optional<bool> {
            BElement acc = alg.zero();
            for (const RelTerm& t : ts) {
                auto b = detail::term_belement(alg, t);
                if (!b)
                    return std::nullopt;
                acc = alg.add(acc, *b);
            }
            if (!BAlgebra::is_zero(acc))
                out.witness = alg.str(acc);
            return BAlgebra::is_zero(acc);
        };
        auto res = eval(rel.terms);
        if (!res)
            out.status = RelStatus::SkippedFractional;
        else if (*res)
            out.status = RelStatus::Pass;
        else if (rel.corrected && eval(*rel.corrected).value_or(false))
            out.status = RelStatus::FailKnownErratum;
        else
            out.status = RelStatus::Fail;
        rows.push_back(out);
    }
    return rows;
}

inline RelationReport verify_relations(const KoszulData& kd) {
    RelationReport rep;
    RelationEvaluator ev(kd);
    for (const Relation& rel : canonical_relations(kd.params)) {
        RelationOutcome out;
        out.id = rel.id;
        if (rel.involves_u4 && !kd.params.has_u4()) {
            out.status = RelStatus::SkippedNoU4;
            rep.rows.push_back(out);
            continue;
        }
        auto res = ev.evaluate(rel.level, rel.terms);
        if (!res) {
            out.status = RelStatus::SkippedFractional;
            rep.rows.push_back(out);
            continue;
        }
        if (res->first) {
            out.status = RelStatus::Pass;
        } else if (rel.corrected) {
            auto fixed = ev.evaluate(rel.level, *rel.corrected);
            if (fixed && fixed->first) {
                out.status = RelStatus::FailKnownErratum;
                out.witness = res->second;
            } else {
                out.status = RelStatus::Fail;
                out.witness = res->second;
            }
        } else {
            out.status = RelStatus::Fail;
            out.witness = res->second;
        }
        if (out.status == RelStatus::Fail) {
            if (rel.level == RelLevel::B || rel.level == RelLevel::H0)
                rep.b_h0_all_pass = false;
            else
                rep.h1_h2_clean = false;
        }
        rep.rows.push_back(out);
    }
    return rep;
}

} // namespace kflip
