#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "scatq/families.hpp"
#include "test_util.hpp"

using namespace scatq;
using testutil::Lcg;

TEST_CASE("phi coefficient pattern (t=3, J=1, m=1)") {
    auto F = FieldCtx::make_field(3, 1, 6);
    LinPoly f = phi({F, 3, 1, F->one()});
    // X^(q^2) + X^(q^5) + X^q - X^(q^4)
    CHECK(f.c[2] == F->one());
    CHECK(f.c[5] == F->one());
    CHECK(f.c[1] == F->one());
    CHECK(f.c[4] == F->neg(F->one()));
    CHECK(f.c[0].is_zero());
    CHECK(f.c[3].is_zero());
}

TEST_CASE("phi = alpha + beta pointwise, exactly 4 nonzero coefficients") {
    auto F = FieldCtx::make_field(3, 1, 6);
    unsigned t = 3;
    Lcg rng;
    auto fqt = F->subfield(t);
    for (unsigned J : {1u, 5u}) {
        FieldElem m;
        do { m = F->from_index(fqt.elements_sorted()[rng.below(27)]); } while (m.is_zero());
        LinPoly f = phi({F, t, J, m});
        LinPoly a = alpha_poly(F, t, J);
        LinPoly b = beta_poly(F, t, J, m);
        int nonzero = 0;
        for (const auto& c : f.c) nonzero += !c.is_zero();
        CHECK(nonzero == 4);
        for (std::uint64_t i = 0; i < F->card(); ++i) {
            FieldElem x = F->from_index(i);
            CHECK(eval(f, x) == F->add(eval(a, x), eval(b, x)));
        }
    }
}

TEST_CASE("phi parameter validation") {
    auto F = FieldCtx::make_field(3, 1, 6);
    // m outside F_{q^t}
    FieldElem bad = F->from_index(3); // the element X generates the full field
    CHECK_FALSE(F->subfield(3).contains(bad));
    CHECK_THROWS_AS(phi({F, 3, 1, bad}), parameter_error);
    CHECK_THROWS_AS(phi({F, 3, 2, F->one()}), parameter_error);     // gcd(J,2t) != 1
    CHECK_THROWS_AS(phi({F, 3, 1, F->zero()}), parameter_error);    // m = 0
    CHECK_THROWS_AS(beta_poly(F, 3, 1, F->zero()), parameter_error);
    CHECK_THROWS_AS(phi({F, 2, 1, F->one()}), parameter_error);     // t < 3 (wrong field too)
}

TEST_CASE("Lemma: kernel/image of alpha and beta are W and F_{q^t}") {
    auto F = FieldCtx::make_field(3, 1, 6);
    unsigned t = 3;
    WSubspace W(F, t);
    auto fqt = F->subfield(t);

    LinPoly a = alpha_poly(F, t, 1);
    LinPoly b = beta_poly(F, t, 1, F->one());

    std::set<std::uint64_t> ker_a, im_a, ker_b, im_b;
    for (std::uint64_t i = 0; i < F->card(); ++i) {
        FieldElem x = F->from_index(i);
        FieldElem ax = eval(a, x), bx = eval(b, x);
        if (ax.is_zero()) ker_a.insert(i);
        if (bx.is_zero()) ker_b.insert(i);
        im_a.insert(F->index(ax));
        im_b.insert(F->index(bx));
    }
    std::set<std::uint64_t> wset(W.elements_sorted().begin(), W.elements_sorted().end());
    std::set<std::uint64_t> qtset(fqt.elements_sorted().begin(), fqt.elements_sorted().end());
    CHECK(ker_a == wset);
    CHECK(im_a == qtset);
    CHECK(ker_b == qtset);
    CHECK(im_b == wset);
}

TEST_CASE("W subspace invariants") {
    for (auto [p, t] : {std::pair{3u, 3u}, {5u, 3u}, {3u, 4u}}) {
        auto F = FieldCtx::make_field(p, 1, 2 * t);
        WSubspace W(F, t);
        const auto& ws = W.elements_sorted();
        std::uint64_t qt = 1;
        for (unsigned i = 0; i < t; ++i) qt *= p;
        CHECK(ws.size() == qt);

        auto fqt = F->subfield(t);
        std::set<std::uint64_t> wset(ws.begin(), ws.end());
        for (std::uint64_t idx : ws) {
            FieldElem x = F->from_index(idx);
            CHECK(wset.count(F->index(F->frobenius_q(x, 1))));   // closed under x -> x^q
            if (!x.is_zero()) {
                CHECK(wset.count(F->index(F->inv(x))));          // closed under inversion
                CHECK_FALSE(fqt.contains(x));                    // W cap F_{q^t} = {0}
            }
            // x^(sigma^t) = -x for any J coprime to 2t (J odd)
            for (unsigned J : {1u, 2 * t - 1}) {
                CHECK(F->frobenius_q(x, (J * t) % (2 * t)) == F->neg(x));
            }
        }
    }
}

TEST_CASE("Lemma: products and direct sum decomposition") {
    auto F = FieldCtx::make_field(3, 1, 6);
    unsigned t = 3;
    WSubspace W(F, t);
    auto fqt = F->subfield(t);
    // 1. A in F_{q^t}, B in W => AB in W ; 2. A, B in W => AB in F_{q^t}
    for (std::uint64_t ia : fqt.elements_sorted())
        for (std::uint64_t ib : W.elements_sorted())
            CHECK(W.contains(F->mul(F->from_index(ia), F->from_index(ib))));
    for (std::uint64_t ia : W.elements_sorted())
        for (std::uint64_t ib : W.elements_sorted())
            CHECK(fqt.contains(F->mul(F->from_index(ia), F->from_index(ib))));
    // 3. F_{q^2t} = F_{q^t} (+) W: unique decomposition via the halves trick
    FieldElem half = F->inv(F->from_int(2));
    for (std::uint64_t i = 0; i < F->card(); ++i) {
        FieldElem x = F->from_index(i);
        FieldElem xq = F->frobenius_q(x, t);
        FieldElem x1 = F->mul(half, F->add(x, xq));
        FieldElem x2 = F->mul(half, F->sub(x, xq));
        CHECK(fqt.contains(x1));
        CHECK(W.contains(x2));
        CHECK(F->add(x1, x2) == x);
    }
}

TEST_CASE("pseudoregulus and Lunardon-Polverino constructors") {
    auto F = FieldCtx::make_field(3, 1, 6);
    CHECK(pseudoregulus(F, 1) == lin_monomial(F, 1));
    CHECK_THROWS_AS(pseudoregulus(F, 2), parameter_error);
    CHECK(pseudoregulus(F, 5) == lin_monomial(F, 5));

    CHECK_THROWS_AS(lunardon_polverino(F, 1, F->zero()), parameter_error);
    CHECK_THROWS_AS(lunardon_polverino(F, 1, F->one()), parameter_error); // N(1) = 1
    // find a delta with N(delta) not in {0,1}; smallest index works or not, scan
    for (std::uint64_t i = 1; i < F->card(); ++i) {
        FieldElem d = F->from_index(i);
        FieldElem nrm = F->rel_norm(d, 6, 1);
        if (!nrm.is_zero() && !(nrm == F->one())) {
            LinPoly g = lunardon_polverino(F, 1, d);
            CHECK(g.c[5] == F->one());
            CHECK(g.c[1] == d);
            break;
        }
    }
}

TEST_CASE("quadrinomial psi") {
    auto F = FieldCtx::make_field(3, 1, 6);
    unsigned t = 3;
    CHECK_THROWS_AS(quadrinomial_psi(F, t, 1, F->one()), parameter_error); // 1 != -1

    // enumerate h with h^(q^t+1) = -1; count should be q^t+1 = 28
    std::vector<FieldElem> hs;
    for (std::uint64_t i = 1; i < F->card(); ++i) {
        FieldElem h = F->from_index(i);
        if (F->mul(F->frobenius_q(h, t), h) == F->neg(F->one())) hs.push_back(h);
    }
    CHECK(hs.size() == 28);
    for (const auto& h : hs) {
        PsiPoly psi = quadrinomial_psi(F, t, 1, h);
        int nonzero = 0;
        for (const auto& c : psi.poly.c) nonzero += !c.is_zero();
        CHECK(nonzero == 4);
        CHECK(psi.h_in_fqt == F->subfield(t).contains(h));
    }

    // sub-family (iii-a): h in F_{q^t} with h^2 = -1 exists iff q^t = 1 mod 4
    auto F5 = FieldCtx::make_field(5, 1, 6);
    bool found_a = false;
    for (std::uint64_t idx : F5->subfield(3).elements_sorted()) {
        FieldElem h = F5->from_index(idx);
        if (F5->mul(h, h) == F5->neg(F5->one())) {
            PsiPoly psi = quadrinomial_psi(F5, 3, 1, h);
            CHECK(psi.h_in_fqt);
            found_a = true;
        }
    }
    CHECK(found_a); // 5^3 = 125 = 1 mod 4
}

TEST_CASE("phi adjoint form matches adjoint of phi") {
    auto F = FieldCtx::make_field(3, 1, 6);
    unsigned t = 3;
    CHECK_THROWS_AS(phi_adjoint_form(F, t, F->zero()), parameter_error);
    CHECK(adjoint(phi({F, t, 1, F->one()})) == phi_adjoint_form(F, t, F->one()));
    for (std::uint64_t idx : F->subfield(t).elements_sorted()) {
        FieldElem m = F->from_index(idx);
        if (m.is_zero()) continue;
        CHECK(adjoint(phi({F, t, 1, m})) == phi_adjoint_form(F, t, F->frobenius_q(m, t - 1)));
    }
}

TEST_CASE("power class counts match the closed forms") {
    struct Want { unsigned p, t; };
    for (auto [p, t] : {Want{3, 3}, {3, 4}, {5, 3}, {5, 4}}) {
        auto F = FieldCtx::make_field(p, 1, 2 * t);
        std::uint64_t qt1 = 1;
        for (unsigned i = 0; i < t; ++i) qt1 *= p;
        qt1 -= 1;

        auto s1 = power_class(F, t, PowerClass::QMinus1);
        CHECK(s1.cardinality == qt1 / (p - 1));
        auto s2 = power_class(F, t, PowerClass::QPlus1);
        CHECK(s2.cardinality == (t % 2 == 0 ? qt1 / (p + 1) : qt1 / 2));
        auto nrm = power_class(F, t, PowerClass::NormOne);
        CHECK(nrm.cardinality == qt1 / (p - 1));

        // every class member is in F_{q^t}^* and satisfies the defining equation
        auto fqt = F->subfield(t);
        FieldElem rhs1 = s1.equation_rhs == 1 ? F->one() : F->neg(F->one());
        for (std::uint64_t idx : s1.elements) {
            CHECK(fqt.contains(F->from_index(idx)));
            CHECK(F->pow(F->from_index(idx), s1.equation_exponent) == rhs1);
        }
    }
}

TEST_CASE("power class spot values from the paper") {
    {
        auto F = FieldCtx::make_field(3, 1, 6); // q=3, t=3
        auto s1 = power_class(F, 3, PowerClass::QMinus1);
        CHECK(s1.cardinality == 13);
        CHECK(s1.equation_rhs == -1);
        CHECK(s1.equation_exponent == 13);
        auto s2 = power_class(F, 3, PowerClass::QPlus1);
        CHECK(s2.cardinality == 13);
        CHECK(s2.equation_rhs == 1); // (-1)^((q+1)/2) = (-1)^2 = 1
    }
    {
        auto F = FieldCtx::make_field(3, 1, 8); // q=3, t=4
        auto s2 = power_class(F, 4, PowerClass::QPlus1);
        CHECK(s2.cardinality == 20);
        CHECK(s2.equation_rhs == -1);
        CHECK(s2.equation_exponent == 20);
    }
}

TEST_CASE("sigma+1 classes are contained in the q+1 class") {
    auto F = FieldCtx::make_field(3, 1, 6);
    auto sq1 = power_class(F, 3, PowerClass::QPlus1);
    for (unsigned J : {1u, 5u}) {
        auto ss = power_class(F, 3, PowerClass::SigmaPlus1, J);
        CHECK(std::includes(sq1.elements.begin(), sq1.elements.end(), ss.elements.begin(), ss.elements.end()));
    }
}

TEST_CASE("classify_m spot cases and exclusivity sweep") {
    {
        // q=5, t=3, m=1: remark says phi_{1,q} scattered for q = 1 mod 4
        auto F = FieldCtx::make_field(5, 1, 6);
        auto c = classify_m(F, 3, 1, F->one());
        CHECK(c.thm23_scattered_guarantee);
        CHECK_FALSE(c.p24_not_scattered_guarantee);
    }
    {
        // q=3, t=3, m=1: in S_{q+1}, and phi_{1,3} is not scattered
        auto F = FieldCtx::make_field(3, 1, 6);
        auto c = classify_m(F, 3, 1, F->one());
        CHECK(c.in_sq_plus1);
        CHECK(c.p24_not_scattered_guarantee);
        CHECK_FALSE(c.thm23_scattered_guarantee);
    }
    {
        // flags mutually exclusive over all m, q=3, t=4
        auto F = FieldCtx::make_field(3, 1, 8);
        for (std::uint64_t idx : F->subfield(4).elements_sorted()) {
            if (idx == 0) continue;
            auto c = classify_m(F, 4, 1, F->from_index(idx));
            CHECK_FALSE((c.thm23_scattered_guarantee && c.p24_not_scattered_guarantee));
            // classification agrees with set membership in the enumerated classes
        }
    }
}

TEST_CASE("classify_m membership agrees with enumerated power classes") {
    auto F = FieldCtx::make_field(3, 1, 6);
    auto s1 = power_class(F, 3, PowerClass::QMinus1);
    auto s2 = power_class(F, 3, PowerClass::QPlus1);
    auto nrm = power_class(F, 3, PowerClass::NormOne);
    for (std::uint64_t idx : F->subfield(3).elements_sorted()) {
        if (idx == 0) continue;
        auto c = classify_m(F, 3, 1, F->from_index(idx));
        CHECK(c.in_sq_minus1 == std::binary_search(s1.elements.begin(), s1.elements.end(), idx));
        CHECK(c.in_sq_plus1 == std::binary_search(s2.elements.begin(), s2.elements.end(), idx));
        CHECK(c.norm_one == std::binary_search(nrm.elements.begin(), nrm.elements.end(), idx));
    }
}

TEST_CASE("witness search") {
    {
        // q=3: union covers all of F_{q^t}^* for t=3 and t=4 -> no witness
        auto F6 = FieldCtx::make_field(3, 1, 6);
        auto w = find_witness_m(F6, 3);
        CHECK_FALSE(w.witness_index.has_value());
        CHECK(w.union_size == w.qt_minus_1);
        CHECK_FALSE(w.bound_conclusive); // (q+3)/(2(q-1)) = 6/4 > 1

        auto F8 = FieldCtx::make_field(3, 1, 8);
        auto w8 = find_witness_m(F8, 4);
        CHECK_FALSE(w8.witness_index.has_value());
        CHECK_FALSE(w8.bound_conclusive); // (3q+1)/(q^2-1) = 10/8 > 1
    }
    {
        // q=7, t=3: bound (q+3)/(2(q-1)) = 10/12 < 1 -> witness exists
        auto F = FieldCtx::make_field(7, 1, 6);
        auto w = find_witness_m(F, 3);
        CHECK(w.bound_conclusive);
        REQUIRE(w.witness_index.has_value());
        auto c = classify_m(F, 3, 1, F->from_index(*w.witness_index));
        CHECK_FALSE(c.in_sq_minus1);
        CHECK_FALSE(c.in_sq_plus1);
        CHECK_FALSE(c.norm_one);
        CHECK(w.union_size < w.qt_minus_1);
    }
}

TEST_CASE("family descriptors parse and normalize") {
    auto F = FieldCtx::make_field(3, 1, 6);
    auto phi_inst = parse_family(F, "phi:t=3,J=1,m=1");
    CHECK(phi_inst.kind == "phi");
    CHECK(phi_inst.poly == phi({F, 3, 1, F->one()}));
    CHECK(phi_inst.canonical == "phi:t=3,J=1,m=1");

    auto pr_inst = parse_family(F, "pr:6,1");
    CHECK(pr_inst.poly == pseudoregulus(F, 1));

    CHECK_THROWS_AS(parse_family(F, "pr:8,1"), parameter_error);
    CHECK_THROWS_AS(parse_family(F, "unknown:1"), parameter_error);
    CHECK_THROWS_AS(parse_family(F, "phi:t=3,J=2,m=1"), parameter_error);
}
