#include "doctest.h"

#include "scatq/linpoly.hpp"
#include "test_util.hpp"

using namespace scatq;
using testutil::Lcg;

namespace {

LinPoly random_poly(FieldPtr ctx, Lcg& rng, int max_terms = 4) {
    LinPoly f = lin_zero(ctx);
    int terms = 1 + int(rng.below(std::uint64_t(max_terms)));
    for (int i = 0; i < terms; ++i)
        f.c[rng.below(ctx->n())] = testutil::random_elem(*ctx, rng);
    if (f.is_zero()) f.c[0] = ctx->one();
    return f;
}

// phi_{m,q} with t=3, J=1 built by hand from its exponent pattern; the
// families module is deliberately not used here.
LinPoly phi_by_hand(FieldPtr ctx, const FieldElem& m) {
    unsigned t = ctx->n() / 2;
    LinPoly f = lin_zero(ctx);
    f.c[t - 1] = ctx->one();
    f.c[2 * t - 1] = ctx->one();
    f.c[1] = ctx->add(f.c[1], m);
    f.c[t + 1] = ctx->sub(f.c[t + 1], m);
    return f;
}

} // namespace

TEST_CASE("eval of identity and subfield-fixing monomials") {
    auto F = FieldCtx::make_field(3, 1, 6);
    Lcg rng;
    LinPoly X = lin_x(F);
    LinPoly Xq3 = lin_monomial(F, 3);
    auto fq3 = F->subfield(3);
    for (int i = 0; i < 30; ++i) {
        FieldElem x = testutil::random_elem(*F, rng);
        CHECK(eval(X, x) == x);
    }
    for (std::uint64_t idx : fq3.elements_sorted())
        CHECK(eval(Xq3, F->from_index(idx)) == F->from_index(idx));
}

TEST_CASE("image of alpha lies in F_{q^t}") {
    auto F = FieldCtx::make_field(3, 1, 6);
    unsigned t = 3;
    LinPoly alpha = lin_add(lin_monomial(F, t - 1), lin_monomial(F, 2 * t - 1));
    auto fqt = F->subfield(t);
    Lcg rng;
    for (int i = 0; i < 50; ++i)
        CHECK(fqt.contains(eval(alpha, testutil::random_elem(*F, rng))));
}

TEST_CASE("compose_mod identities and pointwise oracle") {
    auto F = FieldCtx::make_field(3, 1, 6);
    unsigned n = 6;
    Lcg rng(3);

    LinPoly X = lin_x(F);
    LinPoly f = random_poly(F, rng);
    CHECK(compose_mod(f, X) == f);
    CHECK(compose_mod(X, f) == f);
    CHECK(compose_mod(lin_monomial(F, 1), lin_monomial(F, n - 1)) == X);

    // exhaustive pointwise agreement for phi composed with aX
    FieldElem m = F->from_index(5);
    while (!F->subfield(3).contains(m) || m.is_zero()) m = testutil::random_elem(*F, rng);
    LinPoly phi = phi_by_hand(F, m);
    FieldElem a = testutil::random_nonzero(*F, rng);
    LinPoly ax = lin_monomial(F, 0, a);
    LinPoly comp = compose_mod(phi, ax);
    for (std::uint64_t i = 0; i < F->card(); ++i) {
        FieldElem x = F->from_index(i);
        CHECK(eval(comp, x) == eval(phi, eval(ax, x)));
    }

    // associativity on random triples
    for (int i = 0; i < 10; ++i) {
        LinPoly u = random_poly(F, rng), v = random_poly(F, rng), w = random_poly(F, rng);
        CHECK(compose_mod(compose_mod(u, v), w) == compose_mod(u, compose_mod(v, w)));
    }
}

TEST_CASE("adjoint: monomials, involution, trace identity") {
    auto F = FieldCtx::make_field(3, 1, 6);
    unsigned n = 6;
    Lcg rng(9);

    for (unsigned s = 1; s < n; ++s) {
        LinPoly adj = adjoint(lin_monomial(F, s));
        CHECK(adj == lin_monomial(F, n - s));
    }

    for (int trial = 0; trial < 10; ++trial) {
        LinPoly f = random_poly(F, rng);
        CHECK(adjoint(adjoint(f)) == f);
        LinPoly ft = adjoint(f);
        for (int i = 0; i < 100; ++i) {
            FieldElem x = testutil::random_elem(*F, rng);
            FieldElem y = testutil::random_elem(*F, rng);
            FieldElem lhs = F->rel_trace(F->mul(eval(f, x), y), F->deg(), F->eps());
            FieldElem rhs = F->rel_trace(F->mul(x, eval(ft, y)), F->deg(), F->eps());
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("adjoint of phi has the phi_mu pattern") {
    // phi_{m,q}^T = X^q + X^(q^(t+1)) + mu (X^(q^(2t-1)) - X^(q^(t-1))), mu = m^(q^(t-1))
    auto F = FieldCtx::make_field(3, 1, 6);
    unsigned t = 3, n = 6;
    auto fqt = F->subfield(t);
    for (std::uint64_t idx : fqt.elements_sorted()) {
        FieldElem m = F->from_index(idx);
        if (m.is_zero()) continue;
        LinPoly ft = adjoint(phi_by_hand(F, m));
        FieldElem mu = F->frobenius_q(m, t - 1);
        LinPoly expect = lin_zero(F);
        expect.c[1] = F->one();
        expect.c[t + 1] = F->one();
        expect.c[2 * t - 1] = mu;
        expect.c[t - 1] = F->neg(mu);
        CHECK(ft == expect);
        (void)n;
    }
}

TEST_CASE("kernel and image dimensions") {
    auto F = FieldCtx::make_field(3, 1, 6);
    unsigned t = 3;
    CHECK(kernel_dim(lin_x(F)) == 0);
    CHECK(image_dim(lin_x(F)) == 6);

    LinPoly alpha = lin_add(lin_monomial(F, t - 1), lin_monomial(F, 2 * t - 1));
    CHECK(kernel_dim(alpha) == t);
    CHECK(image_dim(alpha) == t);

    // Gordon-Quistorff: kernel_dim <= q-degree for nonzero f
    Lcg rng(17);
    for (int i = 0; i < 30; ++i) {
        LinPoly f = random_poly(F, rng);
        CHECK(kernel_dim(f) <= unsigned(f.q_degree() < 0 ? 6 : f.q_degree()));
        CHECK(kernel_dim(f) + image_dim(f) == 6);
    }
}

TEST_CASE("to_matrix represents evaluation; F_q rank matches F_p rank / eps") {
    for (auto [p, eps, n] : {std::tuple{3u, 1u, 6u}, {3u, 2u, 3u}}) {
        auto F = FieldCtx::make_field(p, eps, n);
        Lcg rng(21);
        for (int trial = 0; trial < 8; ++trial) {
            LinPoly f = random_poly(F, rng);
            FqLinearMap m = to_matrix(f);
            // matrix applied to coordinates of basis vectors equals coordinates of f(basis)
            const auto& B = F->fq_basis();
            for (unsigned j = 0; j < n; ++j) {
                auto coords = F->fq_coords(eval(f, B[j]));
                for (unsigned i = 0; i < n; ++i) CHECK(m.at(i, j) == coords[i]);
            }
            unsigned fq_rank = m.rank();
            unsigned fp_rank = fp_matrix(f).rank();
            CHECK(fp_rank == fq_rank * eps);
        }
    }
}

TEST_CASE("frobenius_twist and graph twisting") {
    auto F = FieldCtx::make_field(3, 1, 6);
    Lcg rng(31);
    LinPoly f = random_poly(F, rng);
    CHECK(frobenius_twist(f, 0) == f);

    // {(x^p, f(x)^p)} equals the graph of f^(1), exhaustively
    LinPoly f1 = frobenius_twist(f, 1);
    for (std::uint64_t i = 0; i < F->card(); ++i) {
        FieldElem x = F->from_index(i);
        FieldElem xp = F->frobenius(x, 1);
        CHECK(eval(f1, xp) == F->frobenius(eval(f, x), 1));
    }
}

TEST_CASE("serialization round trip") {
    auto F = FieldCtx::make_field(3, 1, 6);
    Lcg rng(41);
    for (int i = 0; i < 20; ++i) {
        LinPoly f = random_poly(F, rng);
        CHECK(parse_linpoly(F, to_string(f)) == f);
    }
    CHECK(to_string(lin_x(F)) == "q-poly n=6 [0:1]");
    CHECK_THROWS_AS(parse_linpoly(F, "nonsense"), parameter_error);
}
