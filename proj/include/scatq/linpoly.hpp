#ifndef SCATQ_LINPOLY_HPP
#define SCATQ_LINPOLY_HPP

#include <string>
#include <vector>

#include "scatq/gf.hpp"

namespace scatq {

// A q-polynomial sum a_i X^(q^i) reduced mod X^(q^n) - X, i.e. an element of
// the algebra L_{n,q} of F_q-linear endomorphisms of F_{q^n}. Coefficients
// live in F_{q^n} and are indexed by q-exponent: c[i] is the coefficient of
// X^(q^i). sigma-monomials X^(sigma^i) with sigma = q^J sit at index i*J mod n.
struct LinPoly {
    FieldPtr ctx;
    std::vector<FieldElem> c; // size n

    bool is_zero() const {
        for (const auto& a : c)
            if (!a.is_zero()) return false;
        return true;
    }
    bool operator==(const LinPoly& rhs) const { return c == rhs.c; }
    // Largest i with c[i] != 0, or -1 for the zero polynomial.
    int q_degree() const;
};

LinPoly lin_zero(FieldPtr ctx);
// c * X^(q^i)
LinPoly lin_monomial(FieldPtr ctx, unsigned i, const FieldElem& coeff);
LinPoly lin_monomial(FieldPtr ctx, unsigned i);
LinPoly lin_x(FieldPtr ctx); // the identity polynomial X

LinPoly lin_add(const LinPoly& f, const LinPoly& g);
LinPoly lin_sub(const LinPoly& f, const LinPoly& g);
// b * f (left scalar multiple: x -> b*f(x))
LinPoly lin_scale(const LinPoly& f, const FieldElem& b);

FieldElem eval(const LinPoly& f, const FieldElem& x);

// f(g(X)) reduced mod X^(q^n) - X via exponent arithmetic mod n.
LinPoly compose_mod(const LinPoly& f, const LinPoly& g);

// Adjoint w.r.t. the trace form: Tr(f(x) y) = Tr(x f^T(y)) for all x, y.
LinPoly adjoint(const LinPoly& f);

// f^(k): coefficients raised to p^k. Its graph is {(x^(p^k), f(x)^(p^k))}.
LinPoly frobenius_twist(const LinPoly& f, unsigned k);

// n x n matrix over F_q in the canonical fq_basis of the context.
struct FqLinearMap {
    FieldPtr ctx;
    unsigned n = 0;
    std::vector<FieldElem> a; // row-major, entries in the F_q subfield

    FieldElem& at(unsigned i, unsigned j) { return a[std::size_t(i) * n + j]; }
    const FieldElem& at(unsigned i, unsigned j) const { return a[std::size_t(i) * n + j]; }
    unsigned rank() const; // Gaussian elimination with field arithmetic
};

FqLinearMap to_matrix(const LinPoly& f);

// f as an F_p-linear map on digit vectors (deg x deg matrix over F_p).
FpMat fp_matrix(const LinPoly& f);

// dim_{F_q} ker f and rank over F_q; computed over F_p and divided by eps.
unsigned kernel_dim(const LinPoly& f);
unsigned image_dim(const LinPoly& f);

// "q-poly n=<n> [i:elem_index, ...]": nonzero coefficients by q-exponent.
std::string to_string(const LinPoly& f);
LinPoly parse_linpoly(FieldPtr ctx, const std::string& s);

} // namespace scatq

#endif
