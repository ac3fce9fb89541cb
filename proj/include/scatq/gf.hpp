#ifndef SCATQ_GF_HPP
#define SCATQ_GF_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scatq/errors.hpp"

namespace scatq {

// Upper bound on eps*n. Digit-wise byte arithmetic assumes p <= 13 so that
// sums and small scalar products of digits stay below 256 without carries.
inline constexpr unsigned kMaxDeg = 16;
inline constexpr unsigned kMaxChar = 13;

// Element of GF(p^deg), stored as F_p coordinates in the polynomial basis
// {1, X, ..., X^(deg-1)} of F_p[X]/(modulus). d[i] is the coefficient of X^i;
// entries at positions >= deg are zero.
struct FieldElem {
    std::array<std::uint8_t, kMaxDeg> d{};

    bool operator==(const FieldElem&) const = default;
    bool is_zero() const {
        for (auto c : d)
            if (c) return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// Dense matrices over the prime field F_p.

struct FpMat {
    unsigned rows = 0, cols = 0;
    unsigned p = 0;
    std::vector<std::uint8_t> a; // row-major

    FpMat() = default;
    FpMat(unsigned r, unsigned c, unsigned prime) : rows(r), cols(c), p(prime), a(std::size_t(r) * c, 0) {}

    std::uint8_t& at(unsigned i, unsigned j) { return a[std::size_t(i) * cols + j]; }
    std::uint8_t at(unsigned i, unsigned j) const { return a[std::size_t(i) * cols + j]; }

    static FpMat identity(unsigned n, unsigned prime);
    FpMat operator*(const FpMat& rhs) const;
    FpMat operator+(const FpMat& rhs) const;
    FpMat operator-(const FpMat& rhs) const;

    // Reduced row echelon form in place; returns rank. Pivoting is fixed
    // (first nonzero row per column, columns left to right) so results are
    // deterministic.
    unsigned rref();
    unsigned rank() const;
};

// F_p-basis of the kernel {x : M x = 0}. Basis vectors are produced in a
// canonical order: one per free column, free columns ascending, with a 1 in
// the free coordinate.
std::vector<std::vector<std::uint8_t>> solve_fp_nullspace(const FpMat& m);

class FieldCtx;

// Subfield F_{p^m} inside the ambient field, represented as the fixed points
// of x -> x^(p^m): a membership predicate plus an enumerated F_p-basis.
class SubfieldHandle {
public:
    unsigned degree() const { return m_; }
    std::uint64_t cardinality() const;
    const std::vector<FieldElem>& basis() const { return basis_; }
    bool contains(const FieldElem& x) const;
    // All subfield elements sorted by canonical index (materialized lazily).
    const std::vector<std::uint64_t>& elements_sorted() const;

private:
    friend class FieldCtx;
    const FieldCtx* ctx_ = nullptr;
    unsigned m_ = 0;
    std::vector<FieldElem> basis_;
    mutable std::vector<std::uint64_t> sorted_; // cache
};

struct FieldOptions {
    // Fields with at most this many elements get exp/log tables for O(1)
    // multiplicative arithmetic. Larger fields fall back to polynomial
    // arithmetic throughout.
    std::uint64_t table_budget = std::uint64_t(1) << 23;
};

// ---------------------------------------------------------------------------
// The ambient tower F_p < F_q < F_{q^t} < F_{q^n}, q = p^eps.
//
// Immutable after construction; all operations are pure and safe to share
// across threads.

class FieldCtx {
public:
    // Builds GF(p^(eps*n)) over the lexicographically smallest monic
    // irreducible modulus (coefficients compared low-degree-first).
    // Deterministic: repeated runs give bit-identical fields.
    static std::shared_ptr<const FieldCtx> make_field(unsigned p, unsigned eps, unsigned n,
                                                      FieldOptions opts = {});

    unsigned p() const { return p_; }
    unsigned eps() const { return eps_; }
    unsigned n() const { return n_; }             // degree over F_q
    unsigned deg() const { return deg_; }         // eps*n, degree over F_p
    std::uint64_t q() const { return q_; }        // p^eps
    std::uint64_t card() const { return card_; }  // p^deg
    std::uint64_t mult_order() const { return card_ - 1; }
    bool has_tables() const { return !exp_.empty(); }

    const std::vector<std::uint8_t>& modulus() const { return modulus_; }
    // "p^eps^n:c0,c1,...,cd" with modulus coefficients low-degree-first.
    std::string descriptor() const;

    // -- element encoding ----------------------------------------------------
    FieldElem zero() const { return {}; }
    FieldElem one() const;
    FieldElem from_int(std::uint64_t v) const; // v mod p as a constant
    std::uint64_t index(const FieldElem& x) const;
    FieldElem from_index(std::uint64_t idx) const;
    const FieldElem& generator() const { return gen_; }
    const std::vector<std::uint64_t>& mult_order_prime_factors() const { return order_primes_; }

    // -- arithmetic ----------------------------------------------------------
    FieldElem add(const FieldElem& x, const FieldElem& y) const;
    FieldElem sub(const FieldElem& x, const FieldElem& y) const;
    FieldElem neg(const FieldElem& x) const;
    FieldElem mul(const FieldElem& x, const FieldElem& y) const;
    FieldElem inv(const FieldElem& x) const; // throws parameter_error on zero
    FieldElem pow(const FieldElem& x, std::uint64_t e) const;
    FieldElem scale(const FieldElem& x, std::uint8_t c) const; // c in F_p

    // x^(p^k), 0 <= k < deg, applied via the precomputed F_p-matrix.
    FieldElem frobenius(const FieldElem& x, unsigned k) const;
    // x^(q^i) = x^(p^(eps*i)).
    FieldElem frobenius_q(const FieldElem& x, unsigned i) const;
    const FpMat& frobenius_matrix(unsigned k) const { return frob_mats_[k % deg_]; }

    // Discrete log w.r.t. the canonical generator; table mode only.
    std::uint32_t log(const FieldElem& x) const;
    const FieldElem& exp(std::uint64_t e) const; // e reduced mod card-1 by caller

    // -- subfields, norm, trace ----------------------------------------------
    SubfieldHandle subfield(unsigned m) const; // m | deg
    // Relative norm/trace from F_{p^m1} down to F_{p^m2}; m2 | m1 | deg.
    FieldElem rel_norm(const FieldElem& x, unsigned m1, unsigned m2) const;
    FieldElem rel_trace(const FieldElem& x, unsigned m1, unsigned m2) const;

    // -- F_p linear algebra hooks ---------------------------------------------
    // Matrix of multiplication by a (x -> a*x) in the polynomial basis.
    FpMat mul_matrix(const FieldElem& a) const;
    FieldElem apply_fp_matrix(const FpMat& m, const FieldElem& x) const;

    // Canonical F_q-basis of the field, used for all matrix forms over F_q:
    // row-echelonized powers of the canonical generator.
    const std::vector<FieldElem>& fq_basis() const { return fq_basis_; }
    // F_q-coordinates of x w.r.t. fq_basis(); entries lie in the F_q subfield.
    std::vector<FieldElem> fq_coords(const FieldElem& x) const;

private:
    FieldCtx() = default;

    unsigned p_ = 0, eps_ = 0, n_ = 0, deg_ = 0;
    std::uint64_t q_ = 0, card_ = 0;
    std::vector<std::uint8_t> modulus_;       // deg+1 coefficients, monic
    std::vector<FpMat> frob_mats_;            // k = 0..deg-1
    std::vector<std::vector<std::uint8_t>> red_; // X^(deg+i) mod modulus, i = 0..deg-2
    FieldElem gen_;
    std::vector<std::uint64_t> order_primes_;
    std::vector<FieldElem> exp_;              // size card-1 when tables enabled
    std::vector<std::uint32_t> log_;          // size card, log_[0] = sentinel
    std::vector<FieldElem> fq_basis_;         // n elements
    FpMat fq_coord_solver_;                   // inverse of the (u_k * B_j) matrix
    std::vector<FieldElem> fq_sub_basis_;     // F_p-basis of F_q

    FieldElem mul_generic(const FieldElem& x, const FieldElem& y) const;
    void build_tables();
    void build_fq_basis();
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

// Table of f(c * X^r) for an F_p-linear map f, giving O(deg) evaluation by
// digit-wise lookup. The workhorse of the exhaustive sweeps.
class LinearMapTable {
public:
    LinearMapTable() = default;
    LinearMapTable(const FieldCtx& ctx, const std::function<FieldElem(const FieldElem&)>& f);
    FieldElem apply(const FieldCtx& ctx, const FieldElem& x) const;

private:
    unsigned deg_ = 0, p_ = 0;
    std::vector<FieldElem> tab_; // tab_[r*p + c] = f(c * X^r)
};

// Deterministic helpers shared by several modules.
std::vector<std::uint64_t> prime_factors_u64(std::uint64_t v);
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t mod);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t e, std::uint64_t mod);

} // namespace scatq

#endif
