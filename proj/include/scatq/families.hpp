#ifndef SCATQ_FAMILIES_HPP
#define SCATQ_FAMILIES_HPP

#include <optional>
#include <string>
#include <vector>

#include "scatq/linpoly.hpp"

namespace scatq {

// Parameters of phi_{m,sigma} = X^(sigma^(t-1)) + X^(sigma^(2t-1)) + m(X^sigma - X^(sigma^(t+1)))
// in F_{q^(2t)}[X], sigma = q^J.
struct PhiParams {
    FieldPtr ctx; // must satisfy ctx->n() == 2t
    unsigned t = 0;
    unsigned J = 1;
    FieldElem m;
};

// Throws parameter_error naming the violated condition (t >= 3, gcd(J,2t)=1,
// m in F_{q^t}^*).
void validate_phi_params(const PhiParams& p);

LinPoly phi(const PhiParams& p);
LinPoly alpha_poly(FieldPtr ctx, unsigned t, unsigned J);                       // X^(s^(t-1)) + X^(s^(2t-1))
LinPoly beta_poly(FieldPtr ctx, unsigned t, unsigned J, const FieldElem& m);    // m(X^s - X^(s^(t+1)))

// Family (i): X^(q^s), gcd(s, n) = 1.
LinPoly pseudoregulus(FieldPtr ctx, unsigned s);

// Family (ii): X^(q^(n-s)) + delta X^(q^s), gcd(s, n) = 1, N_{q^n/q}(delta) not in {0,1}.
LinPoly lunardon_polverino(FieldPtr ctx, unsigned s, const FieldElem& delta);

// Family (iii): psi_{s,h}, q odd, gcd(s,2t) = 1, h^(q^t+1) = -1.
struct PsiPoly {
    LinPoly poly;
    bool h_in_fqt = false; // sub-family (iii-a) when true, else (iii-b)
};
PsiPoly quadrinomial_psi(FieldPtr ctx, unsigned t, unsigned s, const FieldElem& h);

// phi_mu = X^q + X^(q^(t+1)) + mu(X^(q^(2t-1)) - X^(q^(t-1))), mu in F_{q^t}^*.
// Satisfies adjoint(phi_{m,q}) = phi_adjoint_form(t, m^(q^(t-1))).
LinPoly phi_adjoint_form(FieldPtr ctx, unsigned t, const FieldElem& mu);

// ---------------------------------------------------------------------------
// W = {x in F_{q^(2t)} : x^(q^t) + x = 0}, the F_{q^t}-line complementary to F_{q^t}.
class WSubspace {
public:
    WSubspace(FieldPtr ctx, unsigned t);
    const std::vector<FieldElem>& basis() const { return basis_; } // F_p-basis, eps*t vectors
    bool contains(const FieldElem& x) const;
    std::uint64_t cardinality() const;
    const std::vector<std::uint64_t>& elements_sorted() const;

private:
    FieldPtr ctx_;
    unsigned t_;
    std::vector<FieldElem> basis_;
    std::vector<std::uint64_t> sorted_;
};

// ---------------------------------------------------------------------------
// Power classes of Prop. 2.5 / Prop. 3.1 and the norm-one set T.

enum class PowerClass { QMinus1, QPlus1, SigmaPlus1, NormOne };

std::string to_string(PowerClass c);

struct PowerClassReport {
    PowerClass label;
    unsigned J = 1;                       // only meaningful for SigmaPlus1
    std::uint64_t power = 0;              // the exponent D (0 for NormOne)
    std::uint64_t equation_exponent = 0;  // N in x^N = rhs
    int equation_rhs = 1;                 // +1 or -1
    std::vector<std::uint64_t> elements;  // sorted canonical indices
    std::uint64_t cardinality = 0;
};

// Computes the class both by direct enumeration over W^* (or F_{q^t}^* for
// NormOne) and by the defining equation; throws selfcheck_error if the two
// routes disagree.
PowerClassReport power_class(FieldPtr ctx, unsigned t, PowerClass label, unsigned J = 1);

struct MClassification {
    bool in_sq_minus1 = false;
    bool in_sq_plus1 = false;
    bool in_s_sigma_plus1 = false;
    bool norm_one = false;
    bool thm23_scattered_guarantee = false;  // m outside S_{q-1} and S_{q+1}
    bool p24_not_scattered_guarantee = false; // m a (sigma+1)-power of a W element
};

// Pointwise membership tests via the defining equations (no enumeration).
MClassification classify_m(FieldPtr ctx, unsigned t, unsigned J, const FieldElem& m);

// ---------------------------------------------------------------------------
// Witness search for the main counting argument (sigma = q).

struct WitnessReport {
    std::optional<std::uint64_t> witness_index; // index-smallest m outside the union
    std::uint64_t union_size = 0;               // |S_{q-1} u S_{q+1} u T| exactly
    std::uint64_t qt_minus_1 = 0;
    std::uint64_t s_qminus1_size = 0, s_qplus1_size = 0, norm_one_size = 0;
    // The paper's union bound, compared exactly: bound_num/bound_den * (q^t-1).
    std::uint64_t bound_num = 0, bound_den = 0;
    bool bound_conclusive = false; // bound < q^t - 1
};

WitnessReport find_witness_m(FieldPtr ctx, unsigned t);

// ---------------------------------------------------------------------------
// CLI-facing family descriptors:
//   phi:t=<t>,J=<J>,m=<idx>   pr:<n>,<s>   lp:<n>,<s>,delta=<idx>
//   psi:<t>,<s>,h=<idx>       phiT:<t>,mu=<idx>
struct FamilyInstance {
    LinPoly poly;
    std::string kind;        // phi | pr | lp | psi | phiT
    std::string canonical;   // normalized descriptor
};
FamilyInstance parse_family(FieldPtr ctx, const std::string& descriptor);

} // namespace scatq

#endif
