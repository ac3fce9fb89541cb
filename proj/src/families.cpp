#include "scatq/families.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace scatq {

namespace {

std::uint64_t u64_pow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
}

// smallest e >= 0 with a*e = b (mod m), or nullopt
std::optional<std::uint64_t> solve_linear_congruence(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t g = std::gcd(a, m);
    if (b % g != 0) return std::nullopt;
    std::uint64_t m2 = m / g, a2 = (a / g) % m2, b2 = (b / g) % m2;
    // inverse of a2 mod m2 via extended Euclid
    std::int64_t t0 = 0, t1 = 1;
    std::uint64_t r0 = m2, r1 = a2;
    while (r1 != 0) {
        std::uint64_t qq = r0 / r1;
        std::uint64_t r2 = r0 - qq * r1;
        std::int64_t t2 = t0 - std::int64_t(qq) * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) return std::nullopt; // gcd(a2, m2) must be 1
    std::uint64_t inv = std::uint64_t((t0 % std::int64_t(m2) + std::int64_t(m2)) % std::int64_t(m2));
    if (m2 == 0) return std::nullopt;
    return mulmod_u64(b2, inv, m2);
}

void require_phi_field(const FieldCtx& F, unsigned t, const char* who) {
    if (t < 3) throw parameter_error(std::string(who) + ": t >= 3 required");
    if (F.n() != 2 * t) throw parameter_error(std::string(who) + ": field degree over F_q must be n = 2t");
}

} // namespace

void validate_phi_params(const PhiParams& p) {
    const FieldCtx& F = *p.ctx;
    require_phi_field(F, p.t, "phi");
    if (std::gcd<std::uint64_t>(p.J, 2 * p.t) != 1)
        throw parameter_error("phi: J must be coprime to 2t");
    if (p.m.is_zero()) throw parameter_error("phi: m must be nonzero");
    if (!F.subfield(F.eps() * p.t).contains(p.m))
        throw parameter_error("phi: m must lie in F_{q^t}");
}

LinPoly alpha_poly(FieldPtr ctx, unsigned t, unsigned J) {
    require_phi_field(*ctx, t, "alpha");
    if (std::gcd<std::uint64_t>(J, 2 * t) != 1) throw parameter_error("alpha: J must be coprime to 2t");
    unsigned n = 2 * t;
    LinPoly f = lin_zero(ctx);
    f.c[std::uint64_t(J) * (t - 1) % n] = ctx->one();
    f.c[std::uint64_t(J) * (2 * t - 1) % n] = ctx->one();
    return f;
}

LinPoly beta_poly(FieldPtr ctx, unsigned t, unsigned J, const FieldElem& m) {
    PhiParams p{ctx, t, J, m};
    validate_phi_params(p);
    unsigned n = 2 * t;
    LinPoly f = lin_zero(ctx);
    f.c[J % n] = m;
    f.c[std::uint64_t(J) * (t + 1) % n] = ctx->neg(m);
    return f;
}

LinPoly phi(const PhiParams& p) {
    validate_phi_params(p);
    return lin_add(alpha_poly(p.ctx, p.t, p.J), beta_poly(p.ctx, p.t, p.J, p.m));
}

LinPoly pseudoregulus(FieldPtr ctx, unsigned s) {
    unsigned n = ctx->n();
    if (s == 0 || std::gcd<std::uint64_t>(s, n) != 1)
        throw parameter_error("pseudoregulus: gcd(s, n) = 1 required");
    return lin_monomial(ctx, s % n);
}

LinPoly lunardon_polverino(FieldPtr ctx, unsigned s, const FieldElem& delta) {
    unsigned n = ctx->n();
    if (s == 0 || std::gcd<std::uint64_t>(s, n) != 1)
        throw parameter_error("lunardon_polverino: gcd(s, n) = 1 required");
    FieldElem nrm = ctx->rel_norm(delta, ctx->deg(), ctx->eps());
    if (nrm.is_zero() || nrm == ctx->one())
        throw parameter_error("lunardon_polverino: N_{q^n/q}(delta) must differ from 0 and 1");
    LinPoly f = lin_zero(ctx);
    f.c[(n - s) % n] = ctx->one();
    f.c[s % n] = ctx->add(f.c[s % n], delta);
    return f;
}

PsiPoly quadrinomial_psi(FieldPtr ctx, unsigned t, unsigned s, const FieldElem& h) {
    const FieldCtx& F = *ctx;
    require_phi_field(F, t, "psi");
    unsigned n = 2 * t;
    if (s == 0 || std::gcd<std::uint64_t>(s, n) != 1)
        throw parameter_error("psi: gcd(s, 2t) = 1 required");
    // h^(q^t + 1) = -1
    if (!(F.mul(F.frobenius_q(h, t), h) == F.neg(F.one())))
        throw parameter_error("psi: h^(q^t+1) = -1 required");
    LinPoly f = lin_zero(ctx);
    auto e = [&](std::uint64_t k) { return unsigned(std::uint64_t(s) * k % n); };
    f.c[e(1)] = F.one();
    f.c[e(t - 1)] = F.one();
    f.c[e(t + 1)] = F.mul(h, F.frobenius_q(h, s % n));                        // h^(1+q^s)
    f.c[e(2 * t - 1)] = F.mul(h, F.inv(F.frobenius_q(h, e(2 * t - 1))));      // h^(1-q^(s(2t-1)))
    PsiPoly out;
    out.poly = std::move(f);
    out.h_in_fqt = F.subfield(F.eps() * t).contains(h);
    return out;
}

LinPoly phi_adjoint_form(FieldPtr ctx, unsigned t, const FieldElem& mu) {
    const FieldCtx& F = *ctx;
    require_phi_field(F, t, "phi_adjoint_form");
    if (mu.is_zero()) throw parameter_error("phi_adjoint_form: mu must be nonzero");
    if (!F.subfield(F.eps() * t).contains(mu))
        throw parameter_error("phi_adjoint_form: mu must lie in F_{q^t}");
    unsigned n = 2 * t;
    LinPoly f = lin_zero(ctx);
    f.c[1] = F.one();
    f.c[(t + 1) % n] = F.one();
    f.c[(2 * t - 1) % n] = mu;
    f.c[(t - 1) % n] = F.neg(mu);
    return f;
}

// ---------------------------------------------------------------------------

WSubspace::WSubspace(FieldPtr ctx, unsigned t) : ctx_(std::move(ctx)), t_(t) {
    const FieldCtx& F = *ctx_;
    require_phi_field(F, t, "WSubspace");
    unsigned d = F.deg();
    FpMat m = F.frobenius_matrix(F.eps() * t % d) + FpMat::identity(d, F.p());
    auto kb = solve_fp_nullspace(m);
    if (kb.size() != std::size_t(F.eps()) * t)
        throw selfcheck_error("WSubspace: kernel dimension != eps*t");
    for (auto& v : kb) {
        FieldElem e;
        for (unsigned i = 0; i < d; ++i) e.d[i] = v[i];
        basis_.push_back(e);
    }
}

bool WSubspace::contains(const FieldElem& x) const {
    const FieldCtx& F = *ctx_;
    return F.add(F.frobenius_q(x, t_), x).is_zero();
}

std::uint64_t WSubspace::cardinality() const {
    return u64_pow(ctx_->p(), unsigned(basis_.size()));
}

const std::vector<std::uint64_t>& WSubspace::elements_sorted() const {
    auto* self = const_cast<WSubspace*>(this);
    if (!sorted_.empty()) return sorted_;
    std::uint64_t c = cardinality();
    if (c > (std::uint64_t(1) << 22))
        throw resource_error("WSubspace enumeration beyond budget");
    const FieldCtx& F = *ctx_;
    self->sorted_.reserve(c);
    std::vector<std::uint8_t> digits(basis_.size(), 0);
    FieldElem cur;
    for (std::uint64_t i = 0;; ++i) {
        self->sorted_.push_back(F.index(cur));
        if (i + 1 == c) break;
        unsigned pos = 0;
        while (true) {
            cur = F.add(cur, basis_[pos]);
            digits[pos] = std::uint8_t((digits[pos] + 1) % F.p());
            if (digits[pos] != 0) break;
            ++pos;
        }
    }
    std::sort(self->sorted_.begin(), self->sorted_.end());
    return sorted_;
}

// ---------------------------------------------------------------------------

std::string to_string(PowerClass c) {
    switch (c) {
        case PowerClass::QMinus1: return "q-1";
        case PowerClass::QPlus1: return "q+1";
        case PowerClass::SigmaPlus1: return "sigma+1";
        case PowerClass::NormOne: return "norm-one";
    }
    return "?";
}

namespace {

// Defining equation of S_D (proof of Prop. 2.5): x^((q^t-1)/delta) = (-1)^(D/delta),
// delta = gcd(D, q^t-1).
struct ClassEquation {
    std::uint64_t exponent;
    int rhs; // +1 or -1
};

ClassEquation class_equation(std::uint64_t D, std::uint64_t qt1) {
    std::uint64_t delta = std::gcd(D, qt1);
    ClassEquation eq;
    eq.exponent = qt1 / delta;
    eq.rhs = (D / delta) % 2 == 0 ? 1 : -1;
    return eq;
}

// All x in F_{q^n}^* with x^N = rhs (+1/-1), via the cyclic structure of the
// multiplicative group: the solution set is a coset of the subgroup of order
// gcd(N, q^n-1). Works with or without discrete-log tables.
std::vector<std::uint64_t> equation_solutions(const FieldCtx& F, std::uint64_t N, int rhs) {
    std::uint64_t M = F.mult_order();
    std::uint64_t d = std::gcd(N, M);
    std::uint64_t target = rhs == 1 ? 0 : M / 2; // log(-1) = M/2, q odd
    auto e0 = solve_linear_congruence(N % M, target, M);
    if (!e0) return {};
    const FieldElem g = F.generator();
    FieldElem x0 = F.pow(g, *e0);
    FieldElem step = F.pow(g, M / d);
    std::vector<std::uint64_t> out;
    out.reserve(d);
    FieldElem cur = x0;
    for (std::uint64_t i = 0; i < d; ++i) {
        out.push_back(F.index(cur));
        cur = F.mul(cur, step);
    }
    if (!(cur == x0)) throw selfcheck_error("equation_solutions: subgroup walk did not close");
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

PowerClassReport power_class(FieldPtr ctx, unsigned t, PowerClass label, unsigned J) {
    const FieldCtx& F = *ctx;
    require_phi_field(F, t, "power_class");
    std::uint64_t q = F.q();
    std::uint64_t qt1 = u64_pow(q, t) - 1;

    PowerClassReport rep;
    rep.label = label;
    rep.J = J;

    std::vector<std::uint64_t> enumerated;
    if (label == PowerClass::NormOne) {
        rep.power = 0;
        rep.equation_exponent = qt1 / (q - 1);
        rep.equation_rhs = 1;
        auto fqt = F.subfield(F.eps() * t);
        for (std::uint64_t idx : fqt.elements_sorted()) {
            if (idx == 0) continue;
            FieldElem x = F.from_index(idx);
            if (F.rel_norm(x, F.eps() * t, F.eps()) == F.one()) enumerated.push_back(idx);
        }
    } else {
        std::uint64_t D;
        switch (label) {
            case PowerClass::QMinus1: D = q - 1; break;
            case PowerClass::QPlus1: D = q + 1; break;
            default: {
                if (std::gcd<std::uint64_t>(J, 2 * t) != 1)
                    throw parameter_error("power_class: J must be coprime to 2t");
                D = u64_pow(q, J) + 1;
            }
        }
        rep.power = D;
        ClassEquation eq = class_equation(D, qt1);
        rep.equation_exponent = eq.exponent;
        rep.equation_rhs = eq.rhs;
        WSubspace W(ctx, t);
        for (std::uint64_t widx : W.elements_sorted()) {
            if (widx == 0) continue;
            enumerated.push_back(F.index(F.pow(F.from_index(widx), D)));
        }
        std::sort(enumerated.begin(), enumerated.end());
        enumerated.erase(std::unique(enumerated.begin(), enumerated.end()), enumerated.end());
    }

    auto by_equation = equation_solutions(F, rep.equation_exponent, rep.equation_rhs);
    if (by_equation != enumerated)
        throw selfcheck_error("power_class " + to_string(label) +
                              ": enumeration and defining equation disagree (" +
                              std::to_string(enumerated.size()) + " vs " +
                              std::to_string(by_equation.size()) + " elements)");
    rep.elements = std::move(enumerated);
    rep.cardinality = rep.elements.size();
    return rep;
}

MClassification classify_m(FieldPtr ctx, unsigned t, unsigned J, const FieldElem& m) {
    const FieldCtx& F = *ctx;
    PhiParams p{ctx, t, J, m};
    validate_phi_params(p);
    std::uint64_t q = F.q();
    std::uint64_t qt1 = u64_pow(q, t) - 1;

    FieldElem minus_one = F.neg(F.one());
    auto in_class = [&](std::uint64_t D) {
        ClassEquation eq = class_equation(D, qt1);
        FieldElem v = F.pow(m, eq.exponent);
        return eq.rhs == 1 ? v == F.one() : v == minus_one;
    };

    MClassification c;
    c.in_sq_minus1 = in_class(q - 1);
    c.in_sq_plus1 = in_class(q + 1);
    c.in_s_sigma_plus1 = in_class(u64_pow(q, J) + 1);
    c.norm_one = F.rel_norm(m, F.eps() * t, F.eps()) == F.one();
    c.thm23_scattered_guarantee = !c.in_sq_minus1 && !c.in_sq_plus1;
    c.p24_not_scattered_guarantee = c.in_s_sigma_plus1;
    return c;
}

WitnessReport find_witness_m(FieldPtr ctx, unsigned t) {
    const FieldCtx& F = *ctx;
    require_phi_field(F, t, "find_witness_m");
    std::uint64_t q = F.q();
    WitnessReport rep;
    rep.qt_minus_1 = u64_pow(q, t) - 1;

    auto s1 = power_class(ctx, t, PowerClass::QMinus1);
    auto s2 = power_class(ctx, t, PowerClass::QPlus1);
    auto tt = power_class(ctx, t, PowerClass::NormOne);
    rep.s_qminus1_size = s1.cardinality;
    rep.s_qplus1_size = s2.cardinality;
    rep.norm_one_size = tt.cardinality;

    std::vector<std::uint64_t> uni;
    uni.reserve(s1.elements.size() + s2.elements.size() + tt.elements.size());
    uni.insert(uni.end(), s1.elements.begin(), s1.elements.end());
    uni.insert(uni.end(), s2.elements.begin(), s2.elements.end());
    uni.insert(uni.end(), tt.elements.begin(), tt.elements.end());
    std::sort(uni.begin(), uni.end());
    uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
    rep.union_size = uni.size();

    // Paper bound: t even: (q^t-1)(3q+1)/(q^2-1); t odd: (q^t-1)(q+3)/(2(q-1)).
    if (t % 2 == 0) {
        rep.bound_num = 3 * q + 1;
        rep.bound_den = q * q - 1;
    } else {
        rep.bound_num = q + 3;
        rep.bound_den = 2 * (q - 1);
    }
    rep.bound_conclusive = rep.bound_num < rep.bound_den;

    for (std::uint64_t idx : F.subfield(F.eps() * t).elements_sorted()) {
        if (idx == 0) continue;
        if (!std::binary_search(uni.begin(), uni.end(), idx)) {
            rep.witness_index = idx;
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

std::uint64_t parse_kv_u64(const std::string& field, const std::string& key) {
    if (field.rfind(key + "=", 0) != 0)
        throw parameter_error("family descriptor: expected '" + key + "=', got '" + field + "'");
    return std::stoull(field.substr(key.size() + 1));
}

} // namespace

FamilyInstance parse_family(FieldPtr ctx, const std::string& descriptor) {
    auto colon = descriptor.find(':');
    if (colon == std::string::npos)
        throw parameter_error("family descriptor: missing ':' in '" + descriptor + "'");
    std::string kind = descriptor.substr(0, colon);
    auto fields = split(descriptor.substr(colon + 1), ',');

    FamilyInstance out;
    out.kind = kind;
    std::ostringstream canon;
    if (kind == "phi") {
        if (fields.size() != 3) throw parameter_error("phi descriptor: want t=,J=,m=");
        PhiParams p{ctx, unsigned(parse_kv_u64(fields[0], "t")), unsigned(parse_kv_u64(fields[1], "J")),
                    ctx->from_index(parse_kv_u64(fields[2], "m"))};
        out.poly = phi(p);
        canon << "phi:t=" << p.t << ",J=" << p.J << ",m=" << ctx->index(p.m);
    } else if (kind == "pr") {
        if (fields.size() != 2) throw parameter_error("pr descriptor: want n,s");
        unsigned n = unsigned(std::stoul(fields[0]));
        unsigned s = unsigned(std::stoul(fields[1]));
        if (n != ctx->n()) throw parameter_error("pr descriptor: n mismatch with field");
        out.poly = pseudoregulus(ctx, s);
        canon << "pr:" << n << "," << s;
    } else if (kind == "lp") {
        if (fields.size() != 3) throw parameter_error("lp descriptor: want n,s,delta=");
        unsigned n = unsigned(std::stoul(fields[0]));
        unsigned s = unsigned(std::stoul(fields[1]));
        if (n != ctx->n()) throw parameter_error("lp descriptor: n mismatch with field");
        std::uint64_t didx = parse_kv_u64(fields[2], "delta");
        out.poly = lunardon_polverino(ctx, s, ctx->from_index(didx));
        canon << "lp:" << n << "," << s << ",delta=" << didx;
    } else if (kind == "psi") {
        if (fields.size() != 3) throw parameter_error("psi descriptor: want t,s,h=");
        unsigned t = unsigned(std::stoul(fields[0]));
        unsigned s = unsigned(std::stoul(fields[1]));
        std::uint64_t hidx = parse_kv_u64(fields[2], "h");
        out.poly = quadrinomial_psi(ctx, t, s, ctx->from_index(hidx)).poly;
        canon << "psi:" << t << "," << s << ",h=" << hidx;
    } else if (kind == "phiT") {
        if (fields.size() != 2) throw parameter_error("phiT descriptor: want t,mu=");
        unsigned t = unsigned(std::stoul(fields[0]));
        std::uint64_t muidx = parse_kv_u64(fields[1], "mu");
        out.poly = phi_adjoint_form(ctx, t, ctx->from_index(muidx));
        canon << "phiT:" << t << ",mu=" << muidx;
    } else {
        throw parameter_error("family descriptor: unknown kind '" + kind + "'");
    }
    out.canonical = canon.str();
    return out;
}

} // namespace scatq
