#include "scatq/gf.hpp"

#include <algorithm>
#include <numeric>

namespace scatq {

// ---------------------------------------------------------------------------
// uint64 number theory

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
    return std::uint64_t((__uint128_t)a * b % mod);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t e, std::uint64_t mod) {
    std::uint64_t r = 1 % mod;
    base %= mod;
    while (e) {
        if (e & 1) r = mulmod_u64(r, base, mod);
        base = mulmod_u64(base, base, mod);
        e >>= 1;
    }
    return r;
}

namespace {

bool miller_rabin(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t s : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % s == 0) return n == s;
    }
    std::uint64_t d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t pollard_rho(std::uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mulmod_u64(x, x, n) + c) % n; };
        std::uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            std::uint64_t diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
    }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (miller_rabin(n)) { out.push_back(n); return; }
    std::uint64_t d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d < 100000 && d * d <= v; ++d) {
        while (v % d == 0) { out.push_back(d); v /= d; }
    }
    factor_rec(v, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// FpMat

FpMat FpMat::identity(unsigned n, unsigned prime) {
    FpMat m(n, n, prime);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FpMat FpMat::operator*(const FpMat& rhs) const {
    FpMat r(rows, rhs.cols, p);
    for (unsigned i = 0; i < rows; ++i)
        for (unsigned k = 0; k < cols; ++k) {
            std::uint32_t v = at(i, k);
            if (!v) continue;
            for (unsigned j = 0; j < rhs.cols; ++j)
                r.at(i, j) = std::uint8_t((r.at(i, j) + v * rhs.at(k, j)) % p);
        }
    return r;
}

FpMat FpMat::operator+(const FpMat& rhs) const {
    FpMat r(rows, cols, p);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = std::uint8_t((a[i] + rhs.a[i]) % p);
    return r;
}

FpMat FpMat::operator-(const FpMat& rhs) const {
    FpMat r(rows, cols, p);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = std::uint8_t((a[i] + p - rhs.a[i]) % p);
    return r;
}

unsigned FpMat::rref() {
    unsigned piv = 0;
    for (unsigned col = 0; col < cols && piv < rows; ++col) {
        unsigned sel = piv;
        while (sel < rows && at(sel, col) == 0) ++sel;
        if (sel == rows) continue;
        if (sel != piv)
            for (unsigned j = 0; j < cols; ++j) std::swap(at(sel, j), at(piv, j));
        // normalize pivot row
        std::uint32_t inv = 1, v = at(piv, col);
        // inverse mod p by Fermat (p is a small prime)
        std::uint32_t e = p - 2, b = v;
        inv = 1;
        while (e) {
            if (e & 1) inv = inv * b % p;
            b = b * b % p;
            e >>= 1;
        }
        for (unsigned j = col; j < cols; ++j) at(piv, j) = std::uint8_t(at(piv, j) * inv % p);
        for (unsigned i = 0; i < rows; ++i) {
            if (i == piv) continue;
            std::uint32_t f = at(i, col);
            if (!f) continue;
            for (unsigned j = col; j < cols; ++j)
                at(i, j) = std::uint8_t((at(i, j) + (p - f) * at(piv, j)) % p);
        }
        ++piv;
    }
    return piv;
}

unsigned FpMat::rank() const {
    FpMat c = *this;
    return c.rref();
}

std::vector<std::vector<std::uint8_t>> solve_fp_nullspace(const FpMat& m) {
    FpMat r = m;
    r.rref();
    // locate pivot columns
    std::vector<int> pivot_row(m.cols, -1);
    unsigned row = 0;
    for (unsigned col = 0; col < m.cols && row < m.rows; ++col) {
        if (r.at(row, col) == 1) {
            bool is_pivot = true;
            for (unsigned j = 0; j < col; ++j)
                if (r.at(row, j) != 0) { is_pivot = false; break; }
            if (is_pivot) {
                pivot_row[col] = int(row);
                ++row;
            }
        }
    }
    std::vector<std::vector<std::uint8_t>> basis;
    for (unsigned col = 0; col < m.cols; ++col) {
        if (pivot_row[col] >= 0) continue;
        std::vector<std::uint8_t> v(m.cols, 0);
        v[col] = 1;
        for (unsigned c2 = 0; c2 < col; ++c2)
            if (pivot_row[c2] >= 0)
                v[c2] = std::uint8_t((m.p - r.at(unsigned(pivot_row[c2]), col)) % m.p);
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// construction-time polynomial arithmetic over F_p (coefficients low-first)

namespace {

using Pol = std::vector<std::uint8_t>;

Pol pol_norm(Pol u) {
    while (u.size() > 1 && u.back() == 0) u.pop_back();
    return u;
}

Pol pol_mulmod(const Pol& x, const Pol& y, const Pol& f, unsigned p) {
    unsigned d = unsigned(f.size()) - 1;
    std::vector<std::uint32_t> r(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i])
            for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += std::uint32_t(x[i]) * y[j];
    for (std::size_t k = r.size(); k-- > d;) {
        std::uint32_t c = r[k] % p;
        r[k] = 0;
        if (c)
            for (unsigned j = 0; j < d; ++j) r[k - d + j] += c * (p - f[j]) % p * 1u;
    }
    Pol out(d, 0);
    for (unsigned i = 0; i < d && i < r.size(); ++i) out[i] = std::uint8_t(r[i] % p);
    return pol_norm(out);
}

Pol pol_powmod(Pol base, std::uint64_t e, const Pol& f, unsigned p) {
    Pol r{1};
    while (e) {
        if (e & 1) r = pol_mulmod(r, base, f, p);
        base = pol_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Pol pol_mod(Pol a, const Pol& b, unsigned p) {
    a = pol_norm(std::move(a));
    std::uint32_t lead = b.back(), inv = 1, e = p - 2, t = lead;
    while (e) {
        if (e & 1) inv = inv * t % p;
        t = t * t % p;
        e >>= 1;
    }
    while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
        if (a.back() == 0) {
            a.pop_back();
            if (a.empty()) return {0};
            continue;
        }
        std::uint32_t c = a.back() * inv % p;
        std::size_t sh = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j)
            a[sh + j] = std::uint8_t((a[sh + j] + c * (p - b[j])) % p);
        a = pol_norm(std::move(a));
        if (a.size() == 1 && a[0] == 0) break;
    }
    return a;
}

Pol pol_gcd(Pol a, Pol b, unsigned p) {
    a = pol_norm(std::move(a));
    b = pol_norm(std::move(b));
    while (!(b.size() == 1 && b[0] == 0)) {
        Pol r = pol_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// f monic of degree d, low-first with f[d] = 1. Uses the standard criterion:
// X^(p^d) = X mod f and gcd(X^(p^(d/l)) - X, f) = 1 for every prime l | d.
bool pol_irreducible(const Pol& f, unsigned p) {
    unsigned d = unsigned(f.size()) - 1;
    if (f[0] == 0) return false; // divisible by X
    std::vector<Pol> frob(d + 1);
    frob[0] = {0, 1};
    for (unsigned k = 1; k <= d; ++k) frob[k] = pol_powmod(frob[k - 1], p, f, p);
    if (!(frob[d].size() == 2 && frob[d][0] == 0 && frob[d][1] == 1)) return false;
    for (std::uint64_t ell : prime_factors_u64(d)) {
        Pol g = frob[d / ell];
        if (g.size() < 2) g.resize(2, 0);
        g[1] = std::uint8_t((g[1] + p - 1) % p);
        Pol gg = pol_gcd(f, pol_norm(std::move(g)), p);
        if (gg.size() > 1) return false;
    }
    return true;
}

} // namespace

// ---------------------------------------------------------------------------
// FieldCtx

std::shared_ptr<const FieldCtx> FieldCtx::make_field(unsigned p, unsigned eps, unsigned n, FieldOptions opts) {
    if (p < 3 || p > kMaxChar || !miller_rabin(p))
        throw parameter_error("make_field: p must be an odd prime <= " + std::to_string(kMaxChar));
    if (eps == 0 || n == 0) throw parameter_error("make_field: eps and n must be positive");
    unsigned deg = eps * n;
    if (deg > kMaxDeg) throw parameter_error("make_field: eps*n exceeds supported degree " + std::to_string(kMaxDeg));

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->eps_ = eps;
    ctx->n_ = n;
    ctx->deg_ = deg;
    std::uint64_t q = 1, card = 1;
    for (unsigned i = 0; i < eps; ++i) q *= p;
    for (unsigned i = 0; i < deg; ++i) card *= p;
    ctx->q_ = q;
    ctx->card_ = card;

    // Lexicographically smallest monic irreducible, coefficients compared
    // low-degree-first: enumerate (c_0,...,c_{d-1}) with c_0 most significant.
    {
        std::vector<std::uint64_t> weight(deg);
        std::uint64_t w = 1;
        for (unsigned i = 0; i < deg; ++i) {
            weight[deg - 1 - i] = w;
            w *= p;
        }
        Pol f(deg + 1, 0);
        f[deg] = 1;
        bool found = false;
        for (std::uint64_t nidx = 0; nidx < card && !found; ++nidx) {
            for (unsigned i = 0; i < deg; ++i) f[i] = std::uint8_t(nidx / weight[i] % p);
            if (f[0] == 0) continue;
            if (pol_irreducible(f, p)) found = true;
        }
        if (!found) throw selfcheck_error("make_field: no irreducible polynomial found"); // unreachable
        ctx->modulus_.assign(f.begin(), f.end());
    }

    // reduction rows: X^(deg+i) mod modulus
    ctx->red_.resize(deg == 1 ? 0 : deg - 1);
    {
        Pol cur(deg, 0); // X^deg mod f = -(f mod X^deg)
        for (unsigned j = 0; j < deg; ++j) cur[j] = std::uint8_t((p - ctx->modulus_[j]) % p);
        for (unsigned i = 0; i + 1 < deg; ++i) {
            ctx->red_[i].assign(cur.begin(), cur.end());
            // multiply by X, reduce
            Pol nxt(deg, 0);
            std::uint32_t top = cur[deg - 1];
            for (unsigned j = deg - 1; j > 0; --j) nxt[j] = cur[j - 1];
            nxt[0] = 0;
            if (top)
                for (unsigned j = 0; j < deg; ++j)
                    nxt[j] = std::uint8_t((nxt[j] + top * ((p - ctx->modulus_[j]) % p)) % p);
            cur = nxt;
        }
    }

    // Frobenius matrices: columns of M_1 are (X^j)^p mod f; M_k = M_(k-1) * M_1.
    {
        ctx->frob_mats_.resize(deg);
        ctx->frob_mats_[0] = FpMat::identity(deg, p);
        Pol xp = pol_powmod({0, 1}, p, ctx->modulus_, p);
        FpMat m1(deg, deg, p);
        Pol acc{1};
        for (unsigned j = 0; j < deg; ++j) {
            for (std::size_t i = 0; i < acc.size(); ++i) m1.at(unsigned(i), j) = acc[i];
            acc = pol_mulmod(acc, xp, ctx->modulus_, p);
        }
        if (deg > 1) ctx->frob_mats_[1] = m1;
        for (unsigned k = 2; k < deg; ++k) ctx->frob_mats_[k] = m1 * ctx->frob_mats_[k - 1];
    }

    ctx->order_primes_ = prime_factors_u64(card - 1);

    // canonical generator: smallest index whose order is card-1
    {
        FieldElem g;
        bool found = false;
        for (std::uint64_t idx = 2; idx < card && !found; ++idx) {
            g = ctx->from_index(idx);
            bool ok = true;
            for (std::uint64_t ell : ctx->order_primes_) {
                FieldElem t = ctx->pow(g, (card - 1) / ell);
                if (t == ctx->one()) { ok = false; break; }
            }
            if (ok) found = true;
        }
        if (!found) throw selfcheck_error("make_field: no generator found"); // unreachable
        ctx->gen_ = g;
    }

    if (card <= opts.table_budget) ctx->build_tables();
    ctx->build_fq_basis();
    return ctx;
}

FieldElem FieldCtx::one() const {
    FieldElem e;
    e.d[0] = 1;
    return e;
}

FieldElem FieldCtx::from_int(std::uint64_t v) const {
    FieldElem e;
    e.d[0] = std::uint8_t(v % p_);
    return e;
}

std::uint64_t FieldCtx::index(const FieldElem& x) const {
    std::uint64_t idx = 0;
    for (unsigned i = deg_; i-- > 0;) idx = idx * p_ + x.d[i];
    return idx;
}

FieldElem FieldCtx::from_index(std::uint64_t idx) const {
    FieldElem e;
    for (unsigned i = 0; i < deg_; ++i) {
        e.d[i] = std::uint8_t(idx % p_);
        idx /= p_;
    }
    return e;
}

FieldElem FieldCtx::add(const FieldElem& x, const FieldElem& y) const {
    FieldElem r;
    for (unsigned i = 0; i < kMaxDeg; ++i) {
        std::uint8_t v = std::uint8_t(x.d[i] + y.d[i]);
        r.d[i] = v >= p_ ? std::uint8_t(v - p_) : v;
    }
    return r;
}

FieldElem FieldCtx::neg(const FieldElem& x) const {
    FieldElem r;
    for (unsigned i = 0; i < kMaxDeg; ++i) r.d[i] = x.d[i] ? std::uint8_t(p_ - x.d[i]) : 0;
    return r;
}

FieldElem FieldCtx::sub(const FieldElem& x, const FieldElem& y) const {
    FieldElem r;
    for (unsigned i = 0; i < kMaxDeg; ++i) {
        std::int16_t v = std::int16_t(x.d[i]) - y.d[i];
        r.d[i] = std::uint8_t(v < 0 ? v + p_ : v);
    }
    return r;
}

FieldElem FieldCtx::scale(const FieldElem& x, std::uint8_t c) const {
    FieldElem r;
    if (c == 0) return r;
    for (unsigned i = 0; i < kMaxDeg; ++i) r.d[i] = std::uint8_t(std::uint32_t(x.d[i]) * c % p_);
    return r;
}

FieldElem FieldCtx::mul_generic(const FieldElem& x, const FieldElem& y) const {
    std::array<std::uint32_t, 2 * kMaxDeg> buf{};
    for (unsigned i = 0; i < deg_; ++i) {
        std::uint32_t xi = x.d[i];
        if (!xi) continue;
        for (unsigned j = 0; j < deg_; ++j) buf[i + j] += xi * y.d[j];
    }
    // red_[i] is the full expansion of X^(deg+i), so contributions land below deg
    for (unsigned k = 2 * deg_ - 2 + 1; k-- > deg_;) {
        std::uint32_t c = buf[k] % p_;
        if (!c) continue;
        const auto& row = red_[k - deg_];
        for (unsigned j = 0; j < deg_; ++j) buf[j] += c * row[j];
    }
    FieldElem r;
    for (unsigned i = 0; i < deg_; ++i) r.d[i] = std::uint8_t(buf[i] % p_);
    return r;
}

FieldElem FieldCtx::mul(const FieldElem& x, const FieldElem& y) const {
    if (!exp_.empty()) {
        std::uint64_t ix = index(x), iy = index(y);
        if (ix == 0 || iy == 0) return zero();
        std::uint64_t e = log_[ix] + std::uint64_t(log_[iy]);
        std::uint64_t m = card_ - 1;
        return exp_[e >= m ? e - m : e];
    }
    return mul_generic(x, y);
}

FieldElem FieldCtx::inv(const FieldElem& x) const {
    if (x.is_zero()) throw parameter_error("inv: division by zero");
    if (!exp_.empty()) {
        std::uint32_t lx = log_[index(x)];
        std::uint64_t m = card_ - 1;
        return exp_[lx == 0 ? 0 : m - lx];
    }
    return pow(x, card_ - 2);
}

FieldElem FieldCtx::pow(const FieldElem& x, std::uint64_t e) const {
    if (x.is_zero()) return e == 0 ? one() : zero();
    std::uint64_t m = card_ - 1;
    e %= m;
    if (!exp_.empty()) {
        std::uint64_t lx = log_[index(x)];
        return exp_[mulmod_u64(lx, e, m)];
    }
    FieldElem r = one(), base = x;
    while (e) {
        if (e & 1) r = mul_generic(r, base);
        base = mul_generic(base, base);
        e >>= 1;
    }
    return r;
}

FieldElem FieldCtx::apply_fp_matrix(const FpMat& m, const FieldElem& x) const {
    FieldElem r;
    for (unsigned i = 0; i < m.rows; ++i) {
        std::uint32_t acc = 0;
        const std::uint8_t* row = &m.a[std::size_t(i) * m.cols];
        for (unsigned j = 0; j < m.cols; ++j) acc += std::uint32_t(row[j]) * x.d[j];
        r.d[i] = std::uint8_t(acc % p_);
    }
    return r;
}

FieldElem FieldCtx::frobenius(const FieldElem& x, unsigned k) const {
    k %= deg_;
    if (k == 0) return x;
    return apply_fp_matrix(frob_mats_[k], x);
}

FieldElem FieldCtx::frobenius_q(const FieldElem& x, unsigned i) const {
    return frobenius(x, (std::uint64_t(i) * eps_) % deg_);
}

std::uint32_t FieldCtx::log(const FieldElem& x) const {
    if (exp_.empty()) throw resource_error("log: field has no discrete-log tables");
    if (x.is_zero()) throw parameter_error("log: zero has no discrete logarithm");
    return log_[index(x)];
}

const FieldElem& FieldCtx::exp(std::uint64_t e) const {
    return exp_[e];
}

void FieldCtx::build_tables() {
    std::uint64_t m = card_ - 1;
    exp_.resize(m);
    log_.assign(card_, std::uint32_t(-1));
    // multiplication by the generator as a digit-lookup table
    std::vector<FieldElem> gtab(std::size_t(deg_) * p_);
    for (unsigned r = 0; r < deg_; ++r) {
        FieldElem er;
        er.d[r] = 1;
        FieldElem ger = mul_generic(gen_, er);
        for (unsigned c = 0; c < p_; ++c) gtab[std::size_t(r) * p_ + c] = scale(ger, std::uint8_t(c));
    }
    FieldElem cur = one();
    for (std::uint64_t i = 0; i < m; ++i) {
        exp_[i] = cur;
        log_[index(cur)] = std::uint32_t(i);
        FieldElem nxt;
        for (unsigned r = 0; r < deg_; ++r)
            if (cur.d[r]) nxt = add(nxt, gtab[std::size_t(r) * p_ + cur.d[r]]);
        cur = nxt;
    }
    if (!(cur == one())) throw selfcheck_error("build_tables: generator order mismatch");
}

void FieldCtx::build_fq_basis() {
    // rows = F_p coordinates of g^0..g^(n-1); echelonize, keep the n rows.
    FpMat rows(n_, deg_, p_);
    FieldElem acc = one();
    for (unsigned j = 0; j < n_; ++j) {
        for (unsigned i = 0; i < deg_; ++i) rows.at(j, i) = acc.d[i];
        acc = mul(acc, gen_);
    }
    unsigned rank = rows.rref();
    if (rank != n_) throw selfcheck_error("fq basis: generator powers not F_q-independent");
    fq_basis_.resize(n_);
    for (unsigned j = 0; j < n_; ++j) {
        FieldElem b;
        for (unsigned i = 0; i < deg_; ++i) b.d[i] = rows.at(j, i);
        fq_basis_[j] = b;
    }
    // F_p-basis of F_q = fixed points of x -> x^(p^eps)
    {
        FpMat mm = frob_mats_[eps_ % deg_] - FpMat::identity(deg_, p_);
        auto kb = solve_fp_nullspace(mm);
        if (kb.size() != eps_) throw selfcheck_error("fq basis: F_q dimension mismatch");
        fq_sub_basis_.clear();
        for (auto& v : kb) {
            FieldElem e;
            for (unsigned i = 0; i < deg_; ++i) e.d[i] = v[i];
            fq_sub_basis_.push_back(e);
        }
    }
    // coordinate solver: columns are u_k * B_j (j major)
    {
        FpMat m(deg_, deg_, p_);
        unsigned col = 0;
        for (unsigned j = 0; j < n_; ++j)
            for (unsigned k = 0; k < eps_; ++k, ++col) {
                FieldElem prod = mul(fq_sub_basis_[k], fq_basis_[j]);
                for (unsigned i = 0; i < deg_; ++i) m.at(i, col) = prod.d[i];
            }
        // invert via [M | I] rref
        FpMat aug(deg_, 2 * deg_, p_);
        for (unsigned i = 0; i < deg_; ++i) {
            for (unsigned j = 0; j < deg_; ++j) aug.at(i, j) = m.at(i, j);
            aug.at(i, deg_ + i) = 1;
        }
        if (aug.rref() != deg_) throw selfcheck_error("fq basis: coordinate matrix singular");
        fq_coord_solver_ = FpMat(deg_, deg_, p_);
        for (unsigned i = 0; i < deg_; ++i)
            for (unsigned j = 0; j < deg_; ++j) fq_coord_solver_.at(i, j) = aug.at(i, deg_ + j);
    }
}

std::vector<FieldElem> FieldCtx::fq_coords(const FieldElem& x) const {
    FieldElem sol = apply_fp_matrix(fq_coord_solver_, x);
    std::vector<FieldElem> out(n_);
    unsigned idx = 0;
    for (unsigned j = 0; j < n_; ++j) {
        FieldElem c;
        for (unsigned k = 0; k < eps_; ++k, ++idx) c = add(c, scale(fq_sub_basis_[k], sol.d[idx]));
        out[j] = c;
    }
    return out;
}

FpMat FieldCtx::mul_matrix(const FieldElem& a) const {
    FpMat m(deg_, deg_, p_);
    for (unsigned j = 0; j < deg_; ++j) {
        FieldElem ej;
        ej.d[j] = 1;
        FieldElem prod = mul(a, ej);
        for (unsigned i = 0; i < deg_; ++i) m.at(i, j) = prod.d[i];
    }
    return m;
}

SubfieldHandle FieldCtx::subfield(unsigned m) const {
    if (m == 0 || deg_ % m != 0) throw parameter_error("subfield: degree must divide eps*n");
    SubfieldHandle h;
    h.ctx_ = this;
    h.m_ = m;
    FpMat mm = frob_mats_[m % deg_] - FpMat::identity(deg_, p_);
    auto kb = solve_fp_nullspace(mm);
    if (kb.size() != m) throw selfcheck_error("subfield: fixed-point space has wrong dimension");
    for (auto& v : kb) {
        FieldElem e;
        for (unsigned i = 0; i < deg_; ++i) e.d[i] = v[i];
        h.basis_.push_back(e);
    }
    return h;
}

std::uint64_t SubfieldHandle::cardinality() const {
    std::uint64_t c = 1;
    for (unsigned i = 0; i < m_; ++i) c *= ctx_->p();
    return c;
}

bool SubfieldHandle::contains(const FieldElem& x) const {
    return ctx_->frobenius(x, m_ % ctx_->deg()) == x;
}

const std::vector<std::uint64_t>& SubfieldHandle::elements_sorted() const {
    if (!sorted_.empty() || m_ == 0) return sorted_;
    std::uint64_t c = cardinality();
    if (c > (std::uint64_t(1) << 22))
        throw resource_error("subfield enumeration beyond budget (" + std::to_string(c) + " elements)");
    sorted_.reserve(c);
    // iterate all F_p combinations of the basis, gray-style incremental
    std::vector<std::uint8_t> digits(m_, 0);
    FieldElem cur;
    for (std::uint64_t i = 0;; ++i) {
        sorted_.push_back(ctx_->index(cur));
        if (i + 1 == c) break;
        unsigned pos = 0;
        while (true) {
            cur = ctx_->add(cur, basis_[pos]);
            digits[pos] = std::uint8_t((digits[pos] + 1) % ctx_->p());
            if (digits[pos] != 0) break;
            ++pos;
        }
    }
    std::sort(sorted_.begin(), sorted_.end());
    return sorted_;
}

FieldElem FieldCtx::rel_norm(const FieldElem& x, unsigned m1, unsigned m2) const {
    if (m2 == 0 || m1 % m2 != 0 || deg_ % m1 != 0)
        throw parameter_error("rel_norm: need m2 | m1 | eps*n");
    FieldElem r = one();
    for (unsigned i = 0; i < m1 / m2; ++i) r = mul(r, frobenius(x, (m2 * i) % deg_));
    return r;
}

FieldElem FieldCtx::rel_trace(const FieldElem& x, unsigned m1, unsigned m2) const {
    if (m2 == 0 || m1 % m2 != 0 || deg_ % m1 != 0)
        throw parameter_error("rel_trace: need m2 | m1 | eps*n");
    FieldElem r;
    for (unsigned i = 0; i < m1 / m2; ++i) r = add(r, frobenius(x, (m2 * i) % deg_));
    return r;
}

std::string FieldCtx::descriptor() const {
    std::string s = std::to_string(p_) + "^" + std::to_string(eps_) + "^" + std::to_string(n_) + ":";
    for (unsigned i = 0; i <= deg_; ++i) {
        if (i) s += ",";
        s += std::to_string(modulus_[i]);
    }
    return s;
}

// ---------------------------------------------------------------------------

LinearMapTable::LinearMapTable(const FieldCtx& ctx, const std::function<FieldElem(const FieldElem&)>& f)
    : deg_(ctx.deg()), p_(ctx.p()), tab_(std::size_t(ctx.deg()) * ctx.p()) {
    for (unsigned r = 0; r < deg_; ++r) {
        FieldElem er;
        er.d[r] = 1;
        FieldElem fr = f(er);
        for (unsigned c = 0; c < p_; ++c) tab_[std::size_t(r) * p_ + c] = ctx.scale(fr, std::uint8_t(c));
    }
}

FieldElem LinearMapTable::apply(const FieldCtx& ctx, const FieldElem& x) const {
    FieldElem acc;
    for (unsigned r = 0; r < deg_; ++r)
        if (x.d[r]) acc = ctx.add(acc, tab_[std::size_t(r) * p_ + x.d[r]]);
    return acc;
}

} // namespace scatq
