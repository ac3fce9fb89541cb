#include "scatq/linpoly.hpp"

#include <sstream>

namespace scatq {

int LinPoly::q_degree() const {
    for (int i = int(c.size()); i-- > 0;)
        if (!c[i].is_zero()) return i;
    return -1;
}

LinPoly lin_zero(FieldPtr ctx) {
    LinPoly f;
    f.c.resize(ctx->n());
    f.ctx = std::move(ctx);
    return f;
}

LinPoly lin_monomial(FieldPtr ctx, unsigned i, const FieldElem& coeff) {
    LinPoly f = lin_zero(std::move(ctx));
    f.c[i % f.c.size()] = coeff;
    return f;
}

LinPoly lin_monomial(FieldPtr ctx, unsigned i) {
    FieldElem one = ctx->one();
    return lin_monomial(std::move(ctx), i, one);
}

LinPoly lin_x(FieldPtr ctx) { return lin_monomial(std::move(ctx), 0); }

LinPoly lin_add(const LinPoly& f, const LinPoly& g) {
    LinPoly h = f;
    for (std::size_t i = 0; i < h.c.size(); ++i) h.c[i] = f.ctx->add(f.c[i], g.c[i]);
    return h;
}

LinPoly lin_sub(const LinPoly& f, const LinPoly& g) {
    LinPoly h = f;
    for (std::size_t i = 0; i < h.c.size(); ++i) h.c[i] = f.ctx->sub(f.c[i], g.c[i]);
    return h;
}

LinPoly lin_scale(const LinPoly& f, const FieldElem& b) {
    LinPoly h = f;
    for (auto& a : h.c) a = f.ctx->mul(b, a);
    return h;
}

FieldElem eval(const LinPoly& f, const FieldElem& x) {
    const FieldCtx& F = *f.ctx;
    FieldElem acc, xi = x;
    for (unsigned i = 0; i < f.c.size(); ++i) {
        if (!f.c[i].is_zero()) acc = F.add(acc, F.mul(f.c[i], xi));
        if (i + 1 < f.c.size()) xi = F.frobenius_q(xi, 1);
    }
    return acc;
}

LinPoly compose_mod(const LinPoly& f, const LinPoly& g) {
    const FieldCtx& F = *f.ctx;
    unsigned n = F.n();
    LinPoly h = lin_zero(f.ctx);
    for (unsigned i = 0; i < n; ++i) {
        if (f.c[i].is_zero()) continue;
        for (unsigned j = 0; j < n; ++j) {
            if (g.c[j].is_zero()) continue;
            unsigned k = (i + j) % n;
            h.c[k] = F.add(h.c[k], F.mul(f.c[i], F.frobenius_q(g.c[j], i)));
        }
    }
    return h;
}

LinPoly adjoint(const LinPoly& f) {
    const FieldCtx& F = *f.ctx;
    unsigned n = F.n();
    LinPoly h = lin_zero(f.ctx);
    for (unsigned i = 0; i < n; ++i) {
        if (f.c[i].is_zero()) continue;
        unsigned k = (n - i) % n;
        h.c[k] = F.add(h.c[k], F.frobenius_q(f.c[i], k));
    }
    return h;
}

LinPoly frobenius_twist(const LinPoly& f, unsigned k) {
    LinPoly h = f;
    for (auto& a : h.c) a = f.ctx->frobenius(a, k % f.ctx->deg());
    return h;
}

FpMat fp_matrix(const LinPoly& f) {
    const FieldCtx& F = *f.ctx;
    unsigned d = F.deg();
    FpMat m(d, d, F.p());
    for (unsigned j = 0; j < d; ++j) {
        FieldElem ej;
        ej.d[j] = 1;
        FieldElem y = eval(f, ej);
        for (unsigned i = 0; i < d; ++i) m.at(i, j) = y.d[i];
    }
    return m;
}

FqLinearMap to_matrix(const LinPoly& f) {
    const FieldCtx& F = *f.ctx;
    unsigned n = F.n();
    FqLinearMap m;
    m.ctx = f.ctx;
    m.n = n;
    m.a.resize(std::size_t(n) * n);
    const auto& basis = F.fq_basis();
    for (unsigned j = 0; j < n; ++j) {
        auto coords = F.fq_coords(eval(f, basis[j]));
        for (unsigned i = 0; i < n; ++i) m.at(i, j) = coords[i];
    }
    return m;
}

unsigned FqLinearMap::rank() const {
    const FieldCtx& F = *ctx;
    std::vector<FieldElem> w = a;
    auto at2 = [&](unsigned i, unsigned j) -> FieldElem& { return w[std::size_t(i) * n + j]; };
    unsigned piv = 0;
    for (unsigned col = 0; col < n && piv < n; ++col) {
        unsigned sel = piv;
        while (sel < n && at2(sel, col).is_zero()) ++sel;
        if (sel == n) continue;
        for (unsigned j = 0; j < n; ++j) std::swap(at2(sel, j), at2(piv, j));
        FieldElem ipiv = F.inv(at2(piv, col));
        for (unsigned j = col; j < n; ++j) at2(piv, j) = F.mul(at2(piv, j), ipiv);
        for (unsigned i = piv + 1; i < n; ++i) {
            FieldElem fct = at2(i, col);
            if (fct.is_zero()) continue;
            for (unsigned j = col; j < n; ++j)
                at2(i, j) = F.sub(at2(i, j), F.mul(fct, at2(piv, j)));
        }
        ++piv;
    }
    return piv;
}

unsigned kernel_dim(const LinPoly& f) {
    const FieldCtx& F = *f.ctx;
    unsigned fp_nullity = F.deg() - fp_matrix(f).rank();
    if (fp_nullity % F.eps() != 0)
        throw selfcheck_error("kernel_dim: F_p nullity not divisible by eps");
    return fp_nullity / F.eps();
}

unsigned image_dim(const LinPoly& f) { return f.ctx->n() - kernel_dim(f); }

std::string to_string(const LinPoly& f) {
    std::ostringstream os;
    os << "q-poly n=" << f.ctx->n() << " [";
    bool first = true;
    for (unsigned i = 0; i < f.c.size(); ++i) {
        if (f.c[i].is_zero()) continue;
        if (!first) os << ", ";
        os << i << ":" << f.ctx->index(f.c[i]);
        first = false;
    }
    os << "]";
    return os.str();
}

LinPoly parse_linpoly(FieldPtr ctx, const std::string& s) {
    auto fail = [&] { throw parameter_error("parse_linpoly: malformed input '" + s + "'"); };
    std::istringstream is(s);
    std::string tag;
    is >> tag;
    if (tag != "q-poly") fail();
    std::string nfield;
    is >> nfield;
    if (nfield.rfind("n=", 0) != 0) fail();
    unsigned n = unsigned(std::stoul(nfield.substr(2)));
    if (n != ctx->n()) throw parameter_error("parse_linpoly: n mismatch with field context");
    LinPoly f = lin_zero(ctx);
    std::string rest;
    std::getline(is, rest);
    auto lb = rest.find('[');
    auto rb = rest.rfind(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb) fail();
    std::string body = rest.substr(lb + 1, rb - lb - 1);
    std::istringstream terms(body);
    std::string term;
    while (std::getline(terms, term, ',')) {
        auto colon = term.find(':');
        if (colon == std::string::npos) fail();
        unsigned i = unsigned(std::stoul(term.substr(0, colon)));
        std::uint64_t idx = std::stoull(term.substr(colon + 1));
        if (i >= n || idx >= ctx->card()) fail();
        f.c[i] = ctx->from_index(idx);
    }
    return f;
}

} // namespace scatq
