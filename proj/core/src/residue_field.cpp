#include "qdesc/residue_field.hpp"

#include <stdexcept>

namespace qdesc {

namespace {

// Bit-pack an element of the base layer: coefficient j of x^j contributes its
// k bits at position j*k. Dimension over F_2 is deg(p)*k <= 64.
uint64_t pack(const Poly& a, int k) {
    uint64_t bits = 0;
    for (int j = 0; j <= a.degree(); ++j)
        bits |= uint64_t(a.coeff(j)) << (j * k);
    return bits;
}

Poly unpack(const Fq& F, uint64_t bits, int d) {
    std::vector<uint8_t> c(size_t(d), 0);
    unsigned mask = F.q() - 1;
    for (int j = 0; j < d; ++j) c[size_t(j)] = uint8_t((bits >> (j * F.k())) & mask);
    return Poly(F, std::move(c));
}

} // namespace

ResFieldPtr ResField::base(const Fq& F, Poly p) {
    if (!p.is_monic() || p.degree() < 1) throw std::invalid_argument("ResField: modulus must be monic, degree >= 1");
    if (p.degree() * F.k() > 64) throw std::invalid_argument("ResField: dimension over F_2 exceeds 64");
    auto rf = std::shared_ptr<ResField>(new ResField());
    rf->F_ = &F;
    rf->p_ = std::move(p);
    rf->cbar_ = Poly(F);
    return rf;
}

ResFieldPtr ResField::quad_ext(ResFieldPtr base_field, Poly cbar) {
    if (base_field->ext_) throw std::invalid_argument("ResField: no towers above the quadratic layer");
    auto rf = std::shared_ptr<ResField>(new ResField());
    rf->F_ = base_field->F_;
    rf->p_ = base_field->p_;
    rf->ext_ = true;
    rf->cbar_ = cbar % rf->p_;
    if (base_field->btrace_f2(rf->cbar_) == 0)
        throw std::invalid_argument("ResField: AS constant has trace 0, extension would split");
    return rf;
}

RElem ResField::theta() const {
    if (!ext_) throw std::invalid_argument("ResField::theta: base layer");
    return {Poly(*F_), Poly::constant(*F_, 1)};
}

RElem ResField::mul(const RElem& x, const RElem& y) const {
    if (!ext_) return {bmul(x.a, y.a), Poly(*F_)};
    // (a1 + b1 th)(a2 + b2 th), th^2 = th + cbar
    Poly bb = bmul(x.b, y.b);
    Poly a = bmul(x.a, y.a) + bmul(bb, cbar_);
    Poly b = bmul(x.a, y.b) + bmul(x.b, y.a) + bb;
    return {a, b};
}

Poly ResField::binv(const Poly& x) const {
    if (x.is_zero()) throw std::invalid_argument("ResField: inverse of zero");
    EGcd e = egcd(x, p_);
    if (!e.g.is_one()) throw std::logic_error("ResField: modulus not irreducible?");
    return e.u % p_;
}

RElem ResField::inv(const RElem& x) const {
    if (is_zero(x)) throw std::invalid_argument("ResField: inverse of zero");
    if (!ext_) return {binv(x.a), Poly(*F_)};
    // 1/(a+b th) = conj/norm, conj = (a+b) + b th, norm = a^2 + ab + b^2 cbar
    Poly n = bmul(x.a, x.a) + bmul(x.a, x.b) + bmul(bmul(x.b, x.b), cbar_);
    Poly ninv = binv(n);
    return {bmul(x.a + x.b, ninv), bmul(x.b, ninv)};
}

RElem ResField::pow(const RElem& x, uint64_t e) const {
    RElem r = one(), b = x;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

RElem ResField::sqrt(const RElem& x) const {
    // x^(2^(m-1)) where 2^m = |field|; squaring m-1 times
    int m = f2_dim();
    RElem r = x;
    for (int i = 0; i < m - 1; ++i) r = mul(r, r);
    return r;
}

int ResField::btrace_f2(const Poly& x) const {
    // Tr_{k_v/F_q} via iterated q-Frobenius, then Tr_{F_q/F_2}
    int d = p_.degree();
    Poly acc(*F_);
    Poly cur = x % p_;
    for (int i = 0; i < d; ++i) {
        acc = acc + cur;
        cur = frobenius_pow_mod(cur, 1, p_);
    }
    if (acc.degree() > 0) throw std::logic_error("ResField: trace not in F_q");
    return F_->trace(acc.coeff(0));
}

int ResField::abs_trace(const RElem& x) const {
    if (!ext_) return btrace_f2(x.a);
    // Tr_{k_w/k_v}(a + b th) = b (Frobenius over k_v sends th -> th+1)
    return btrace_f2(x.b);
}

FqElem ResField::trace_to_fq(const RElem& x) const {
    if (ext_) throw std::invalid_argument("ResField::trace_to_fq: base layer only");
    int d = p_.degree();
    Poly acc(*F_);
    Poly cur = x.a % p_;
    for (int i = 0; i < d; ++i) {
        acc = acc + cur;
        cur = frobenius_pow_mod(cur, 1, p_);
    }
    if (acc.degree() > 0) throw std::logic_error("ResField: trace not in F_q");
    return {*F_, acc.coeff(0)};
}

std::optional<RElem> ResField::solve_wp(const RElem& c) const {
    // y^2+y is F_2-linear; solve by elimination in <=64 dimensions.
    if (ext_) throw std::invalid_argument("ResField::solve_wp: base layer only");
    if (btrace_f2(c.a) != 0) return std::nullopt;
    int d = p_.degree(), k = F_->k(), n = d * k;
    // echelon basis of the column space, tagged with the variable mask that
    // produced each vector; kept sorted by pivot (lowest set bit) ascending,
    // so one ascending reduction pass clears every pivot
    struct Row { uint64_t vec, vars; };
    std::vector<Row> basis;
    auto reduce = [&](uint64_t v, uint64_t m) -> Row {
        for (const Row& r : basis) {
            uint64_t piv = r.vec & ~(r.vec - 1);
            if (v & piv) { v ^= r.vec; m ^= r.vars; }
        }
        return {v, m};
    };
    auto insert = [&](Row r) {
        uint64_t piv = r.vec & ~(r.vec - 1);
        auto it = basis.begin();
        while (it != basis.end() && (it->vec & ~(it->vec - 1)) < piv) ++it;
        basis.insert(it, r);
    };
    for (int j = 0; j < n; ++j) {
        Poly e = unpack(*F_, 1ull << j, d);
        Poly im = bmul(e, e) + e;
        Row r = reduce(pack(im, k), 1ull << j);
        if (r.vec != 0) insert(r);
    }
    Row t = reduce(pack(c.a % p_, k), 0);
    if (t.vec != 0) return std::nullopt; // inconsistent (trace 0 rules this out)
    return RElem{unpack(*F_, t.vars, d), Poly(*F_)};
}

RElem ResField::eval_poly(const Poly& f) const {
    return from_base(f % p_);
}

RElem ResField::eval_ratfun_unit(const Poly& num, const Poly& den) const {
    Poly n = num % p_, d = den % p_;
    if (d.is_zero()) throw std::invalid_argument("ResField: denominator vanishes at place");
    return {bmul(n, binv(d)), Poly(*F_)};
}

std::string ResField::to_string(const RElem& x) const {
    std::string s = x.a.to_string("r");
    if (ext_ && !x.b.is_zero()) s += "+(" + x.b.to_string("r") + ")*th";
    return s;
}

int ResField::cmp(const RElem& x, const RElem& y) {
    int c = Poly::cmp(x.a, y.a);
    if (c != 0) return c;
    return Poly::cmp(x.b, y.b);
}

} // namespace qdesc
