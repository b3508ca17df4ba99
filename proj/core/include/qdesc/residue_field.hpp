// Residue fields of places: k_v = F_q[x]/(p) for a monic irreducible p,
// plus the Artin-Schreier quadratic extension k_v(theta), theta^2+theta = cbar,
// needed at inert places of a separable quadratic extension.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qdesc/poly.hpp"

namespace qdesc {

class ResField;
using ResFieldPtr = std::shared_ptr<const ResField>;

// Element: a + b*theta with a, b reduced mod p; b is zero unless the field
// has the quadratic layer.
struct RElem {
    Poly a, b;
};

class ResField : public std::enable_shared_from_this<ResField> {
public:
    // Base layer k_v = F_q[x]/(p); p monic irreducible (p = x gives F_q itself).
    static ResFieldPtr base(const Fq& F, Poly p);
    static ResFieldPtr of_constants(const Fq& F) { return base(F, Poly::x(F)); }
    // Quadratic layer over *this; cbar must have nonzero absolute trace.
    static ResFieldPtr quad_ext(ResFieldPtr base_field, Poly cbar);

    const Fq& fq() const { return *F_; }
    const Poly& modulus() const { return p_; }
    int base_degree() const { return p_.degree(); }
    bool is_ext() const { return ext_; }
    const Poly& cbar() const { return cbar_; }
    // dimension over F_2
    int f2_dim() const { return p_.degree() * F_->k() * (ext_ ? 2 : 1); }

    RElem zero() const { return {Poly(*F_), Poly(*F_)}; }
    RElem one() const { return {Poly::constant(*F_, 1), Poly(*F_)}; }
    RElem from_base(Poly a) const { return {a % p_, Poly(*F_)}; }
    RElem theta() const;

    bool is_zero(const RElem& x) const { return x.a.is_zero() && x.b.is_zero(); }
    bool eq(const RElem& x, const RElem& y) const { return x.a == y.a && x.b == y.b; }

    RElem add(const RElem& x, const RElem& y) const { return {x.a + y.a, x.b + y.b}; }
    RElem mul(const RElem& x, const RElem& y) const;
    RElem inv(const RElem& x) const;
    RElem sqr(const RElem& x) const { return mul(x, x); }
    RElem sqrt(const RElem& x) const; // unique (finite field, char 2)
    RElem pow(const RElem& x, uint64_t e) const;

    // Tr down to F_2 through all layers.
    int abs_trace(const RElem& x) const;
    // Tr_{k_v/F_q} (base layer).
    FqElem trace_to_fq(const RElem& x) const;
    // Solve y^2 + y = c (exists iff abs_trace(c) == 0); other solution is y+1.
    std::optional<RElem> solve_wp(const RElem& c) const;

    // Evaluate a polynomial over F_q at the residue of x (only base layer).
    RElem eval_poly(const Poly& f) const;
    // Value of num/den at the place, valuations both zero. Base layer.
    RElem eval_ratfun_unit(const Poly& num, const Poly& den) const;

    std::string to_string(const RElem& x) const;
    // canonical order for deterministic choices
    static int cmp(const RElem& x, const RElem& y);

private:
    ResField() : p_(Poly::x(Fq::get(1))), cbar_(Fq::get(1)) {}
    const Fq* F_ = nullptr;
    Poly p_;
    bool ext_ = false;
    Poly cbar_; // base-layer representative of the AS constant

    Poly bmul(const Poly& x, const Poly& y) const { return (x * y) % p_; }
    Poly binv(const Poly& x) const;
    int btrace_f2(const Poly& x) const; // abs trace of base layer
};

} // namespace qdesc
