// Exact rational functions over F_q: the scalar field F = F_q(t).
#pragma once

#include <optional>
#include <string>
#include <utility>

#include "qdesc/poly.hpp"

namespace qdesc {

// num/den with gcd(num,den)=1, den monic and nonzero; equality is structural.
class RatFun {
public:
    explicit RatFun(const Fq& F) : num_(F), den_(Poly::constant(F, 1)) {}
    RatFun(Poly num, Poly den);
    /*implicit*/ RatFun(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), 1)) {}

    static RatFun zero(const Fq& F) { return RatFun(F); }
    static RatFun one(const Fq& F) { return RatFun(Poly::constant(F, 1)); }
    static RatFun constant(const Fq& F, uint8_t a) { return RatFun(Poly::constant(F, a)); }
    static RatFun var(const Fq& F) { return RatFun(Poly::x(F)); }

    const Fq& field() const { return num_.field(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    RatFun inverse() const;
    RatFun& operator+=(const RatFun& b) { *this = *this + b; return *this; }
    RatFun& operator*=(const RatFun& b) { *this = *this * b; return *this; }
    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RatFun squared() const { return *this * *this; }
    // x^2 + x
    RatFun wp() const { return squared() + *this; }

    int height() const { return std::max(num_.degree(), den_.degree()); }

    // f(t) -> f(s^2): image under F_q(t) -> F_q(s), t = s^2.
    RatFun substituted_square() const { return RatFun(num_.substituted_square(), den_.substituted_square()); }

    // f = f0(t^2) + t*f1(t^2); returns {f0, f1} as elements of the square
    // subfield renamed (hat field): coordinates w.r.t. the basis {1, t} of
    // F over F^2.
    std::pair<RatFun, RatFun> square_subfield_coords() const;

    std::string to_string(const std::string& var) const;

private:
    Poly num_, den_;
};

std::optional<RatFun> is_square_ratfun(const RatFun& f);

// Base rational function field F_q(var); Elem = RatFun.
struct RatCtx {
    const Fq* F;
    std::string var;
    using Elem = RatFun;

    bool operator==(const RatCtx& o) const { return F == o.F && var == o.var; }
};

// Deterministic stream of all f with height <= bound, prefix-stable in bound.
std::vector<RatFun> enumerate_ratfun(const Fq& F, int bound);
// All polynomials of degree <= bound (including 0), canonically ordered.
std::vector<Poly> enumerate_poly(const Fq& F, int bound);

} // namespace qdesc
