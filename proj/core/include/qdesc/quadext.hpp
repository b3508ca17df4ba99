// The two quadratic extensions of F = F_q(t): the separable K = F(eta) with
// eta^2 + eta = delta, and the inseparable K = F(sqrt t), re-parametrized as
// F_q(s) with t = s^2. Includes arithmetic, wp- and square-tests,
// square-subfield decomposition, and the places of K above places of F.
#pragma once

#include <string>
#include <vector>

#include "qdesc/places.hpp"

namespace qdesc {

// ---------------------------------------------------------------- KElem

// x + y*eta over the separable extension.
struct KElem {
    RatFun x, y;

    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    friend bool operator==(const KElem& a, const KElem& b) { return a.x == b.x && a.y == b.y; }
    int height() const { return std::max({x.height(), y.height()}); }
};

struct SepCtx;

class PlaceAbove {
public:
    enum class Kind { Split, Inert, Ramified };

    PlaceAbove(Kind kind_, int index_, Place below_, int e_, int f_, RatFun delta_red_,
               RatFun transcript_, RElem h0_, RElem cbar_, int mprime_)
        : kind(kind_), index(index_), below(std::move(below_)), e(e_), f(f_),
          delta_red(std::move(delta_red_)), transcript(std::move(transcript_)),
          h0(std::move(h0_)), cbar(std::move(cbar_)), mprime(mprime_) {}

    Kind kind;
    int index; // 0/1 for the two split places
    Place below;
    int e, f;

    // local Artin-Schreier data at the base place:
    // delta = delta_red + wp(transcript), with v(delta_red) >= 0 or odd < 0
    RatFun delta_red;
    RatFun transcript;
    RElem h0;   // split: residue digit of the eta-image (fixes the place)
    RElem cbar; // inert: residue of delta_red, nonzero trace
    int mprime; // ramified: -v(delta_red), odd

    ResFieldPtr residue_field() const;
    // Ring-homomorphic embedding K -> k_w((pi_w)), exponents known on
    // [w(z), prec); the image of eta satisfies H^2 + H = embed(delta).
    LaurentSeries embed(const SepCtx& K, const KElem& z, int prec) const;
    int valuation(const SepCtx& K, const KElem& z) const; // kValInfinity for 0

    static int cmp(const PlaceAbove& a, const PlaceAbove& b);
    std::string to_string(const std::string& var) const;
};

// ---------------------------------------------------------------- SepCtx

// K = F(eta), eta^2 + eta = delta with delta not in wp(F).
struct SepCtx {
    RatCtx base;
    RatFun delta;
    using Elem = KElem;

    static SepCtx make(RatCtx base_ctx, RatFun delta);

    const Fq& fq() const { return *base.F; }

    KElem zero() const { return {RatFun::zero(fq()), RatFun::zero(fq())}; }
    KElem one() const { return {RatFun::one(fq()), RatFun::zero(fq())}; }
    KElem eta() const { return {RatFun::zero(fq()), RatFun::one(fq())}; }
    KElem embed(const RatFun& f) const { return {f, RatFun::zero(fq())}; }

    KElem add(const KElem& a, const KElem& b) const { return {a.x + b.x, a.y + b.y}; }
    KElem mul(const KElem& a, const KElem& b) const;
    KElem inv(const KElem& a) const;
    KElem div(const KElem& a, const KElem& b) const { return mul(a, inv(b)); }
    KElem sqr(const KElem& a) const { return mul(a, a); }
    KElem wp(const KElem& a) const { return add(sqr(a), a); }

    KElem conj(const KElem& a) const { return {a.x + a.y, a.y}; }
    RatFun trace(const KElem& a) const { return a.y; }
    RatFun norm(const KElem& a) const { return a.x * a.x + a.x * a.y + delta * a.y * a.y; }

    bool operator==(const SepCtx& o) const { return base == o.base && delta == o.delta; }
};

std::optional<KElem> is_square_K(const SepCtx& K, const KElem& z);
// z in wp(K)? Witness w with wp(w) = z when true.
std::pair<bool, std::optional<KElem>> is_in_wp_K(const SepCtx& K, const KElem& z);

// z = z0 + t*z1 with z0, z1 in the square subfield K^2, materialized as a
// fresh SepCtx over F_q(t~) with AS constant delta^2 re-expressed.
struct SepSqDecomp {
    SepCtx hat;
    KElem z0, z1;
};
SepSqDecomp decompose_over_square_subfield(const SepCtx& K, const KElem& z);
// The hat context alone, and coordinates without rebuilding it.
SepCtx sep_square_subfield_ctx(const SepCtx& K);
std::pair<KElem, KElem> sep_square_coords(const SepCtx& K, const KElem& z);
// Inverse of the hat renaming, for round-trip checks: hat elem -> K.
KElem sep_unhat(const SepCtx& K, const KElem& hat_elem);

std::vector<PlaceAbove> places_above(const SepCtx& K, const Place& v);

// ---------------------------------------------------------------- InsepCtx

// K = F(sqrt t) = F_q(s), t = s^2: both layers are rational function fields.
struct InsepCtx {
    RatCtx above; // F_q(s)
    RatCtx base;  // F_q(t)

    static InsepCtx make(RatCtx base_ctx, std::string var_above = "");
};

// F -> K, t -> s^2
RatFun insep_embed(const RatFun& f);
// K -> F when the element lies in the base (even part only); else nullopt.
std::optional<RatFun> insep_to_base(const RatFun& z);
// sqrt of an embedded base element: g in K with g^2 = f(s^2).
RatFun insep_sqrt_of_base(const RatFun& f);

} // namespace qdesc
