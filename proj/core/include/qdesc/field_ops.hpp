// Uniform compile-time interface over the two field contexts: the rational
// field F_q(t) (which also serves as the inseparable quadratic extension
// F_q(s)) and the separable quadratic extension K = F(eta).
#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "qdesc/quadext.hpp"

namespace qdesc {

template <class Ctx>
struct FieldOps;

template <>
struct FieldOps<RatCtx> {
    using Ctx = RatCtx;
    using Elem = RatFun;
    using PlaceT = Place;

    static const Fq& fq(const Ctx& c) { return *c.F; }
    static Elem zero(const Ctx& c) { return RatFun::zero(*c.F); }
    static Elem one(const Ctx& c) { return RatFun::one(*c.F); }
    static bool is_zero(const Ctx&, const Elem& a) { return a.is_zero(); }
    static bool eq(const Ctx&, const Elem& a, const Elem& b) { return a == b; }
    static Elem add(const Ctx&, const Elem& a, const Elem& b) { return a + b; }
    static Elem mul(const Ctx&, const Elem& a, const Elem& b) { return a * b; }
    static Elem div(const Ctx&, const Elem& a, const Elem& b) { return a / b; }
    static Elem inv(const Ctx&, const Elem& a) { return a.inverse(); }
    static Elem sqr(const Ctx&, const Elem& a) { return a.squared(); }
    static Elem wp(const Ctx&, const Elem& a) { return a.wp(); }

    static Elem embed_base(const Ctx&, const RatFun& f) { return f; }
    static int height(const Ctx&, const Elem& a) { return a.height(); }

    static std::optional<Elem> sqrt(const Ctx&, const Elem& a) { return is_square_ratfun(a); }
    static std::pair<bool, std::optional<Elem>> wp_test(const Ctx&, const Elem& a) {
        auto [ok, w] = is_in_wp_global(a);
        return {ok, w.g};
    }

    static Ctx hat_ctx(const Ctx& c) { return c; }
    // a = z0(t^2) + t z1(t^2); coordinates as elements of the hat field
    static std::pair<Elem, Elem> square_coords(const Ctx&, const Elem& a) {
        return a.square_subfield_coords();
    }
    // hat element h -> the element of the original field whose square is the
    // value h represents (h(t~) stands for h(t^2) in E^2)
    static Elem unhat_sqrt(const Ctx&, const Elem& h) { return insep_sqrt_of_base(h); }
    static Elem unhat(const Ctx&, const Elem& h) { return h.substituted_square(); }
    static Elem conj(const Ctx&, const Elem& a) { return a; } // Galois only acts above

    static std::vector<Elem> enumerate(const Ctx& c, int bound) { return enumerate_ratfun(*c.F, bound); }
    static std::string str(const Ctx& c, const Elem& a) { return a.to_string(c.var); }

    static std::vector<PlaceT> symbol_support(const Ctx& c, const std::vector<Elem>& elems) {
        std::vector<PlaceT> out;
        for (const Elem& e : elems)
            for (Place& v : support_finite(e)) out.push_back(std::move(v));
        out.push_back(Place::infinity(*c.F));
        std::sort(out.begin(), out.end(), [](const Place& a, const Place& b) { return Place::cmp(a, b) < 0; });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    static int place_cmp(const PlaceT& a, const PlaceT& b) { return Place::cmp(a, b); }
    static std::string place_str(const Ctx& c, const PlaceT& v) { return v.to_string(c.var); }

    // local invariant of the quaternion class [a,b) at v:
    // abs_trace(res_v(a_red db / b)) with a_red locally wp-reduced
    static int local_invariant(const Ctx&, const Elem& a, const Elem& b, const PlaceT& v) {
        if (a.is_zero()) return 0;
        RatFun a_red = wp_reduce_local(a, v).reduced;
        RElem r = residue_a_dlog_b(a_red, b, v);
        return v.residue_field()->abs_trace(r);
    }
};

template <>
struct FieldOps<SepCtx> {
    using Ctx = SepCtx;
    using Elem = KElem;
    using PlaceT = PlaceAbove;

    static const Fq& fq(const Ctx& c) { return c.fq(); }
    static Elem zero(const Ctx& c) { return c.zero(); }
    static Elem one(const Ctx& c) { return c.one(); }
    static bool is_zero(const Ctx&, const Elem& a) { return a.is_zero(); }
    static bool eq(const Ctx&, const Elem& a, const Elem& b) { return a == b; }
    static Elem add(const Ctx& c, const Elem& a, const Elem& b) { return c.add(a, b); }
    static Elem mul(const Ctx& c, const Elem& a, const Elem& b) { return c.mul(a, b); }
    static Elem div(const Ctx& c, const Elem& a, const Elem& b) { return c.div(a, b); }
    static Elem inv(const Ctx& c, const Elem& a) { return c.inv(a); }
    static Elem sqr(const Ctx& c, const Elem& a) { return c.sqr(a); }
    static Elem wp(const Ctx& c, const Elem& a) { return c.wp(a); }

    static Elem embed_base(const Ctx& c, const RatFun& f) { return c.embed(f); }
    static int height(const Ctx&, const Elem& a) { return a.height(); }

    static std::optional<Elem> sqrt(const Ctx& c, const Elem& a) { return is_square_K(c, a); }
    static std::pair<bool, std::optional<Elem>> wp_test(const Ctx& c, const Elem& a) {
        return is_in_wp_K(c, a);
    }

    static Ctx hat_ctx(const Ctx& c) { return sep_square_subfield_ctx(c); }
    static std::pair<Elem, Elem> square_coords(const Ctx& c, const Elem& a) {
        return sep_square_coords(c, a);
    }
    static Elem unhat_sqrt(const Ctx& c, const Elem& h) {
        auto r = is_square_K(c, sep_unhat(c, h));
        if (!r) throw std::logic_error("unhat_sqrt: hat element not a square image");
        return *r;
    }
    static Elem unhat(const Ctx& c, const Elem& h) { return sep_unhat(c, h); }
    static Elem conj(const Ctx& c, const Elem& a) { return c.conj(a); }

    static std::vector<Elem> enumerate(const Ctx& c, int bound) {
        std::vector<Elem> out;
        std::vector<RatFun> base = enumerate_ratfun(*c.base.F, bound);
        for (int h = 0; h <= bound; ++h)
            for (const RatFun& x : base) {
                if (x.height() > h) continue;
                for (const RatFun& y : base) {
                    if (std::max(x.height(), y.height()) != h) continue;
                    out.push_back(Elem{x, y});
                }
            }
        return out;
    }
    static std::string str(const Ctx& c, const Elem& a) {
        if (a.y.is_zero()) return a.x.to_string(c.base.var);
        std::string s = "(" + a.y.to_string(c.base.var) + ")*eta";
        if (!a.x.is_zero()) s = a.x.to_string(c.base.var) + "+" + s;
        return s;
    }

    static std::vector<PlaceT> symbol_support(const Ctx& c, const std::vector<Elem>& elems) {
        std::vector<Place> base;
        auto push = [&](const RatFun& f) {
            for (Place& v : support_finite(f)) base.push_back(std::move(v));
        };
        for (const Elem& e : elems) {
            push(e.x);
            push(e.y);
            push(c.norm(e)); // slot zeros live under the norm's support
        }
        push(c.delta);
        base.push_back(Place::infinity(*c.base.F));
        std::sort(base.begin(), base.end(), [](const Place& a, const Place& b) { return Place::cmp(a, b) < 0; });
        base.erase(std::unique(base.begin(), base.end()), base.end());
        std::vector<PlaceT> out;
        for (const Place& v : base)
            for (PlaceAbove& w : places_above(c, v)) out.push_back(std::move(w));
        return out;
    }
    static int place_cmp(const PlaceT& a, const PlaceT& b) { return PlaceAbove::cmp(a, b); }
    static std::string place_str(const Ctx& c, const PlaceT& w) { return w.to_string(c.base.var); }

    static int local_invariant(const Ctx& c, const Elem& a, const Elem& b, const PlaceT& w) {
        if (a.is_zero()) return 0;
        if (b.is_zero()) throw std::invalid_argument("local_invariant: b = 0");
        int va = w.valuation(c, a);
        int vb = w.valuation(c, b);
        int prec = std::abs(va) + std::abs(vb) + w.below.degree() + 6;
        int r1 = invariant_once(c, a, b, w, prec);
        int r2 = invariant_once(c, a, b, w, 2 * prec);
        if (r1 != r2) throw std::logic_error("local_invariant: precision instability");
        return r1;
    }

private:
    static int invariant_once(const Ctx& c, const Elem& a, const Elem& b, const PlaceT& w, int prec) {
        LaurentSeries A = w.embed(c, a, prec);
        LaurentSeries B = w.embed(c, b, prec);
        const ResFieldPtr& kw = A.coeff_field();
        // series-level wp-reduction of A: even pole parts are subtracted by
        // wp(c pi^{-j}), staying in the same class mod wp(K_w); both terms are
        // exact single monomials, so they carry A's full window
        auto term = [&](int e, const RElem& coef) {
            std::vector<RElem> c(size_t(A.prec() - e), kw->zero());
            c[0] = coef;
            return LaurentSeries(kw, e, A.prec(), std::move(c));
        };
        while (!A.known_zero() && A.start() < 0 && ((A.start() % 2) + 2) % 2 == 0) {
            int j = -A.start() / 2;
            RElem chat = kw->sqrt(A.coeff(A.start()));
            int old = A.start();
            A = A + term(-2 * j, kw->sqr(chat)) + term(-j, chat);
            if (!A.known_zero() && A.start() <= old)
                throw std::logic_error("local_invariant: reduction stalled");
        }
        LaurentSeries Q = A * B.derivative() * B.inverse();
        if (Q.prec() <= -1) throw std::logic_error("local_invariant: precision shortfall");
        return kw->abs_trace(Q.residue());
    }
};

} // namespace qdesc
