#include <doctest.h>

#include <random>

#include <map>
#include "qdesc/places.hpp"

using namespace qdesc;

namespace {

RatFun random_ratfun(const Fq& F, int height, std::mt19937_64& rng) {
    static std::map<std::pair<int, int>, std::vector<RatFun>> cache;
    auto& all = cache[{F.k(), height}];
    if (all.empty()) all = enumerate_ratfun(F, height);
    return all[rng() % all.size()];
}

// substitute the valuation-1 series s into q (test helper for the
// uniformizer-change assertion)
LaurentSeries compose(const LaurentSeries& q, const LaurentSeries& s) {
    const auto& k = q.coeff_field();
    int prec = std::min(q.prec(), s.prec());
    LaurentSeries acc = LaurentSeries::zero(k, prec);
    LaurentSeries spos = s.truncated(prec);
    LaurentSeries sneg = spos.inverse();
    for (int i = q.start(); i < q.prec(); ++i) {
        if (k->is_zero(q.coeff(i))) continue;
        LaurentSeries term(k, 0, prec, [&] {
            std::vector<RElem> c(size_t(prec), k->zero());
            c[0] = q.coeff(i);
            return c;
        }());
        LaurentSeries pw = term;
        const LaurentSeries& base = i >= 0 ? spos : sneg;
        for (int j = 0; j < std::abs(i); ++j) pw = pw * base;
        acc = acc + pw;
    }
    return acc;
}

} // namespace

TEST_SUITE_BEGIN("places");

TEST_CASE("valuation") {
    const Fq& F = Fq::get(1);
    Place vt = Place::finite(Poly::x(F));
    Place v1 = Place::finite(Poly(F, {1, 1}));
    Place vi = Place::infinity(F);

    RatFun f(Poly(F, {0, 0, 0, 1}), Poly(F, {1, 1})); // t^3/(t+1)
    CHECK(valuation(f, vt) == 3);
    CHECK(valuation(RatFun::var(F), vi) == -1);
    RatFun g(Poly(F, {1, 0, 1})); // (t+1)^2
    CHECK(valuation(g, v1) == 2);
    CHECK(valuation(RatFun::zero(F), vt) == kValInfinity);
}

TEST_CASE("expand basic examples") {
    const Fq& F = Fq::get(1);
    Place vt = Place::finite(Poly::x(F));
    Place vi = Place::infinity(F);

    // 1/(1+t) = 1 + t + t^2 + O(t^3)
    LaurentSeries s = expand(RatFun(Poly::constant(F, 1), Poly(F, {1, 1})), vt, 3);
    CHECK(s.start() == 0);
    for (int i = 0; i < 3; ++i) CHECK(s.coeff_field()->eq(s.coeff(i), s.coeff_field()->one()));

    // t at infinity: u^{-1}
    LaurentSeries si = expand(RatFun::var(F), vi, 2);
    CHECK(si.start() == -1);
    CHECK(si.coeff_field()->eq(si.coeff(-1), si.coeff_field()->one()));
    CHECK(si.coeff_field()->is_zero(si.coeff(0)));
    CHECK(si.coeff_field()->is_zero(si.coeff(1)));

    // 1/(t^2+t) = t^{-1} + 1 + t + O(t^2)
    LaurentSeries s2 = expand(RatFun(Poly::constant(F, 1), Poly(F, {0, 1, 1})), vt, 2);
    CHECK(s2.start() == -1);
    CHECK(s2.coeff_field()->eq(s2.coeff(-1), s2.coeff_field()->one()));
    CHECK(s2.coeff_field()->eq(s2.coeff(0), s2.coeff_field()->one()));
    CHECK(s2.coeff_field()->eq(s2.coeff(1), s2.coeff_field()->one()));

    CHECK_THROWS_AS(expand(RatFun::var(F), vt, 0), std::invalid_argument);
}

TEST_CASE("expand is ring-homomorphic, including degree-2 places") {
    const Fq& F = Fq::get(1);
    std::vector<Place> places = {
        Place::finite(Poly::x(F)),
        Place::finite(Poly(F, {1, 1, 1})), // t^2+t+1
        Place::infinity(F),
    };
    std::mt19937_64 rng(17);
    for (const Place& v : places) {
        for (int i = 0; i < 25; ++i) {
            RatFun f = random_ratfun(F, 2, rng);
            RatFun g = random_ratfun(F, 2, rng);
            if (f.is_zero() || g.is_zero()) continue;
            LaurentSeries sf = expand(f, v, 6);
            LaurentSeries sg = expand(g, v, 6);
            LaurentSeries sum = expand(f + g, v, 6);
            LaurentSeries prod = expand(f * g, v, 6);
            CHECK(LaurentSeries::eq_to_shared_prec(sum, sf + sg));
            CHECK(LaurentSeries::eq_to_shared_prec(prod, sf * sg));
        }
    }
}

TEST_CASE("residue examples") {
    const Fq& F = Fq::get(1);
    Place vt = Place::finite(Poly::x(F));
    Place vi = Place::infinity(F);
    RatFun one = RatFun::one(F), t = RatFun::var(F);

    auto kv = vt.residue_field();
    CHECK(kv->eq(residue_a_dlog_b(one, t, vt), kv->one()));
    auto ki = vi.residue_field();
    CHECK(ki->eq(residue_a_dlog_b(one, t, vi), ki->one()));
    CHECK(kv->is_zero(residue_a_dlog_b(one / t, t, vt)));
}

TEST_CASE("residue is invariant under uniformizer change pi -> pi(1+pi)") {
    const Fq& F = Fq::get(1);
    std::vector<Place> places = {Place::finite(Poly::x(F)), Place::finite(Poly(F, {1, 1, 1}))};
    std::mt19937_64 rng(23);
    for (const Place& v : places) {
        auto kv = v.residue_field();
        for (int i = 0; i < 12; ++i) {
            RatFun a = random_ratfun(F, 1, rng);
            RatFun b = random_ratfun(F, 1, rng);
            if (a.is_zero() || b.is_zero()) continue;
            int prec = 10;
            LaurentSeries q = expand(a, v, prec) * expand(b, v, prec).derivative() *
                              expand(b, v, prec).inverse();
            // pi = pi' + pi'^2 + pi'^4 + ... inverts pi' = pi (1 + pi)
            std::vector<RElem> c(size_t(prec - 1), kv->zero());
            for (int e = 1; e < prec; e *= 2) c[size_t(e - 1)] = kv->one();
            LaurentSeries sub(kv, 1, prec, std::move(c));
            // d pi / d pi' = 1 in characteristic 2, so the integrand just composes
            LaurentSeries q2 = compose(q, sub);
            if (q.prec() <= -1 || q2.prec() <= -1) continue;
            CHECK(kv->eq(q.residue(), q2.residue()));
        }
    }
}

TEST_CASE("sum of residues of dlog differentials vanishes") {
    const Fq& F = Fq::get(1);
    std::mt19937_64 rng(29);
    int tested = 0;
    for (int i = 0; tested < 30 && i < 200; ++i) {
        RatFun f = random_ratfun(F, 3, rng);
        if (f.is_zero()) continue;
        ++tested;
        std::vector<Place> pls = support_finite(f);
        pls.push_back(Place::infinity(F));
        uint8_t total = 0;
        for (const Place& v : pls) {
            RElem r = residue_a_dlog_b(RatFun::one(F), f, v);
            total ^= v.residue_field()->trace_to_fq(r).v;
        }
        CHECK(total == 0);
    }
}

TEST_CASE("wp_reduce_local") {
    const Fq& F = Fq::get(1);
    Place vt = Place::finite(Poly::x(F));
    RatFun t = RatFun::var(F);

    auto r1 = wp_reduce_local(RatFun::one(F) / (t * t), vt);
    CHECK(r1.reduced == RatFun::one(F) / t);
    CHECK(r1.reduced == r1.transcript.wp() + RatFun::one(F) / (t * t));

    auto r2 = wp_reduce_local(RatFun::one(F) / t, vt);
    CHECK(r2.reduced == RatFun::one(F) / t);
    CHECK(r2.transcript.is_zero());

    auto r3 = wp_reduce_local(t, vt);
    CHECK(r3.reduced == t);
}

TEST_CASE("is_in_wp_global examples") {
    const Fq& F = Fq::get(1);
    RatFun t = RatFun::var(F);

    auto [yes1, w1] = is_in_wp_global(t * t + t);
    CHECK(yes1);
    REQUIRE(w1.g.has_value());
    CHECK(w1.g->wp() == t * t + t);

    auto [yes2, w2] = is_in_wp_global(t);
    CHECK(!yes2);
    REQUIRE(w2.odd_poles.size() == 1);
    CHECK(w2.odd_poles[0].v.is_infinity());
    CHECK(w2.odd_poles[0].order == 1);

    // t^4 is not in wp(F): wp(t^2+t) = t^4 + t, and the odd remainder at
    // infinity obstructs. Confirm by exhaustion at height <= 4.
    auto [yes3, w3] = is_in_wp_global(t * t * t * t);
    CHECK(!yes3);
    for (const RatFun& g : enumerate_ratfun(F, 4)) CHECK(!(g.wp() == t * t * t * t));
    auto [yes4, w4] = is_in_wp_global(t * t * t * t + t);
    CHECK(yes4);
    CHECK(w4.g->wp() == t * t * t * t + t);

    // constant with nonzero trace
    auto [yes5, w5] = is_in_wp_global(RatFun::one(F));
    CHECK(!yes5);
    REQUIRE(w5.residual_constant.has_value());
    CHECK(*w5.residual_constant == 1);
}

TEST_CASE("wp roundtrip property") {
    std::mt19937_64 rng(31);
    for (int k : {1, 2}) {
        const Fq& F = Fq::get(k);
        for (int i = 0; i < 100; ++i) {
            RatFun g = random_ratfun(F, 3, rng);
            auto [yes, w] = is_in_wp_global(g.wp());
            REQUIRE(yes);
            CHECK(w.g->wp() == g.wp());
        }
    }
}

TEST_CASE("wp non-members certified and confirmed by exhaustion") {
    const Fq& F = Fq::get(1);
    std::mt19937_64 rng(37);
    auto small = enumerate_ratfun(F, 2);
    int nonmembers = 0;
    for (int i = 0; i < 200 && nonmembers < 10; ++i) {
        RatFun f = random_ratfun(F, 2, rng);
        auto [yes, w] = is_in_wp_global(f);
        if (yes) continue;
        ++nonmembers;
        CHECK((!w.odd_poles.empty() || w.residual_constant.has_value()));
        for (const RatFun& g : small) CHECK(!(g.wp() == f));
    }
    CHECK(nonmembers >= 5);
}

TEST_SUITE_END();
