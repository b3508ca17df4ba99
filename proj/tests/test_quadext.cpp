#include <doctest.h>

#include <map>
#include <random>

#include "qdesc/quadext.hpp"

using namespace qdesc;

namespace {

RatFun random_ratfun(const Fq& F, int height, std::mt19937_64& rng) {
    static std::map<std::pair<int, int>, std::vector<RatFun>> cache;
    auto& all = cache[{F.k(), height}];
    if (all.empty()) all = enumerate_ratfun(F, height);
    return all[rng() % all.size()];
}

SepCtx make_K(const Fq& F, const RatFun& delta) {
    return SepCtx::make(RatCtx{&F, "t"}, delta);
}

KElem random_kelem(const SepCtx& K, int height, std::mt19937_64& rng) {
    return {random_ratfun(K.fq(), height, rng), random_ratfun(K.fq(), height, rng)};
}

} // namespace

TEST_SUITE_BEGIN("quadext");

TEST_CASE("SepCtx construction rejects delta in wp(F)") {
    const Fq& F = Fq::get(1);
    RatFun t = RatFun::var(F);
    CHECK_THROWS_AS(make_K(F, t * t + t), std::invalid_argument);
    CHECK_NOTHROW(make_K(F, t));
    CHECK_NOTHROW(make_K(F, t * t * t));
}

TEST_CASE("trace, norm, conj") {
    const Fq& F = Fq::get(1);
    RatFun t = RatFun::var(F);
    SepCtx K = make_K(F, t);

    KElem a{t + RatFun::one(F), t * t};
    CHECK(K.trace(a) == t * t);
    CHECK(K.trace(K.embed(t)).is_zero());
    CHECK(K.norm(K.eta()) == K.delta);

    std::mt19937_64 rng(41);
    for (int i = 0; i < 30; ++i) {
        KElem z = random_kelem(K, 2, rng), w = random_kelem(K, 2, rng);
        CHECK(K.conj(K.conj(z)) == z);
        CHECK(K.conj(K.mul(z, w)) == K.mul(K.conj(z), K.conj(w)));
        CHECK(K.conj(K.add(z, w)) == K.add(K.conj(z), K.conj(w)));
        CHECK(K.conj(K.embed(z.x)) == K.embed(z.x));
        // trace(z) = z + conj(z) as the eta-free identity
        KElem s = K.add(z, K.conj(z));
        CHECK(s.x == K.trace(z));     // x + (x+y) = y
        CHECK(s.y.is_zero());
        if (!z.is_zero()) {
            CHECK(K.mul(z, K.inv(z)) == K.one());
            CHECK(K.mul(z, K.conj(z)) == K.embed(K.norm(z)));
        }
    }
}

TEST_CASE("is_square_K") {
    const Fq& F = Fq::get(1);
    RatFun t = RatFun::var(F);
    SepCtx K = make_K(F, t);

    auto s = is_square_K(K, K.embed(t * t));
    REQUIRE(s.has_value());
    CHECK(*s == K.embed(t));
    CHECK(!is_square_K(K, K.eta()).has_value());

    std::mt19937_64 rng(43);
    for (int i = 0; i < 40; ++i) {
        KElem z = random_kelem(K, 2, rng);
        auto w = is_square_K(K, K.sqr(z));
        REQUIRE(w.has_value());
        CHECK(K.sqr(*w) == K.sqr(z));
    }
}

TEST_CASE("is_in_wp_K") {
    const Fq& F = Fq::get(1);
    RatFun t = RatFun::var(F);
    SepCtx K = make_K(F, t);

    auto [ok, w] = is_in_wp_K(K, K.embed(K.delta));
    CHECK(ok);
    CHECK(K.wp(*w) == K.embed(K.delta)); // wp(eta) = delta

    auto [ok2, w2] = is_in_wp_K(K, K.eta());
    CHECK(!ok2);
    // bounded confirmation
    for (const RatFun& x : enumerate_ratfun(F, 1))
        for (const RatFun& y : enumerate_ratfun(F, 1))
            CHECK(!(K.wp(KElem{x, y}) == K.eta()));

    std::mt19937_64 rng(47);
    for (int i = 0; i < 40; ++i) {
        KElem z = random_kelem(K, 2, rng);
        auto [yes, wit] = is_in_wp_K(K, K.wp(z));
        REQUIRE(yes);
        CHECK(K.wp(*wit) == K.wp(z));
    }
}

TEST_CASE("square subfield decomposition") {
    const Fq& F = Fq::get(1);
    RatFun t = RatFun::var(F);
    SepCtx K = make_K(F, t * t * t);

    // z = t -> (0, 1)
    auto d1 = decompose_over_square_subfield(K, K.embed(t));
    CHECK(d1.z0.is_zero());
    CHECK(d1.z1 == d1.hat.one());

    // z = eta -> (eta~ + delta0, delta1) with delta = delta0(t^2) + t delta1(t^2)
    auto d2 = decompose_over_square_subfield(K, K.eta());
    auto [del0, del1] = K.delta.square_subfield_coords();
    CHECK(d2.z0 == d2.hat.add(d2.hat.eta(), d2.hat.embed(del0)));
    CHECK(d2.z1 == d2.hat.embed(del1));

    std::mt19937_64 rng(53);
    for (int i = 0; i < 40; ++i) {
        KElem z = random_kelem(K, 2, rng);
        auto d = decompose_over_square_subfield(K, z);
        KElem back = K.add(sep_unhat(K, d.z0), K.mul(K.embed(t), sep_unhat(K, d.z1)));
        CHECK(back == z);
    }
}

TEST_CASE("places_above classification for delta = t") {
    const Fq& F = Fq::get(1);
    RatFun t = RatFun::var(F);
    SepCtx K = make_K(F, t);

    auto at_t = places_above(K, Place::finite(Poly::x(F)));
    REQUIRE(at_t.size() == 2);
    CHECK(at_t[0].kind == PlaceAbove::Kind::Split);

    auto at_t1 = places_above(K, Place::finite(Poly(F, {1, 1})));
    REQUIRE(at_t1.size() == 1);
    CHECK(at_t1[0].kind == PlaceAbove::Kind::Inert);
    CHECK(at_t1[0].f == 2);

    auto at_inf = places_above(K, Place::infinity(F));
    REQUIRE(at_inf.size() == 1);
    CHECK(at_inf[0].kind == PlaceAbove::Kind::Ramified);
    CHECK(at_inf[0].e == 2);
}

TEST_CASE("sum of e*f is 2 above every place") {
    const Fq& F = Fq::get(1);
    RatFun t = RatFun::var(F);
    std::vector<Place> base = {
        Place::finite(Poly::x(F)),
        Place::finite(Poly(F, {1, 1})),
        Place::finite(Poly(F, {1, 1, 1})),
        Place::infinity(F),
    };
    for (const RatFun& delta : {t, t * t * t, RatFun::one(F) / t, t + RatFun::one(F) / (t * t + t)}) {
        auto [inwp, wit] = is_in_wp_global(delta);
        if (inwp) continue;
        SepCtx K = make_K(F, delta);
        for (const Place& v : base) {
            int total = 0;
            for (const PlaceAbove& w : places_above(K, v)) total += w.e * w.f;
            CHECK(total == 2);
        }
    }
}

TEST_CASE("embeddings satisfy the eta relation and are multiplicative") {
    const Fq& F = Fq::get(1);
    RatFun t = RatFun::var(F);
    std::mt19937_64 rng(59);
    for (const RatFun& delta : {t, t * t * t}) {
        SepCtx K = make_K(F, delta);
        std::vector<Place> base = {
            Place::finite(Poly::x(F)),
            Place::finite(Poly(F, {1, 1})),
            Place::finite(Poly(F, {1, 1, 1})),
            Place::infinity(F),
        };
        for (const Place& v : base) {
            for (const PlaceAbove& w : places_above(K, v)) {
                const int prec = 8;
                LaurentSeries H = w.embed(K, K.eta(), prec);
                LaurentSeries D = w.embed(K, K.embed(delta), prec);
                CHECK(LaurentSeries::eq_to_shared_prec(H * H + H, D));
                for (int i = 0; i < 6; ++i) {
                    KElem z = random_kelem(K, 1, rng);
                    KElem u = random_kelem(K, 1, rng);
                    if (z.is_zero() || u.is_zero()) continue;
                    LaurentSeries sz = w.embed(K, z, prec);
                    LaurentSeries su = w.embed(K, u, prec);
                    LaurentSeries szu = w.embed(K, K.mul(z, u), prec);
                    LaurentSeries ssum = w.embed(K, K.add(z, u), prec);
                    CHECK(LaurentSeries::eq_to_shared_prec(szu, sz * su));
                    CHECK(LaurentSeries::eq_to_shared_prec(ssum, sz + su));
                    CHECK(w.valuation(K, z) == sz.start());
                }
            }
        }
    }
}

TEST_CASE("inseparable helpers") {
    const Fq& F = Fq::get(1);
    InsepCtx K = InsepCtx::make(RatCtx{&F, "t"});
    CHECK(K.above.var == "s");

    std::mt19937_64 rng(61);
    for (int i = 0; i < 30; ++i) {
        RatFun f = random_ratfun(F, 2, rng);
        RatFun up = insep_embed(f);
        auto back = insep_to_base(up);
        REQUIRE(back.has_value());
        CHECK(*back == f);
        RatFun r = insep_sqrt_of_base(f);
        CHECK(r * r == up);
    }
    RatFun s = RatFun::var(F); // the variable of K read as s
    CHECK(!insep_to_base(s).has_value());
}

TEST_SUITE_END();
