#include "qdesc/quadext.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdesc {

namespace {

RatFun ratfun_pow(const RatFun& f, int e) {
    const Fq& F = f.num().field();
    RatFun base = e < 0 ? f.inverse() : f;
    int n = e < 0 ? -e : e;
    RatFun r = RatFun::one(F);
    for (int i = 0; i < n; ++i) r = r * base;
    return r;
}

RatFun uniformizer(const Place& v) {
    const Fq& F = v.fq();
    if (v.is_infinity()) return RatFun::one(F) / RatFun::var(F);
    return RatFun(v.poly());
}

} // namespace

// -------------------------------------------------------------- SepCtx

SepCtx SepCtx::make(RatCtx base_ctx, RatFun delta) {
    auto [in_wp, w] = is_in_wp_global(delta);
    if (in_wp) throw std::invalid_argument("SepCtx: delta in wp(F), extension splits");
    return SepCtx{std::move(base_ctx), std::move(delta)};
}

KElem SepCtx::mul(const KElem& a, const KElem& b) const {
    // (x1+y1 eta)(x2+y2 eta), eta^2 = eta + delta
    RatFun yy = a.y * b.y;
    return {a.x * b.x + yy * delta, a.x * b.y + a.y * b.x + yy};
}

KElem SepCtx::inv(const KElem& a) const {
    if (a.is_zero()) throw std::invalid_argument("SepCtx: inverse of zero");
    RatFun n = norm(a);
    KElem c = conj(a);
    return {c.x / n, c.y / n};
}

std::optional<KElem> is_square_K(const SepCtx& K, const KElem& z) {
    // (u + v eta)^2 = (u^2 + v^2 delta) + v^2 eta
    auto v2 = is_square_ratfun(z.y);
    if (!v2) return std::nullopt;
    auto u2 = is_square_ratfun(z.x + z.y * K.delta);
    if (!u2) return std::nullopt;
    return KElem{*u2, *v2};
}

std::pair<bool, std::optional<KElem>> is_in_wp_K(const SepCtx& K, const KElem& z) {
    // wp(u + v eta) = (u^2+u+v^2 delta) + (v^2+v) eta
    auto [ok_y, wy] = is_in_wp_global(z.y);
    if (!ok_y) return {false, std::nullopt};
    for (const RatFun& v : {*wy.g, *wy.g + RatFun::one(K.fq())}) {
        auto [ok_x, wx] = is_in_wp_global(z.x + v * v * K.delta);
        if (ok_x) {
            KElem w{*wx.g, v};
            if (!(K.wp(w) == z)) throw std::logic_error("is_in_wp_K: witness check failed");
            return {true, w};
        }
    }
    return {false, std::nullopt};
}

SepCtx sep_square_subfield_ctx(const SepCtx& K) {
    // K^2 = F_q(t~)(eta~), eta~ = eta^2, eta~^2 + eta~ = delta^2 = D(t~)
    RatFun delta_hat(K.delta.num().frobenius_coeffs(), K.delta.den().frobenius_coeffs());
    return SepCtx::make(K.base, std::move(delta_hat));
}

std::pair<KElem, KElem> sep_square_coords(const SepCtx& K, const KElem& z) {
    // z = (x + y delta) + y eta~ over K^2, then split each part over F^2
    RatFun u = z.x + z.y * K.delta;
    auto [u0, u1] = u.square_subfield_coords();
    auto [y0, y1] = z.y.square_subfield_coords();
    return {KElem{u0, y0}, KElem{u1, y1}};
}

SepSqDecomp decompose_over_square_subfield(const SepCtx& K, const KElem& z) {
    auto [z0, z1] = sep_square_coords(K, z);
    return {sep_square_subfield_ctx(K), z0, z1};
}

KElem sep_unhat(const SepCtx& K, const KElem& hat_elem) {
    // t~ -> t^2, eta~ -> eta^2 = eta + delta
    RatFun a = hat_elem.x.substituted_square();
    RatFun b = hat_elem.y.substituted_square();
    return {a + b * K.delta, b};
}

// -------------------------------------------------------- places above

std::vector<PlaceAbove> places_above(const SepCtx& K, const Place& v) {
    WpLocalReduction red = wp_reduce_local(K.delta, v);
    int m = valuation(red.reduced, v);
    ResFieldPtr kv = v.residue_field();
    std::vector<PlaceAbove> out;
    auto make = [&](PlaceAbove::Kind kind, int index, int e, int f, RElem h0, RElem cbar, int mprime) {
        return PlaceAbove(kind, index, v, e, f, red.reduced, red.transcript,
                          std::move(h0), std::move(cbar), mprime);
    };
    if (m > 0) {
        out.push_back(make(PlaceAbove::Kind::Split, 0, 1, 1, kv->zero(), kv->zero(), 0));
        out.push_back(make(PlaceAbove::Kind::Split, 1, 1, 1, kv->one(), kv->zero(), 0));
        return out;
    }
    if (m == 0) {
        RElem c = eval_at_place(red.reduced, v);
        if (kv->abs_trace(c) == 0) {
            RElem r = kv->solve_wp(c).value();
            RElem r1 = kv->add(r, kv->one());
            if (ResField::cmp(r1, r) < 0) std::swap(r, r1);
            out.push_back(make(PlaceAbove::Kind::Split, 0, 1, 1, r, kv->zero(), 0));
            out.push_back(make(PlaceAbove::Kind::Split, 1, 1, 1, r1, kv->zero(), 0));
            return out;
        }
        out.push_back(make(PlaceAbove::Kind::Inert, 0, 1, 2, kv->zero(), c, 0));
        return out;
    }
    if ((-m) % 2 == 0) throw std::logic_error("places_above: reduced delta with even pole");
    out.push_back(make(PlaceAbove::Kind::Ramified, 0, 2, 1, kv->zero(), kv->zero(), -m));
    return out;
}

ResFieldPtr PlaceAbove::residue_field() const {
    ResFieldPtr kv = below.residue_field();
    if (kind != Kind::Inert) return kv;
    return ResField::quad_ext(kv, cbar.a);
}

int PlaceAbove::cmp(const PlaceAbove& a, const PlaceAbove& b) {
    int c = Place::cmp(a.below, b.below);
    if (c != 0) return c;
    return a.index - b.index;
}

std::string PlaceAbove::to_string(const std::string& var) const {
    std::string s = below.to_string(var);
    switch (kind) {
        case Kind::Split: s += index == 0 ? "+" : "-"; break;
        case Kind::Inert: s += "~"; break;
        case Kind::Ramified: s += "^"; break;
    }
    return s;
}

// ----------------------------------------------------------- embeddings

namespace {

LaurentSeries lift_series(const LaurentSeries& s, const ResFieldPtr& kw) {
    std::vector<RElem> c;
    c.reserve(size_t(s.prec() - s.start()));
    for (int i = s.start(); i < s.prec(); ++i) c.push_back(RElem{s.coeff(i).a, Poly(kw->fq())});
    return LaurentSeries(kw, s.start(), s.prec(), std::move(c));
}

// Digits of the Artin-Schreier root H with H^2 + H = D, residue digit h0:
// h_i = d_i + h_{i/2}^2 (i even), h_i = d_i (i odd).
LaurentSeries as_root_series(const LaurentSeries& D, const RElem& h0, const ResFieldPtr& k, int prec) {
    std::vector<RElem> h(size_t(prec), k->zero());
    h[0] = h0;
    for (int i = 1; i < prec; ++i) {
        RElem d = i < D.prec() ? D.coeff(i) : k->zero();
        if (i % 2 == 0) d = k->add(d, k->sqr(h[size_t(i / 2)]));
        h[size_t(i)] = d;
    }
    return LaurentSeries(k, 0, prec, std::move(h));
}

struct ZCoords {
    RatFun u, v; // u + v * z
};

} // namespace

LaurentSeries PlaceAbove::embed(const SepCtx& K, const KElem& z, int prec) const {
    if (prec <= 0) throw std::invalid_argument("PlaceAbove::embed: precision must be positive");
    const Fq& F = K.fq();
    ResFieldPtr kv = below.residue_field();

    if (kind == Kind::Split || kind == Kind::Inert) {
        ResFieldPtr kw = kind == Kind::Inert ? residue_field() : kv;
        // pad so that products and sums still reach `prec`
        int vx = z.x.is_zero() ? 0 : std::min(0, qdesc::valuation(z.x, below));
        int vy = z.y.is_zero() ? 0 : std::min(0, qdesc::valuation(z.y, below));
        int vg = transcript.is_zero() ? 0 : std::min(0, qdesc::valuation(transcript, below));
        int pad = 2 * (-vx - vy - vg) + 2;
        int P = prec + pad;
        auto lifted = [&](const RatFun& f) {
            LaurentSeries s = expand(f, below, P);
            return kind == Kind::Inert ? lift_series(s, kw) : s;
        };
        RElem h0w = kind == Kind::Inert ? kw->theta() : h0;
        LaurentSeries H = as_root_series(lifted(delta_red), h0w, kw, P) + lifted(transcript);
        LaurentSeries res = lifted(z.x) + lifted(z.y) * H;
        if (res.prec() < prec) throw std::logic_error("PlaceAbove::embed: precision shortfall");
        return res.truncated(prec);
    }

    // Ramified: z_gen = y_AS * pi^b with wp(y_AS) = delta_red;
    // z_gen^2 = A z_gen + B, A = pi^b, B = delta_red pi^{2b} (Eisenstein).
    int b_exp = (1 + mprime) / 2;
    RatFun pi = uniformizer(below);
    RatFun A = ratfun_pow(pi, b_exp);
    RatFun B = delta_red * ratfun_pow(pi, 2 * b_exp);
    RatFun C0 = z.x + z.y * transcript;
    RatFun C1 = z.y * ratfun_pow(pi, -b_exp);

    auto wval = [&]() {
        int v0 = C0.is_zero() ? kValInfinity : 2 * qdesc::valuation(C0, below);
        int v1 = C1.is_zero() ? kValInfinity : 2 * qdesc::valuation(C1, below) + 1;
        return std::min(v0, v1);
    };
    int start = wval();
    if (start >= prec) return LaurentSeries::zero(kv, prec);
    int lift_levels = (prec - std::min(start, 0)) / 2 + 2;

    std::vector<RElem> digits(size_t(prec - start), kv->zero());
    ZCoords zpow{RatFun::one(F), RatFun::zero(F)}; // z_gen^cur
    int cur = 0;
    auto mul_z = [&](ZCoords c) { return ZCoords{c.v * B, c.u + c.v * A}; };
    auto div_z = [&](ZCoords c) { return ZCoords{(c.u * A + c.v * B) / B, c.u / B}; };
    for (;;) {
        int e = wval();
        if (e >= prec) break;
        RElem c = kv->zero();
        if (((e % 2) + 2) % 2 == 0) {
            c = eval_at_place(C0 * ratfun_pow(pi, -e / 2), below);
        } else {
            int j = (e - 1) / 2; // e odd (possibly negative): e = 2j+1, exact
            c = eval_at_place(C1 * ratfun_pow(pi, -j), below);
        }
        if (kv->is_zero(c)) throw std::logic_error("PlaceAbove::embed: zero leading digit");
        digits[size_t(e - start)] = c;
        while (cur < e) { zpow = mul_z(zpow); ++cur; }
        while (cur > e) { zpow = div_z(zpow); --cur; }
        RatFun L(lift_residue(c, below, lift_levels));
        C0 = C0 + L * zpow.u;
        C1 = C1 + L * zpow.v;
        if (wval() <= e) throw std::logic_error("PlaceAbove::embed: no digit progress");
    }
    return LaurentSeries(kv, start, prec, std::move(digits));
}

int PlaceAbove::valuation(const SepCtx& K, const KElem& z) const {
    if (z.is_zero()) return kValInfinity;
    if (kind == Kind::Ramified) {
        int b_exp = (1 + mprime) / 2;
        RatFun pi = uniformizer(below);
        RatFun C0 = z.x + z.y * transcript;
        RatFun C1 = z.y * ratfun_pow(pi, -b_exp);
        int v0 = C0.is_zero() ? kValInfinity : 2 * qdesc::valuation(C0, below);
        int v1 = C1.is_zero() ? kValInfinity : 2 * qdesc::valuation(C1, below) + 1;
        return std::min(v0, v1);
    }
    // e = 1: w(z) = v(norm) - w(conj z); bound w(conj z) from below to get a
    // certified precision window, then read the leading exponent.
    RatFun nm = K.norm(z);
    int vn = qdesc::valuation(nm, below);
    int vd = K.delta.is_zero() ? 0 : qdesc::valuation(K.delta, below);
    int eta_lb = std::min(0, -( -std::min(vd, 0) / 2 + 1));
    KElem zc = K.conj(z);
    int vzx = zc.x.is_zero() ? kValInfinity : qdesc::valuation(zc.x, below);
    int vzy = zc.y.is_zero() ? kValInfinity : qdesc::valuation(zc.y, below);
    long lb_conj = std::min(long(vzx), long(vzy) + eta_lb);
    long ub = long(vn) - lb_conj;
    int prec = int(std::max(ub + 2, long(2)));
    LaurentSeries s = embed(K, z, prec);
    if (s.known_zero()) throw std::logic_error("PlaceAbove::valuation: nonzero element vanished");
    return s.start();
}

// -------------------------------------------------------------- insep

InsepCtx InsepCtx::make(RatCtx base_ctx, std::string var_above) {
    if (var_above.empty()) var_above = base_ctx.var == "t" ? "s" : base_ctx.var + "s";
    return {RatCtx{base_ctx.F, std::move(var_above)}, std::move(base_ctx)};
}

RatFun insep_embed(const RatFun& f) { return f.substituted_square(); }

std::optional<RatFun> insep_to_base(const RatFun& z) {
    auto [z0, z1] = z.square_subfield_coords();
    if (!z1.is_zero()) return std::nullopt;
    return z0;
}

RatFun insep_sqrt_of_base(const RatFun& f) {
    auto s = is_square_ratfun(f.substituted_square());
    if (!s) throw std::logic_error("insep_sqrt_of_base: embedded element not a square");
    return *s;
}

} // namespace qdesc
