#include "qdesc/places.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdesc {

// ---------------------------------------------------------------- Place

Place Place::finite(Poly p) {
    if (!p.is_monic() || p.degree() < 1)
        throw std::invalid_argument("Place::finite: monic nonconstant polynomial required");
    Place v;
    v.F_ = &p.field();
    v.p_ = std::move(p);
    return v;
}

Place Place::infinity(const Fq& F) {
    Place v;
    v.F_ = &F;
    return v;
}

const Poly& Place::poly() const {
    if (!p_) throw std::invalid_argument("Place: infinite place has no polynomial");
    return *p_;
}

ResFieldPtr Place::residue_field() const {
    if (!p_) return ResField::of_constants(*F_);
    return ResField::base(*F_, *p_);
}

int Place::cmp(const Place& a, const Place& b) {
    if (a.is_infinity() && b.is_infinity()) return 0;
    if (a.is_infinity()) return 1;
    if (b.is_infinity()) return -1;
    return Poly::cmp(*a.p_, *b.p_);
}

std::string Place::to_string(const std::string& var) const {
    if (is_infinity()) return "inf";
    return p_->to_string(var);
}

// ------------------------------------------------------------ valuation

namespace {

int poly_valuation(const Poly& f, const Poly& p) {
    if (f.is_zero()) return kValInfinity;
    int m = 0;
    Poly cur = f;
    for (;;) {
        auto [q, r] = Poly::divmod(cur, p);
        if (!r.is_zero()) return m;
        ++m;
        cur = std::move(q);
    }
}

} // namespace

int valuation(const RatFun& f, const Place& v) {
    if (f.is_zero()) return kValInfinity;
    if (v.is_infinity()) return f.den().degree() - f.num().degree();
    return poly_valuation(f.num(), v.poly()) - poly_valuation(f.den(), v.poly());
}

RElem eval_at_place(const RatFun& f, const Place& v) {
    int m = valuation(f, v);
    if (m < 0) throw std::invalid_argument("eval_at_place: pole");
    ResFieldPtr k = v.residue_field();
    if (m > 0 || f.is_zero()) return k->zero();
    if (v.is_infinity()) {
        // value = ratio of leading coefficients when degrees match
        uint8_t c = (f.num().degree() == f.den().degree())
                        ? f.num().field().div(f.num().lead(), f.den().lead())
                        : 0;
        return k->from_base(Poly::constant(f.num().field(), c));
    }
    return k->eval_ratfun_unit(f.num(), f.den());
}

// -------------------------------------------------------- LaurentSeries

LaurentSeries::LaurentSeries(ResFieldPtr k, int start, int prec, std::vector<RElem> coef)
    : k_(std::move(k)), start_(start), prec_(prec), coef_(std::move(coef)) {
    if (int(coef_.size()) != prec_ - start_)
        throw std::invalid_argument("LaurentSeries: coefficient count mismatch");
    normalize();
}

LaurentSeries LaurentSeries::zero(ResFieldPtr k, int prec) {
    return LaurentSeries(std::move(k), prec, prec, {});
}

void LaurentSeries::normalize() {
    size_t lead = 0;
    while (lead < coef_.size() && k_->is_zero(coef_[lead])) ++lead;
    if (lead > 0) {
        coef_.erase(coef_.begin(), coef_.begin() + long(lead));
        start_ += int(lead);
    }
}

RElem LaurentSeries::coeff(int i) const {
    if (i >= prec_) throw std::logic_error("LaurentSeries::coeff: beyond precision");
    if (i < start_) return k_->zero();
    return coef_[size_t(i - start_)];
}

LaurentSeries LaurentSeries::truncated(int prec) const {
    if (prec >= prec_) return *this;
    int s = std::min(start_, prec);
    std::vector<RElem> c(coef_.begin(), coef_.begin() + long(prec - s));
    return LaurentSeries(k_, s, prec, std::move(c));
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    int prec = std::min(a.prec_, b.prec_);
    int start = std::min({a.start_, b.start_, prec});
    std::vector<RElem> c;
    c.reserve(size_t(prec - start));
    for (int i = start; i < prec; ++i) c.push_back(a.k_->add(a.coeff(i), b.coeff(i)));
    return LaurentSeries(a.k_, start, prec, std::move(c));
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    const auto& k = a.k_;
    if (a.known_zero() || b.known_zero()) {
        int prec = a.known_zero() ? (b.known_zero() ? std::min(a.prec_ + b.prec_, kValInfinity)
                                                    : a.prec_ + b.start_)
                                  : b.prec_ + a.start_;
        return LaurentSeries::zero(k, prec);
    }
    int start = a.start_ + b.start_;
    int prec = std::min(a.prec_ + b.start_, b.prec_ + a.start_);
    std::vector<RElem> c(size_t(prec - start), k->zero());
    for (int i = a.start_; i < a.prec_; ++i) {
        const RElem& ai = a.coeff(i);
        if (k->is_zero(ai)) continue;
        for (int j = b.start_; j < b.prec_ && i + j < prec; ++j) {
            RElem prod = k->mul(ai, b.coeff(j));
            RElem& slot = c[size_t(i + j - start)];
            slot = k->add(slot, prod);
        }
    }
    return LaurentSeries(a.k_, start, prec, std::move(c));
}

LaurentSeries LaurentSeries::inverse() const {
    if (known_zero()) throw std::invalid_argument("LaurentSeries::inverse: zero to precision");
    const auto& k = k_;
    int n = prec_ - start_;
    RElem lead_inv = k->inv(coef_[0]);
    // invert the unit part u = c0 + c1 pi + ... by the usual recursion
    std::vector<RElem> inv(size_t(n), k->zero());
    inv[0] = lead_inv;
    for (int m = 1; m < n; ++m) {
        RElem s = k->zero();
        for (int j = 1; j <= m; ++j)
            s = k->add(s, k->mul(coef_[size_t(j)], inv[size_t(m - j)]));
        inv[size_t(m)] = k->mul(lead_inv, s); // char 2: minus = plus
    }
    return LaurentSeries(k_, -start_, -start_ + n, std::move(inv));
}

LaurentSeries LaurentSeries::derivative() const {
    std::vector<RElem> c;
    c.reserve(coef_.size());
    for (size_t idx = 0; idx < coef_.size(); ++idx) {
        int i = start_ + int(idx);
        c.push_back((i & 1) ? coef_[idx] : k_->zero());
    }
    return LaurentSeries(k_, start_ - 1, prec_ - 1, std::move(c));
}

LaurentSeries LaurentSeries::shifted(int n) const {
    return LaurentSeries(k_, start_ + n, prec_ + n, coef_);
}

RElem LaurentSeries::residue() const {
    if (prec_ <= -1) throw std::logic_error("LaurentSeries::residue: insufficient precision");
    if (-1 < start_) return k_->zero();
    return coef_[size_t(-1 - start_)];
}

bool LaurentSeries::eq_to_shared_prec(const LaurentSeries& a, const LaurentSeries& b) {
    int prec = std::min(a.prec_, b.prec_);
    int lo = std::min(a.start_, b.start_);
    for (int i = lo; i < prec; ++i)
        if (!a.k_->eq(a.coeff(i), b.coeff(i))) return false;
    return true;
}

std::string LaurentSeries::to_string() const {
    std::string out;
    for (int i = start_; i < prec_; ++i) {
        if (k_->is_zero(coeff(i))) continue;
        if (!out.empty()) out += " + ";
        out += "(" + k_->to_string(coeff(i)) + ")*pi^" + std::to_string(i);
    }
    if (out.empty()) out = "0";
    out += " + O(pi^" + std::to_string(prec_) + ")";
    return out;
}

// ------------------------------------------------------------ expansion

namespace {

Poly poly_pow(Poly base, int e) {
    Poly r = Poly::constant(base.field(), 1);
    while (e > 0) {
        if (e & 1) r = r * base;
        if (e >>= 1) base = base * base;
    }
    return r;
}

Poly compose_mod(const Poly& f, const Poly& x, const Poly& mod) {
    const Fq& F = f.field();
    Poly acc(F);
    for (int i = f.degree(); i >= 0; --i) {
        acc = (acc * x) % mod;
        acc = acc + Poly::constant(F, f.coeff(i));
    }
    return acc;
}

Poly inv_mod(const Poly& a, const Poly& mod) {
    EGcd e = egcd(a % mod, mod);
    if (!e.g.is_one()) throw std::logic_error("inv_mod: not invertible");
    return e.u % mod;
}

// Hensel root of p(X) = 0 congruent to t, in F_q[t]/(p^levels): the image of
// the residue generator under the multiplicative section.
Poly hensel_theta(const Poly& p, int levels) {
    const Fq& F = p.field();
    Poly theta = Poly::x(F);
    if (p.degree() == 1) {
        // root is the constant -p(0) (char 2: p(0)); exact at all levels
        return Poly::constant(F, p.coeff(0));
    }
    Poly dp = p.derivative();
    int cur = 1;
    while (cur < levels) {
        cur = std::min(2 * cur, levels);
        Poly mod = poly_pow(p, cur);
        Poly val = compose_mod(p, theta, mod);
        Poly der = compose_mod(dp, theta, mod);
        theta = (theta + val * inv_mod(der, mod)) % mod;
    }
    return theta;
}

struct FiniteExpander {
    const Poly p;
    int levels; // digits to produce
    ResFieldPtr kv;
    std::vector<Poly> pow; // pow[j] = p^j, j <= levels
    Poly theta;

    FiniteExpander(const Place& v, int levels_)
        : p(v.poly()), levels(std::max(levels_, 1)), kv(v.residue_field()),
          theta(hensel_theta(p, std::max(levels_, 1))) {
        pow.reserve(size_t(levels) + 1);
        pow.push_back(Poly::constant(p.field(), 1));
        for (int j = 1; j <= levels; ++j) pow.push_back(pow.back() * p);
    }

    const Poly& pN() const { return pow[size_t(levels)]; }
    Poly lift(const RElem& c) const { return compose_mod(c.a, theta, pN()); }

    std::vector<RElem> digits(Poly g) const {
        std::vector<RElem> out;
        out.reserve(size_t(levels));
        Poly cur = g % pN();
        for (int i = 0; i < levels; ++i) {
            RElem c = kv->from_base(cur % p);
            out.push_back(c);
            if (i + 1 == levels) break;
            auto [q, r] = Poly::divmod(cur + lift(c), p);
            if (!r.is_zero()) throw std::logic_error("FiniteExpander: non-exact digit step");
            cur = q % pow[size_t(levels - i - 1)];
        }
        return out;
    }
};

} // namespace

Poly lift_residue(const RElem& c, const Place& v, int prec_levels) {
    if (v.is_infinity()) return c.a; // constants
    FiniteExpander ex(v, prec_levels);
    return ex.lift(c);
}

LaurentSeries expand(const RatFun& f, const Place& v, int prec) {
    if (prec <= 0) throw std::invalid_argument("expand: precision must be positive");
    ResFieldPtr kv = v.residue_field();
    if (f.is_zero()) return LaurentSeries::zero(kv, prec);
    int m = valuation(f, v);
    int digits_needed = prec - m;
    if (digits_needed <= 0) return LaurentSeries::zero(kv, prec);

    if (v.is_infinity()) {
        // u = 1/t; f = u^m * nrev(u)/drev(u) with unit constant terms
        const Fq& F = f.num().field();
        auto rev = [&](const Poly& g) {
            std::vector<uint8_t> c(g.coeffs().rbegin(), g.coeffs().rend());
            return Poly(F, std::move(c));
        };
        Poly n = rev(f.num()), d = rev(f.den());
        // power series division n/d to digits_needed terms
        uint8_t dinv = F.inv(d.coeff(0));
        std::vector<RElem> out;
        out.reserve(size_t(digits_needed));
        std::vector<uint8_t> rem(n.coeffs());
        rem.resize(size_t(digits_needed + d.degree() + 1), 0);
        for (int i = 0; i < digits_needed; ++i) {
            uint8_t c = F.mul(rem[size_t(i)], dinv);
            out.push_back(kv->from_base(Poly::constant(F, c)));
            if (c != 0)
                for (int j = 0; j <= d.degree(); ++j)
                    rem[size_t(i + j)] ^= F.mul(c, d.coeff(j));
        }
        return LaurentSeries(kv, m, prec, std::move(out));
    }

    const Poly& p = v.poly();
    Poly num = f.num(), den = f.den();
    int vn = poly_valuation(num, p), vd = poly_valuation(den, p);
    for (int i = 0; i < vn; ++i) num = num / p;
    for (int i = 0; i < vd; ++i) den = den / p;
    FiniteExpander ex(v, digits_needed);
    Poly g = (num * inv_mod(den, ex.pN())) % ex.pN();
    return LaurentSeries(kv, m, prec, ex.digits(g));
}

// ------------------------------------------------------------- residues

namespace {

RElem residue_once(const RatFun& a, const RatFun& b, const Place& v, int prec) {
    ResFieldPtr kv = v.residue_field();
    if (a.is_zero()) return kv->zero();
    LaurentSeries A = expand(a, v, prec);
    LaurentSeries B = expand(b, v, prec);
    LaurentSeries q = A * B.derivative() * B.inverse();
    return q.residue();
}

} // namespace

RElem residue_a_dlog_b(const RatFun& a, const RatFun& b, const Place& v) {
    if (b.is_zero()) throw std::invalid_argument("residue_a_dlog_b: b = 0");
    ResFieldPtr kv = v.residue_field();
    if (a.is_zero()) return kv->zero();
    int va = valuation(a, v), vb = valuation(b, v);
    int prec = std::abs(va) + std::abs(vb) + v.degree() + 4;
    RElem r1 = residue_once(a, b, v, prec);
    RElem r2 = residue_once(a, b, v, 2 * prec);
    if (!kv->eq(r1, r2)) throw std::logic_error("residue_a_dlog_b: precision instability");
    return r1;
}

// -------------------------------------------------- Artin-Schreier maps

WpLocalReduction wp_reduce_local(const RatFun& f, const Place& v) {
    const Fq& F = f.is_zero() ? v.fq() : f.num().field();
    RatFun cur = f;
    RatFun transcript = RatFun::zero(F);
    ResFieldPtr kv = v.residue_field();
    for (;;) {
        int m = -valuation(cur, v);
        if (m <= 0 || (m & 1)) break;
        int j = m / 2;
        RatFun term(F);
        if (v.is_infinity()) {
            uint8_t c2 = (cur.num().degree() == cur.den().degree() + m)
                             ? F.div(cur.num().lead(), cur.den().lead())
                             : 0;
            term = RatFun(Poly::constant(F, F.sqrt(c2)).shifted(j));
        } else {
            RatFun h = cur * RatFun(poly_pow(v.poly(), m));
            RElem c2 = kv->eval_ratfun_unit(h.num(), h.den());
            Poly chat = kv->sqrt(c2).a; // any lift of sqrt mod p suffices
            term = RatFun(chat, poly_pow(v.poly(), j));
        }
        cur = cur + term.wp();
        transcript = transcript + term;
        if (-valuation(cur, v) >= m) throw std::logic_error("wp_reduce_local: no progress");
    }
    return {cur, transcript};
}

std::pair<bool, WpWitness> is_in_wp_global(const RatFun& f) {
    const Fq& F = f.num().field();
    WpWitness w;
    RatFun cur = f;
    RatFun g = RatFun::zero(F);
    std::vector<Place> pls = poles_finite(f);
    pls.push_back(Place::infinity(F));
    for (const Place& v : pls) {
        WpLocalReduction red = wp_reduce_local(cur, v);
        cur = red.reduced;
        g = g + red.transcript;
    }
    for (const Place& v : pls) {
        int m = -valuation(cur, v);
        if (m > 0) w.odd_poles.push_back({v, m});
    }
    if (!w.odd_poles.empty()) return {false, w};
    if (!cur.is_constant()) throw std::logic_error("is_in_wp_global: reduction left non-constant");
    uint8_t c0 = cur.num().is_zero() ? 0 : cur.num().coeff(0);
    if (F.trace(c0) != 0) {
        w.residual_constant = c0;
        return {false, w};
    }
    RatFun total = g + RatFun::constant(F, F.solve_wp(c0));
    if (!(total.wp() == f)) throw std::logic_error("is_in_wp_global: witness check failed");
    w.g = total;
    return {true, w};
}

// -------------------------------------------------------------- support

std::vector<Place> support_finite(const RatFun& f) {
    std::vector<Place> out;
    if (f.is_zero()) return out;
    for (const Poly& part : {f.num(), f.den()}) {
        if (part.degree() < 1) continue;
        for (auto& [p, m] : factor_poly(part)) out.push_back(Place::finite(p));
    }
    std::sort(out.begin(), out.end(), [](const Place& a, const Place& b) { return Place::cmp(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Place> poles_finite(const RatFun& f) {
    std::vector<Place> out;
    if (f.is_zero() || f.den().degree() < 1) return out;
    for (auto& [p, m] : factor_poly(f.den())) out.push_back(Place::finite(p));
    return out;
}

} // namespace qdesc
