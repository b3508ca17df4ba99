#include "qdesc/ratfun.hpp"

#include <stdexcept>

namespace qdesc {

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("RatFun: zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.field(), 1);
        return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    if (den_.lead() != 1) {
        uint8_t u = num_.field().inv(den_.lead());
        num_ = num_.scaled(u);
        den_ = den_.scaled(u);
    }
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw std::invalid_argument("RatFun: division by zero");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

RatFun RatFun::inverse() const {
    if (is_zero()) throw std::invalid_argument("RatFun: inverse of zero");
    return RatFun(den_, num_);
}

std::pair<RatFun, RatFun> RatFun::square_subfield_coords() const {
    // f = n/d = n*d/d^2, split n*d = A(t^2) + t*B(t^2); d^2 = D(t^2).
    Poly nd = num_ * den_;
    auto [a, b] = nd.even_odd_split();
    Poly dd = den_.frobenius_coeffs(); // den^2 = dd(t^2)
    return {RatFun(a, dd), RatFun(b, dd)};
}

std::optional<RatFun> is_square_ratfun(const RatFun& f) {
    auto n = f.num().sqrt();
    if (!n) return std::nullopt;
    auto d = f.den().sqrt();
    if (!d) return std::nullopt;
    return RatFun(*n, *d);
}

std::string RatFun::to_string(const std::string& var) const {
    if (den_.is_one()) {
        if (num_.degree() <= 0) return num_.to_string(var);
        return num_.to_string(var);
    }
    std::string n = num_.to_string(var);
    std::string d = den_.to_string(var);
    return "(" + n + ")/(" + d + ")";
}

std::vector<Poly> enumerate_poly(const Fq& F, int bound) {
    std::vector<Poly> out;
    out.push_back(Poly::zero(F));
    unsigned q = F.q();
    for (int d = 0; d <= bound; ++d) {
        // all polynomials of degree exactly d, coefficient tuples in
        // lexicographic order read from the constant term up
        std::vector<uint8_t> c(size_t(d) + 1, 0);
        c[size_t(d)] = 1;
        for (;;) {
            out.emplace_back(F, c);
            size_t i = 0;
            for (; i < c.size(); ++i) {
                unsigned next = c[i] + 1u;
                bool top = (i == size_t(d));
                if (next < q) {
                    c[i] = uint8_t(next);
                    break;
                }
                c[i] = top ? 1 : 0;
                if (top) i = c.size(); // wrapped the leading coefficient: done
            }
            if (i >= c.size()) break;
        }
    }
    return out;
}

std::vector<RatFun> enumerate_ratfun(const Fq& F, int bound) {
    std::vector<RatFun> out;
    for (int h = 0; h <= bound; ++h) {
        std::vector<Poly> polys = enumerate_poly(F, h);
        for (const Poly& den : polys) {
            if (den.is_zero() || !den.is_monic()) continue;
            for (const Poly& num : polys) {
                if (std::max(num.degree(), den.degree()) != h) continue;
                if (num.is_zero()) {
                    if (den.is_one()) out.push_back(RatFun(F)); // height 0 only
                    continue;
                }
                if (!gcd(num, den).is_one()) continue;
                out.emplace_back(num, den);
            }
        }
    }
    return out;
}

} // namespace qdesc
