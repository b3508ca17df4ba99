#include "qdesc/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdesc {

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<uint8_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(int(i)) ^ b.coeff(int(i));
    return Poly(*a.F_, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(*a.F_);
    const Fq& F = *a.F_;
    std::vector<uint8_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] ^= F.mul(a.c_[i], b.c_[j]);
    }
    return Poly(F, std::move(c));
}

Poly Poly::scaled(uint8_t a) const {
    if (a == 0) return Poly(*F_);
    std::vector<uint8_t> c(c_);
    for (auto& x : c) x = F_->mul(x, a);
    return Poly(*F_, std::move(c));
}

Poly Poly::shifted(int n) const {
    if (is_zero()) return *this;
    std::vector<uint8_t> c(c_.size() + size_t(n), 0);
    std::copy(c_.begin(), c_.end(), c.begin() + n);
    return Poly(*F_, std::move(c));
}

Poly Poly::monic() const {
    if (is_zero() || c_.back() == 1) return *this;
    return scaled(F_->inv(c_.back()));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(*F_);
    std::vector<uint8_t> c(c_.size() - 1, 0);
    for (size_t i = 1; i < c_.size(); ++i)
        if (i & 1) c[i - 1] = c_[i]; // i*c_i with i mod 2
    return Poly(*F_, std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("Poly::divmod: division by zero");
    const Fq& F = *a.F_;
    if (a.degree() < b.degree()) return {Poly(F), a};
    std::vector<uint8_t> r = a.c_;
    std::vector<uint8_t> q(size_t(a.degree() - b.degree()) + 1, 0);
    uint8_t binv = F.inv(b.lead());
    for (int i = a.degree(); i >= b.degree(); --i) {
        uint8_t cur = r[size_t(i)];
        if (cur == 0) continue;
        uint8_t f = F.mul(cur, binv);
        q[size_t(i - b.degree())] = f;
        for (int j = 0; j <= b.degree(); ++j)
            r[size_t(i - b.degree() + j)] ^= F.mul(f, b.c_[size_t(j)]);
    }
    return {Poly(F, std::move(q)), Poly(F, std::move(r))};
}

FqElem Poly::eval(FqElem at) const {
    uint8_t acc = 0;
    for (size_t i = c_.size(); i-- > 0;)
        acc = F_->add(F_->mul(acc, at.v), c_[i]);
    return {*F_, acc};
}

Poly Poly::substituted_square() const {
    if (is_zero()) return *this;
    std::vector<uint8_t> c(2 * c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) c[2 * i] = c_[i];
    return Poly(*F_, std::move(c));
}

std::pair<Poly, Poly> Poly::even_odd_split() const {
    std::vector<uint8_t> a, b;
    for (size_t i = 0; i < c_.size(); ++i)
        ((i & 1) ? b : a).push_back(c_[i]);
    return {Poly(*F_, std::move(a)), Poly(*F_, std::move(b))};
}

Poly Poly::frobenius_coeffs() const {
    std::vector<uint8_t> c(c_);
    for (auto& x : c) x = F_->mul(x, x);
    return Poly(*F_, std::move(c));
}

std::optional<Poly> Poly::sqrt() const {
    auto [a, b] = even_odd_split();
    if (!b.is_zero()) return std::nullopt;
    std::vector<uint8_t> c(a.coeffs());
    for (auto& x : c) x = F_->sqrt(x);
    return Poly(*F_, std::move(c));
}

int Poly::cmp(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
    }
    return 0;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        uint8_t c = coeff(i);
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(unsigned(c));
        } else {
            if (c != 1) out += std::to_string(unsigned(c)) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

EGcd egcd(const Poly& a, const Poly& b) {
    const Fq& F = a.field();
    Poly r0 = a, r1 = b;
    Poly u0 = Poly::constant(F, 1), u1 = Poly(F);
    Poly v0 = Poly(F), v1 = Poly::constant(F, 1);
    while (!r1.is_zero()) {
        auto [q, r] = Poly::divmod(r0, r1);
        Poly u2 = u0 + q * u1;
        Poly v2 = v0 + q * v1;
        r0 = std::move(r1); r1 = std::move(r);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (!r0.is_zero() && r0.lead() != 1) {
        uint8_t s = F.inv(r0.lead());
        r0 = r0.scaled(s); u0 = u0.scaled(s); v0 = v0.scaled(s);
    }
    return {r0, u0, v0};
}

Poly pow_mod(const Poly& base, uint64_t e, const Poly& mod) {
    const Fq& F = base.field();
    Poly r = Poly::constant(F, 1);
    Poly b = base % mod;
    while (e) {
        if (e & 1) r = (r * b) % mod;
        b = (b * b) % mod;
        e >>= 1;
    }
    return r;
}

Poly frobenius_pow_mod(const Poly& base, int steps, const Poly& mod) {
    Poly r = base % mod;
    uint64_t q = base.field().q();
    for (int i = 0; i < steps; ++i) r = pow_mod(r, q, mod);
    return r;
}

bool is_irreducible(const Poly& p) {
    if (p.degree() <= 0) return false;
    if (p.degree() == 1) return true;
    const Fq& F = p.field();
    int n = p.degree();
    Poly x = Poly::x(F);
    // x^{q^n} == x mod p, and gcd(x^{q^d} - x, p) == 1 for proper divisors d.
    Poly xp = frobenius_pow_mod(x, n, p);
    if (!( (xp + x) % p ).is_zero()) return false;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        Poly xd = frobenius_pow_mod(x, d, p);
        if (!gcd(xd + x, p).is_one()) return false;
    }
    return true;
}

} // namespace qdesc
