// Dense univariate polynomials over F_q.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdesc/fq.hpp"

namespace qdesc {

// Coefficient i of x^i; no leading zero; the zero polynomial is the empty list.
class Poly {
public:
    explicit Poly(const Fq& F) : F_(&F) {}
    Poly(const Fq& F, std::vector<uint8_t> coeffs) : F_(&F), c_(std::move(coeffs)) { trim(); }

    static Poly zero(const Fq& F) { return Poly(F); }
    static Poly constant(const Fq& F, uint8_t a) { return Poly(F, {a}); }
    static Poly x(const Fq& F) { return Poly(F, {0, 1}); }
    // x + a (a root marker), etc. built via from coeffs.

    const Fq& field() const { return *F_; }
    int degree() const { return int(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    uint8_t coeff(int i) const { return (i >= 0 && i < int(c_.size())) ? c_[i] : 0; }
    uint8_t lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<uint8_t>& coeffs() const { return c_; }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
    Poly& operator*=(const Poly& b) { *this = *this * b; return *this; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly scaled(uint8_t a) const;            // a * this
    Poly shifted(int n) const;               // * x^n, n >= 0
    Poly monic() const;                      // unit-normalized; zero stays zero
    Poly derivative() const;

    // Division with remainder; b != 0.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    FqElem eval(FqElem at) const;

    // p(x) -> p(x^2)
    Poly substituted_square() const;
    // p = A(x^2) + x*B(x^2); returns {A, B}
    std::pair<Poly, Poly> even_odd_split() const;
    // Sum c_i x^i -> Sum c_i^2 x^i  (so that p(x)^2 = frobenius_coeffs(p)(x^2))
    Poly frobenius_coeffs() const;
    // Exact square root if all odd coefficients vanish.
    std::optional<Poly> sqrt() const;

    // Canonical total order: by degree, then coefficients from constant term up.
    static int cmp(const Poly& a, const Poly& b);

    std::string to_string(const std::string& var) const;

private:
    void trim() { while (!c_.empty() && c_.back() == 0) c_.pop_back(); }
    const Fq* F_;
    std::vector<uint8_t> c_;
};

Poly gcd(Poly a, Poly b);                               // monic gcd
// g = gcd(a,b) monic, with u*a + v*b = g.
struct EGcd { Poly g, u, v; };
EGcd egcd(const Poly& a, const Poly& b);

Poly pow_mod(const Poly& base, uint64_t e, const Poly& mod);
// x -> x^(q^steps) mod f, by iterated q-th powers (avoids 64-bit overflow).
Poly frobenius_pow_mod(const Poly& base, int steps, const Poly& mod);

// Monic irreducible factors with multiplicities, canonically sorted.
// Deterministic for a fixed seed (seed only breaks ties inside equal-degree
// splitting; the sorted output is seed-independent).
std::vector<std::pair<Poly, int>> factor_poly(const Poly& p, uint64_t seed = 0x9e3779b97f4a7c15ull);

bool is_irreducible(const Poly& p);

} // namespace qdesc
