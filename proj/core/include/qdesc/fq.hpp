// Arithmetic in the constant field F_q, q = 2^k, k <= 8.
// Elements are bit-packed polynomials over F_2 modulo a fixed irreducible.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace qdesc {

class Fq {
public:
    // Interned immutable instances, one per k.
    static const Fq& get(int k);

    int k() const { return k_; }
    unsigned q() const { return 1u << k_; }
    uint16_t modulus() const { return mod_; }

    uint8_t add(uint8_t a, uint8_t b) const { return a ^ b; }
    uint8_t mul(uint8_t a, uint8_t b) const { return mul_[(unsigned(a) << 8) | b]; }
    uint8_t inv(uint8_t a) const;
    uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }
    uint8_t sqr(uint8_t a) const { return mul(a, a); }
    // Unique square root: Frobenius x -> x^2 is a bijection.
    uint8_t sqrt(uint8_t a) const { return sqrt_[a]; }
    uint8_t pow(uint8_t a, uint64_t e) const;
    // Absolute trace Tr_{F_q/F_2}.
    int trace(uint8_t a) const { return trace_[a]; }
    // Solve y^2 + y = c; requires trace(c) == 0. The other solution is y+1.
    uint8_t solve_wp(uint8_t c) const;

private:
    explicit Fq(int k);

    int k_;
    uint16_t mod_;
    std::unique_ptr<std::array<uint8_t, 65536>> mul_table_;
    const uint8_t* mul_;   // = mul_table_->data()
    std::array<uint8_t, 256> inv_{};
    std::array<uint8_t, 256> sqrt_{};
    std::array<uint8_t, 256> trace_{};
    std::array<uint8_t, 256> wp_{};      // some solution of y^2+y=c, 0xff if none
};

// Value-semantic element, used at API boundaries.
struct FqElem {
    const Fq* F = nullptr;
    uint8_t v = 0;

    FqElem() = default;
    FqElem(const Fq& f, uint8_t x) : F(&f), v(x) {}

    friend FqElem operator+(FqElem a, FqElem b) { return {*a.F, a.F->add(a.v, b.v)}; }
    friend FqElem operator*(FqElem a, FqElem b) { return {*a.F, a.F->mul(a.v, b.v)}; }
    friend FqElem operator/(FqElem a, FqElem b) { return {*a.F, a.F->div(a.v, b.v)}; }
    friend bool operator==(FqElem a, FqElem b) { return a.v == b.v; }
    bool is_zero() const { return v == 0; }
};

inline FqElem sqrt_fq(FqElem x) { return {*x.F, x.F->sqrt(x.v)}; }

} // namespace qdesc
