#include "qdesc/fq.hpp"

namespace qdesc {

namespace {

// Fixed irreducible moduli over F_2, degree k.
constexpr uint16_t kModuli[9] = {
    0,
    0b10,         // x
    0b111,        // x^2+x+1
    0b1011,       // x^3+x+1
    0b10011,      // x^4+x+1
    0b100101,     // x^5+x^2+1
    0b1000011,    // x^6+x+1
    0b10000011,   // x^7+x+1
    0b100011011,  // x^8+x^4+x^3+x+1
};

int bitdeg(uint32_t p) {
    int d = -1;
    while (p) { ++d; p >>= 1; }
    return d;
}

// Carry-less multiply then reduce modulo mod (degree k).
uint8_t clmul_mod(uint8_t a, uint8_t b, uint16_t mod, int k) {
    uint32_t acc = 0;
    for (int i = 0; i < 8; ++i)
        if (b & (1u << i)) acc ^= uint32_t(a) << i;
    for (int d = bitdeg(acc); d >= k; d = bitdeg(acc))
        acc ^= uint32_t(mod) << (d - k);
    return uint8_t(acc);
}

bool bitpoly_irreducible(uint32_t f) {
    int n = bitdeg(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    // trial division by every polynomial of degree 1..n/2
    for (int d = 1; 2 * d <= n; ++d) {
        for (uint32_t g = (1u << d); g < (2u << d); ++g) {
            uint32_t r = f;
            for (int e = bitdeg(r); e >= d; e = bitdeg(r))
                r ^= g << (e - d);
            if (r == 0) return false;
        }
    }
    return true;
}

} // namespace

Fq::Fq(int k) : k_(k), mod_(kModuli[k]) {
    if (k < 1 || k > 8) throw std::invalid_argument("Fq: k must be in 1..8");
    if (!bitpoly_irreducible(mod_)) throw std::logic_error("Fq: modulus not irreducible");
    unsigned q = 1u << k;

    mul_table_ = std::make_unique<std::array<uint8_t, 65536>>();
    mul_table_->fill(0);
    for (unsigned a = 0; a < q; ++a)
        for (unsigned b = 0; b < q; ++b)
            (*mul_table_)[(a << 8) | b] = clmul_mod(uint8_t(a), uint8_t(b), mod_, k);
    mul_ = mul_table_->data();

    inv_.fill(0);
    sqrt_.fill(0);
    trace_.fill(0);
    wp_.fill(0xff);
    for (unsigned a = 0; a < q; ++a) {
        uint8_t s = mul(uint8_t(a), uint8_t(a));
        sqrt_[s] = uint8_t(a);
        // Tr(a) = a + a^2 + ... + a^{2^{k-1}}
        uint8_t t = 0, x = uint8_t(a);
        for (int i = 0; i < k; ++i) {
            t ^= x;
            x = mul(x, x);
        }
        trace_[a] = t; // lands in F_2 = {0,1}
        uint8_t w = add(mul(uint8_t(a), uint8_t(a)), uint8_t(a));
        if (wp_[w] == 0xff) wp_[w] = uint8_t(a);
    }
    for (unsigned a = 1; a < q; ++a)
        for (unsigned b = 1; b < q; ++b)
            if (mul(uint8_t(a), uint8_t(b)) == 1) inv_[a] = uint8_t(b);
}

const Fq& Fq::get(int k) {
    if (k < 1 || k > 8) throw std::invalid_argument("Fq::get: k must be in 1..8");
    static const std::array<std::unique_ptr<const Fq>, 9> cache = [] {
        std::array<std::unique_ptr<const Fq>, 9> c;
        for (int i = 1; i <= 8; ++i) c[i] = std::unique_ptr<const Fq>(new Fq(i));
        return c;
    }();
    return *cache[k];
}

uint8_t Fq::inv(uint8_t a) const {
    if (a == 0) throw std::invalid_argument("Fq: division by zero");
    return inv_[a];
}

uint8_t Fq::pow(uint8_t a, uint64_t e) const {
    uint8_t r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

uint8_t Fq::solve_wp(uint8_t c) const {
    if (trace_[c] != 0) throw std::invalid_argument("Fq::solve_wp: nonzero trace");
    return wp_[c];
}

} // namespace qdesc
