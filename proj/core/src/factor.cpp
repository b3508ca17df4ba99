// Polynomial factorization over F_q: squarefree part, distinct-degree,
// then equal-degree splitting with the char-2 trace map.
#include "qdesc/poly.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace qdesc {

namespace {

std::vector<std::pair<Poly, int>> squarefree_decompose(const Poly& f0) {
    std::vector<std::pair<Poly, int>> res;
    Poly f = f0.monic();
    if (f.degree() <= 0) return res;
    Poly fp = f.derivative();
    if (fp.is_zero()) {
        Poly h = f.sqrt().value();
        for (auto& [g, m] : squarefree_decompose(h)) res.emplace_back(g, 2 * m);
        return res;
    }
    Poly c = gcd(f, fp);
    Poly w = (f / c).monic();
    int i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = (w / y).monic();
        if (z.degree() > 0) res.emplace_back(z, i);
        w = y;
        c = (c / y).monic();
        ++i;
    }
    if (!c.is_one()) {
        Poly h = c.sqrt().value(); // leftover part is a perfect square
        for (auto& [g, m] : squarefree_decompose(h)) res.emplace_back(g, 2 * m);
    }
    return res;
}

// g squarefree monic; returns (product of degree-d irreducibles, d) pieces.
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& g0) {
    std::vector<std::pair<Poly, int>> res;
    const Fq& F = g0.field();
    Poly g = g0;
    Poly x = Poly::x(F);
    Poly h = x;
    int d = 0;
    while (g.degree() > 2 * d) {
        ++d;
        h = frobenius_pow_mod(h, 1, g);
        Poly piece = gcd(h + x, g);
        if (piece.degree() > 0) {
            res.emplace_back(piece, d);
            g = (g / piece).monic();
            h = h % g;
        }
    }
    if (g.degree() > 0) res.emplace_back(g, g.degree());
    return res;
}

// product of irreducibles all of degree d -> the individual factors
void equal_degree(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    const Fq& F = f.field();
    int k = F.k();
    std::uniform_int_distribution<unsigned> dist(0, F.q() - 1);
    for (;;) {
        std::vector<uint8_t> coeffs(size_t(f.degree()), 0);
        for (auto& c : coeffs) c = uint8_t(dist(rng));
        Poly a(F, std::move(coeffs));
        if (a.degree() < 1) continue;
        // absolute trace map T(a) = sum a^{2^i}, i < d*k; image satisfies T^2+T=0
        Poly t = a % f;
        Poly acc = t;
        for (int i = 1; i < d * k; ++i) {
            t = (t * t) % f;
            acc = acc + t;
        }
        Poly g1 = gcd(acc, f);
        if (g1.degree() > 0 && g1.degree() < f.degree()) {
            equal_degree(g1, d, rng, out);
            equal_degree((f / g1).monic(), d, rng, out);
            return;
        }
        Poly g2 = gcd(acc + Poly::constant(F, 1), f);
        if (g2.degree() > 0 && g2.degree() < f.degree()) {
            equal_degree(g2, d, rng, out);
            equal_degree((f / g2).monic(), d, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<std::pair<Poly, int>> factor_poly(const Poly& p, uint64_t seed) {
    if (p.is_zero()) throw std::invalid_argument("factor_poly: zero polynomial");
    std::vector<std::pair<Poly, int>> out;
    if (p.degree() <= 0) return out;
    std::mt19937_64 rng(seed);
    for (auto& [sf, mult] : squarefree_decompose(p)) {
        for (auto& [piece, d] : distinct_degree(sf)) {
            std::vector<Poly> irr;
            equal_degree(piece, d, rng, irr);
            for (auto& f : irr) out.emplace_back(f, mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int c = Poly::cmp(a.first, b.first);
        if (c != 0) return c < 0;
        return a.second < b.second;
    });
    return out;
}

} // namespace qdesc
