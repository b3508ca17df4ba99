// Bilinear Pfister forms in characteristic 2: Q-sets over the square
// subfield, the Arason decomposition index, and isometry criteria.
#pragma once

#include <array>
#include <stdexcept>

#include "qdesc/field_ops.hpp"

namespace qdesc {

enum class Tri { Yes, No, Unknown };

template <class Ctx>
struct PfisterForm {
    std::vector<typename Ctx::Elem> slots; // nonzero
    int n() const { return int(slots.size()); }
};

template <class Ctx>
PfisterForm<Ctx> make_pfister(const Ctx& c, std::vector<typename Ctx::Elem> slots) {
    if (slots.empty()) throw std::invalid_argument("make_pfister: at least one slot");
    for (const auto& s : slots)
        if (FieldOps<Ctx>::is_zero(c, s)) throw std::invalid_argument("make_pfister: zero slot");
    return {std::move(slots)};
}

// An E^2-subspace of E in reduced row echelon form over the hat field, with
// respect to the basis {1, t} of E over E^2. Rank is at most 2.
template <class Ctx>
class QSet {
public:
    using Ops = FieldOps<Ctx>;
    using Elem = typename Ctx::Elem;
    using Row = std::array<Elem, 2>;

    explicit QSet(Ctx hat) : hat_(std::move(hat)) {}

    const Ctx& hat_ctx() const { return hat_; }
    int dim() const { return int(rows_.size()); }
    const std::vector<Row>& rows() const { return rows_; }

    // returns true if the row was independent (and was inserted)
    bool insert(Row r) {
        reduce(r);
        int piv = pivot(r);
        if (piv < 0) return false;
        Elem inv = Ops::inv(hat_, r[size_t(piv)]);
        for (auto& x : r) x = Ops::mul(hat_, x, inv);
        for (auto& row : rows_) {
            int p2 = pivot(row);
            if (!Ops::is_zero(hat_, row[size_t(piv)]) && p2 != piv) {
                Elem f = row[size_t(piv)];
                for (int j = 0; j < 2; ++j)
                    row[size_t(j)] = Ops::add(hat_, row[size_t(j)], Ops::mul(hat_, f, r[size_t(j)]));
            }
        }
        rows_.push_back(std::move(r));
        std::sort(rows_.begin(), rows_.end(),
                  [&](const Row& a, const Row& b) { return pivot(a) < pivot(b); });
        return true;
    }

    bool contains_coords(Row r) const {
        reduce(r);
        return pivot(r) < 0;
    }

    friend bool operator==(const QSet& a, const QSet& b) {
        if (a.rows_.size() != b.rows_.size()) return false;
        for (size_t i = 0; i < a.rows_.size(); ++i)
            for (int j = 0; j < 2; ++j)
                if (!Ops::eq(a.hat_, a.rows_[i][size_t(j)], b.rows_[i][size_t(j)])) return false;
        return true;
    }

private:
    int pivot(const Row& r) const {
        for (int j = 0; j < 2; ++j)
            if (!Ops::is_zero(hat_, r[size_t(j)])) return j;
        return -1;
    }
    void reduce(Row& r) const {
        for (const Row& row : rows_) {
            int p = pivot(row);
            if (p < 0 || Ops::is_zero(hat_, r[size_t(p)])) continue;
            Elem f = r[size_t(p)];
            for (int j = 0; j < 2; ++j)
                r[size_t(j)] = Ops::add(hat_, r[size_t(j)], Ops::mul(hat_, f, row[size_t(j)]));
        }
    }

    Ctx hat_;
    std::vector<Row> rows_;
};

// All subset products of the slots (2^n values, mask-ordered).
template <class Ctx>
std::vector<typename Ctx::Elem> subset_products(const Ctx& c, const std::vector<typename Ctx::Elem>& slots) {
    using Ops = FieldOps<Ctx>;
    size_t n = slots.size();
    std::vector<typename Ctx::Elem> out;
    out.reserve(size_t(1) << n);
    out.push_back(Ops::one(c));
    for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
        size_t low = mask & (mask - 1);
        size_t bit = mask ^ low;
        size_t idx = 0;
        while (!(bit & 1)) { bit >>= 1; ++idx; }
        out.push_back(Ops::mul(c, out[low], slots[idx]));
    }
    return out;
}

// Square-subfield span of a generator list (zeros are skipped).
template <class Ctx>
QSet<Ctx> qset_of_generators(const Ctx& c, const std::vector<typename Ctx::Elem>& gens) {
    using Ops = FieldOps<Ctx>;
    QSet<Ctx> q(Ops::hat_ctx(c));
    for (const auto& g : gens) {
        if (Ops::is_zero(c, g)) continue;
        auto [z0, z1] = Ops::square_coords(c, g);
        q.insert({z0, z1});
    }
    return q;
}

// Q(b) = {b(v,v)}: the E^2-algebra generated by the slots.
template <class Ctx>
QSet<Ctx> qset(const Ctx& c, const PfisterForm<Ctx>& b) {
    return qset_of_generators(c, subset_products(c, b.slots));
}

template <class Ctx>
bool qset_contains(const Ctx& c, const QSet<Ctx>& q, const typename Ctx::Elem& e) {
    auto [z0, z1] = FieldOps<Ctx>::square_coords(c, e);
    return q.contains_coords({z0, z1});
}

inline int log2_exact(int d) {
    int r = 0;
    while ((1 << r) < d) ++r;
    if ((1 << r) != d) throw std::logic_error("log2_exact: not a power of two");
    return r;
}

// i(b) = n - log2 dim Q(b); zero iff anisotropic.
template <class Ctx>
int arason_index(const Ctx& c, const PfisterForm<Ctx>& b) {
    int d = qset(c, b).dim();
    int r = log2_exact(d);
    if (r > b.n()) throw std::logic_error("arason_index: Q-set too large");
    return b.n() - r;
}

// Diagonal evaluation: b(v,v) for v = sum c_S e_S.
template <class Ctx>
typename Ctx::Elem form_value(const Ctx& c, const PfisterForm<Ctx>& b,
                              const std::vector<typename Ctx::Elem>& coords) {
    using Ops = FieldOps<Ctx>;
    auto prods = subset_products(c, b.slots);
    if (coords.size() != prods.size()) throw std::invalid_argument("form_value: coordinate count");
    auto acc = Ops::zero(c);
    for (size_t i = 0; i < prods.size(); ++i)
        acc = Ops::add(c, acc, Ops::mul(c, Ops::sqr(c, coords[i]), prods[i]));
    return acc;
}

// Isometry of Pfister forms: complete in the isotropic case (Arason) and for
// one-fold forms; bounded slotwise matching otherwise, never an unverified
// yes/no.
template <class Ctx>
Tri pfister_isometric(const Ctx& c, const PfisterForm<Ctx>& b, const PfisterForm<Ctx>& b2) {
    using Ops = FieldOps<Ctx>;
    if (b.n() != b2.n()) return Tri::No;
    int s = arason_index(c, b), s2 = arason_index(c, b2);
    if (s != s2) return Tri::No;
    if (!(qset(c, b) == qset(c, b2))) return Tri::No;
    if (s >= 1) return Tri::Yes;
    if (b.n() == 1) {
        // <<a>> ~ <<b>> iff a/b is a square (determinant mod squares)
        return Ops::sqrt(c, Ops::div(c, b.slots[0], b2.slots[0])).has_value() ? Tri::Yes : Tri::No;
    }
    // both anisotropic, n >= 2: try slotwise square matching over permutations
    std::vector<size_t> perm(b.slots.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
        bool all = true;
        for (size_t i = 0; i < perm.size() && all; ++i)
            all = Ops::sqrt(c, Ops::div(c, b.slots[i], b2.slots[perm[i]])).has_value();
        if (all) return Tri::Yes;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Tri::Unknown;
}

} // namespace qdesc
