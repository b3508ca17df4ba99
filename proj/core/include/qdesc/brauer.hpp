// Quaternion symbols [a,b), their local invariants, global splitting,
// same-slot isomorphism, and corestriction down the separable extension.
#pragma once

#include <stdexcept>

#include "qdesc/field_ops.hpp"

namespace qdesc {

template <class Ctx>
struct Symbol {
    typename Ctx::Elem a, b; // b != 0
};

template <class Ctx>
class InvariantVector {
public:
    using Ops = FieldOps<Ctx>;
    using PlaceT = typename Ops::PlaceT;

    InvariantVector() = default;

    // entries must be distinct places; zeros are pruned, order canonical
    static InvariantVector from_entries(std::vector<std::pair<PlaceT, int>> entries) {
        InvariantVector v;
        for (auto& [p, bit] : entries)
            if (bit) v.ent_.emplace_back(std::move(p), 1);
        std::sort(v.ent_.begin(), v.ent_.end(),
                  [](const auto& a, const auto& b) { return Ops::place_cmp(a.first, b.first) < 0; });
        for (size_t i = 1; i < v.ent_.size(); ++i)
            if (Ops::place_cmp(v.ent_[i - 1].first, v.ent_[i].first) == 0)
                throw std::invalid_argument("InvariantVector: duplicate place");
        return v;
    }

    bool is_zero() const { return ent_.empty(); }
    size_t support_size() const { return ent_.size(); }
    const std::vector<std::pair<PlaceT, int>>& entries() const { return ent_; }

    int at(const PlaceT& p) const {
        for (const auto& [q, bit] : ent_)
            if (Ops::place_cmp(p, q) == 0) return bit;
        return 0;
    }

    friend InvariantVector operator+(const InvariantVector& a, const InvariantVector& b) {
        InvariantVector out;
        size_t i = 0, j = 0;
        while (i < a.ent_.size() || j < b.ent_.size()) {
            if (j >= b.ent_.size()) out.ent_.push_back(a.ent_[i++]);
            else if (i >= a.ent_.size()) out.ent_.push_back(b.ent_[j++]);
            else {
                int c = Ops::place_cmp(a.ent_[i].first, b.ent_[j].first);
                if (c < 0) out.ent_.push_back(a.ent_[i++]);
                else if (c > 0) out.ent_.push_back(b.ent_[j++]);
                else { ++i; ++j; } // equal entries cancel (2-torsion)
            }
        }
        return out;
    }

    friend bool operator==(const InvariantVector& a, const InvariantVector& b) {
        if (a.ent_.size() != b.ent_.size()) return false;
        for (size_t i = 0; i < a.ent_.size(); ++i)
            if (Ops::place_cmp(a.ent_[i].first, b.ent_[i].first) != 0) return false;
        return true;
    }

private:
    std::vector<std::pair<PlaceT, int>> ent_;
};

// Invariant vector of one symbol; reciprocity (even support) is asserted.
template <class Ctx>
InvariantVector<Ctx> invariant_vector(const Ctx& c, const Symbol<Ctx>& s) {
    using Ops = FieldOps<Ctx>;
    if (Ops::is_zero(c, s.b)) throw std::invalid_argument("invariant_vector: b = 0");
    std::vector<std::pair<typename Ops::PlaceT, int>> ent;
    for (auto& v : Ops::symbol_support(c, {s.a, s.b}))
        ent.emplace_back(v, Ops::local_invariant(c, s.a, s.b, v));
    auto out = InvariantVector<Ctx>::from_entries(std::move(ent));
    if (out.support_size() % 2 != 0)
        throw std::logic_error("invariant_vector: reciprocity violated");
    return out;
}

template <class Ctx>
InvariantVector<Ctx> invariant_vector(const Ctx& c, const std::vector<Symbol<Ctx>>& cls) {
    InvariantVector<Ctx> out;
    for (const Symbol<Ctx>& s : cls) out = out + invariant_vector(c, s);
    return out;
}

template <class Ctx>
bool is_split(const Ctx& c, const Symbol<Ctx>& s) {
    return invariant_vector(c, s).is_zero();
}

template <class Ctx>
bool is_split(const Ctx& c, const std::vector<Symbol<Ctx>>& cls) {
    return invariant_vector(c, cls).is_zero();
}

// [a,b) ~ [c,b): for b a nonsquare this is splitting of [a+c, b); for b a
// square both sides are M_2, so equality is mutual splitting.
template <class Ctx>
bool is_isomorphic_same_slot(const Ctx& ctx, const typename Ctx::Elem& a,
                             const typename Ctx::Elem& c, const typename Ctx::Elem& b) {
    using Ops = FieldOps<Ctx>;
    if (Ops::sqrt(ctx, b).has_value())
        return is_split(ctx, Symbol<Ctx>{a, b}) && is_split(ctx, Symbol<Ctx>{c, b});
    return is_split(ctx, Symbol<Ctx>{Ops::add(ctx, a, c), b});
}

// cor_{K/F}([a,b)_K) ~ [T_{K/F}(a), b)_F for b in F.
inline Symbol<RatCtx> cor_symbol(const SepCtx& K, const KElem& a, const RatFun& b) {
    if (b.is_zero()) throw std::invalid_argument("cor_symbol: b = 0");
    return {K.trace(a), b};
}

// Class of the corestriction of a list of symbols whose slots lie in F.
inline InvariantVector<RatCtx> cor_class(const SepCtx& K, const std::vector<Symbol<SepCtx>>& cls) {
    InvariantVector<RatCtx> out;
    for (const Symbol<SepCtx>& s : cls) {
        if (!s.b.y.is_zero()) throw std::invalid_argument("cor_class: slot outside the base field");
        out = out + invariant_vector(K.base, cor_symbol(K, s.a, s.b.x));
    }
    return out;
}

// Solve lambda = d^2 + d + e^2 b over F by bounded search over e; sound-only.
inline std::optional<std::pair<RatFun, RatFun>> solve_wp_quadratic(const RatCtx& F, const RatFun& lambda,
                                                                   const RatFun& b, int height_bound) {
    for (const RatFun& e : enumerate_ratfun(*F.F, height_bound)) {
        auto [ok, w] = is_in_wp_global(lambda + e * e * b);
        if (ok) return std::make_pair(*w.g, e);
    }
    return std::nullopt;
}

// Find a with invariant_vector([a,b)) = target; curated candidates first,
// then height-bounded enumeration. Exhaustion returns nullopt ("unknown").
template <class Ctx>
std::optional<typename Ctx::Elem> find_symbol_with_slot(const Ctx& c, const InvariantVector<Ctx>& target,
                                                        const typename Ctx::Elem& b,
                                                        const std::vector<typename Ctx::Elem>& candidates,
                                                        int height_bound) {
    using Ops = FieldOps<Ctx>;
    auto matches = [&](const typename Ctx::Elem& a) {
        return invariant_vector(c, Symbol<Ctx>{a, b}) == target;
    };
    for (const auto& a : candidates)
        if (matches(a)) return a;
    if (target.is_zero()) return Ops::zero(c);
    for (const auto& a : Ops::enumerate(c, height_bound))
        if (matches(a)) return a;
    return std::nullopt;
}

} // namespace qdesc
