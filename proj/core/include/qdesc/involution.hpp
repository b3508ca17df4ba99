// Totally decomposable algebras with orthogonal involution, presented by
// quaternion factors [a_i, b_i) in the normal form that fixes u and v and
// sends w to w+v; the Pfister invariant, the Phi-algebra, and presentation
// normalization.
#pragma once

#include "qdesc/biforms.hpp"
#include "qdesc/brauer.hpp"

namespace qdesc {

template <class Ctx>
struct TDInvolution {
    // factor i is ([a_i, b_i), sigma_0); disc sigma_i = b_i mod squares
    std::vector<std::pair<typename Ctx::Elem, typename Ctx::Elem>> factors;
    int n() const { return int(factors.size()); }
};

template <class Ctx>
TDInvolution<Ctx> make_td(const Ctx& c, std::vector<std::pair<typename Ctx::Elem, typename Ctx::Elem>> factors) {
    if (factors.empty()) throw std::invalid_argument("make_td: at least one factor");
    for (auto& [a, b] : factors)
        if (FieldOps<Ctx>::is_zero(c, b)) throw std::invalid_argument("make_td: zero slot");
    return {std::move(factors)};
}

template <class Ctx>
std::vector<Symbol<Ctx>> class_list(const TDInvolution<Ctx>& A) {
    std::vector<Symbol<Ctx>> out;
    for (auto& [a, b] : A.factors) out.push_back({a, b});
    return out;
}

template <class Ctx>
PfisterForm<Ctx> pfister_invariant(const Ctx& c, const TDInvolution<Ctx>& A) {
    std::vector<typename Ctx::Elem> slots;
    for (auto& [a, b] : A.factors) slots.push_back(b);
    return make_pfister(c, std::move(slots));
}

// Phi(A, sigma) presented by its square constants: ctx[x_1..x_n]/(x_i^2 - q_i).
template <class Ctx>
struct PhiAlgebra {
    std::vector<typename Ctx::Elem> constants;
    int n() const { return int(constants.size()); }
    size_t dim() const { return size_t(1) << constants.size(); }
};

template <class Ctx>
PhiAlgebra<Ctx> phi(const Ctx& c, const TDInvolution<Ctx>& A) {
    std::vector<typename Ctx::Elem> q;
    for (auto& [a, b] : A.factors) q.push_back(b);
    (void)c;
    return {std::move(q)};
}

// ------------------------------------------------ Phi symbolic elements

// Elements of Phi as coefficient vectors over the monomial basis x_S.
template <class Ctx>
struct PhiElem {
    std::vector<typename Ctx::Elem> c; // size 2^n
};

template <class Ctx>
PhiElem<Ctx> phi_zero(const Ctx& c, const PhiAlgebra<Ctx>& P) {
    return {std::vector<typename Ctx::Elem>(P.dim(), FieldOps<Ctx>::zero(c))};
}

template <class Ctx>
PhiElem<Ctx> phi_monomial(const Ctx& c, const PhiAlgebra<Ctx>& P, size_t mask) {
    PhiElem<Ctx> e = phi_zero(c, P);
    e.c[mask] = FieldOps<Ctx>::one(c);
    return e;
}

template <class Ctx>
PhiElem<Ctx> phi_add(const Ctx& c, const PhiElem<Ctx>& u, const PhiElem<Ctx>& v) {
    PhiElem<Ctx> out = u;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] = FieldOps<Ctx>::add(c, out.c[i], v.c[i]);
    return out;
}

// x_S x_T = q_{S cap T} x_{S xor T}
template <class Ctx>
PhiElem<Ctx> phi_mul(const Ctx& c, const PhiAlgebra<Ctx>& P, const PhiElem<Ctx>& u, const PhiElem<Ctx>& v) {
    using Ops = FieldOps<Ctx>;
    auto q = subset_products(c, P.constants);
    PhiElem<Ctx> out = phi_zero(c, P);
    for (size_t s = 0; s < u.c.size(); ++s) {
        if (Ops::is_zero(c, u.c[s])) continue;
        for (size_t t = 0; t < v.c.size(); ++t) {
            if (Ops::is_zero(c, v.c[t])) continue;
            auto term = Ops::mul(c, Ops::mul(c, u.c[s], v.c[t]), q[s & t]);
            out.c[s ^ t] = Ops::add(c, out.c[s ^ t], term);
        }
    }
    return out;
}

// z^2 = sum c_S^2 q_S: always a scalar (totally singular conic)
template <class Ctx>
typename Ctx::Elem phi_square_scalar(const Ctx& c, const PhiAlgebra<Ctx>& P, const PhiElem<Ctx>& u) {
    using Ops = FieldOps<Ctx>;
    auto q = subset_products(c, P.constants);
    auto acc = Ops::zero(c);
    for (size_t s = 0; s < u.c.size(); ++s)
        acc = Ops::add(c, acc, Ops::mul(c, Ops::sqr(c, u.c[s]), q[s]));
    return acc;
}

// ------------------------------------------------------------- queries

template <class Ctx>
bool phi_is_field(const Ctx& c, const PhiAlgebra<Ctx>& P) {
    if (P.constants.empty()) return true;
    for (auto& q : P.constants)
        if (FieldOps<Ctx>::is_zero(c, q)) return false;
    return qset(c, make_pfister(c, P.constants)).dim() == int(P.dim());
}

// Solve sum_S d_S q_S = target over the square subfield, tracking which
// monomials were combined; also exposes the kernel (the maximal ideal).
template <class Ctx>
class PhiLinearSystem {
public:
    using Ops = FieldOps<Ctx>;
    using Elem = typename Ctx::Elem;

    PhiLinearSystem(const Ctx& c, const PhiAlgebra<Ctx>& P)
        : c_(c), hat_(Ops::hat_ctx(c)) {
        auto q = subset_products(c, P.constants);
        for (size_t s = 0; s < q.size(); ++s) {
            auto [z0, z1] = Ops::square_coords(c, q[s]);
            Row r{{z0, z1}, std::vector<Elem>(q.size(), Ops::zero(hat_))};
            r.vars[s] = Ops::one(hat_);
            r = reduce(std::move(r));
            if (pivot(r) >= 0) insert(std::move(r));
            else kernel_.push_back(std::move(r.vars));
        }
    }

    int rank() const { return int(rows_.size()); }
    const std::vector<std::vector<Elem>>& kernel() const { return kernel_; }

    // d-vector over the hat field with sum d_S q_S = target, if solvable
    std::optional<std::vector<Elem>> solve(const Elem& target) const {
        auto [z0, z1] = Ops::square_coords(c_, target);
        Row r{{z0, z1}, std::vector<Elem>(width(), Ops::zero(hat_))};
        r = reduce(std::move(r));
        if (pivot(r) >= 0) return std::nullopt;
        return r.vars;
    }

    // Coefficient vector in Phi whose square is target: c_S = unhat_sqrt(d_S).
    std::optional<std::vector<Elem>> sqrt_in_phi(const Elem& target) const {
        auto d = solve(target);
        if (!d) return std::nullopt;
        std::vector<Elem> out;
        out.reserve(d->size());
        for (auto& x : *d) out.push_back(Ops::unhat_sqrt(c_, x));
        return out;
    }

    // Kernel vectors mapped to Phi coefficients: a basis of the maximal ideal.
    std::vector<std::vector<Elem>> maximal_ideal_basis() const {
        std::vector<std::vector<Elem>> out;
        for (auto& kv : kernel_) {
            std::vector<Elem> v;
            v.reserve(kv.size());
            for (auto& x : kv) v.push_back(Ops::unhat_sqrt(c_, x));
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    struct Row {
        std::array<Elem, 2> vec;
        std::vector<Elem> vars;
    };
    size_t width() const { return rows_.empty() ? (kernel_.empty() ? 0 : kernel_[0].size()) : rows_[0].vars.size(); }
    int pivot(const Row& r) const {
        for (int j = 0; j < 2; ++j)
            if (!Ops::is_zero(hat_, r.vec[size_t(j)])) return j;
        return -1;
    }
    Row reduce(Row r) const {
        for (const Row& row : rows_) {
            int p = pivot(row);
            if (p < 0 || Ops::is_zero(hat_, r.vec[size_t(p)])) continue;
            Elem f = r.vec[size_t(p)];
            for (int j = 0; j < 2; ++j)
                r.vec[size_t(j)] = Ops::add(hat_, r.vec[size_t(j)], Ops::mul(hat_, f, row.vec[size_t(j)]));
            for (size_t j = 0; j < r.vars.size(); ++j)
                r.vars[j] = Ops::add(hat_, r.vars[j], Ops::mul(hat_, f, row.vars[j]));
        }
        return r;
    }
    void insert(Row r) {
        Elem inv = Ops::inv(hat_, r.vec[size_t(pivot(r))]);
        for (auto& x : r.vec) x = Ops::mul(hat_, x, inv);
        for (auto& x : r.vars) x = Ops::mul(hat_, x, inv);
        rows_.push_back(std::move(r));
    }

    Ctx c_;
    Ctx hat_;
    std::vector<Row> rows_;
    std::vector<std::vector<Elem>> kernel_;
};

template <class Ctx>
std::vector<std::vector<typename Ctx::Elem>> maximal_ideal_basis(const Ctx& c, const PhiAlgebra<Ctx>& P) {
    return PhiLinearSystem<Ctx>(c, P).maximal_ideal_basis();
}

template <class Ctx>
int isotropy_index(const Ctx& c, const TDInvolution<Ctx>& A) {
    return arason_index(c, pfister_invariant(c, A));
}

template <class Ctx>
bool is_anisotropic(const Ctx& c, const TDInvolution<Ctx>& A) {
    return isotropy_index(c, A) == 0;
}

template <class Ctx>
InvariantVector<Ctx> brauer_class(const Ctx& c, const TDInvolution<Ctx>& A) {
    return invariant_vector(c, class_list(A));
}

inline TDInvolution<SepCtx> base_change(const SepCtx& K, const TDInvolution<RatCtx>& B) {
    std::vector<std::pair<KElem, KElem>> factors;
    for (auto& [a, b] : B.factors) factors.emplace_back(K.embed(a), K.embed(b));
    return make_td(K, std::move(factors));
}

// Rank of coefficient vectors over the field.
template <class Ctx>
int vector_rank(const Ctx& c, std::vector<std::vector<typename Ctx::Elem>> rows) {
    using Ops = FieldOps<Ctx>;
    std::vector<std::vector<typename Ctx::Elem>> basis;
    auto pivot = [&](const std::vector<typename Ctx::Elem>& r) {
        for (size_t j = 0; j < r.size(); ++j)
            if (!Ops::is_zero(c, r[j])) return int(j);
        return -1;
    };
    for (auto& r : rows) {
        for (auto& b : basis) {
            int p = pivot(b);
            if (p < 0 || Ops::is_zero(c, r[size_t(p)])) continue;
            auto f = Ops::div(c, r[size_t(p)], b[size_t(p)]);
            for (size_t j = 0; j < r.size(); ++j)
                r[j] = Ops::add(c, r[j], Ops::mul(c, f, b[j]));
        }
        if (pivot(r) >= 0) {
            basis.push_back(std::move(r));
            std::sort(basis.begin(), basis.end(), [&](const auto& a, const auto& b2) { return pivot(a) < pivot(b2); });
        }
    }
    return int(basis.size());
}

// ------------------------------------- normalized Phi presentation (over K)

// Generators of Phi rearranged so the first r = n - i(A,sigma) have squares
// in F and are 2-independent (a maximal subfield) and the rest square to 1.
struct NormalizedPhi {
    std::vector<std::pair<std::vector<KElem>, RatFun>> field_part; // (coords, gamma in F)
    std::vector<std::vector<KElem>> radical_part;                  // coords, square = 1
};

// S-data: square constants of a totally singular conic F-algebra S with
// Phi = S (x) K (zeros allowed). Returns nullopt when the certification
// fails or the bounded generator search is exhausted.
std::optional<NormalizedPhi> normalize_phi_presentation(const SepCtx& K, const PhiAlgebra<SepCtx>& P,
                                                        const std::vector<RatFun>& s_constants);

} // namespace qdesc
