// Structure-constant realization of the symbolic algebras (dimension <= 16)
// used to cross-validate the structural lemmas by brute force.
#pragma once

#include <random>
#include <string>

#include "qdesc/involution.hpp"

namespace qdesc {

template <class Ctx>
struct StructAlg {
    int dim = 0;
    // table[(i*dim + j)*dim + k] = coefficient of e_k in e_i * e_j
    std::vector<typename Ctx::Elem> table;
    std::vector<std::string> labels;

    const typename Ctx::Elem& coef(int i, int j, int k) const {
        return table[size_t((i * dim + j) * dim + k)];
    }
};

// Linear involution: row i is the image of e_i.
template <class Ctx>
struct LinInvolution {
    int dim = 0;
    std::vector<std::vector<typename Ctx::Elem>> rows;
};

template <class Ctx>
using Vec = std::vector<typename Ctx::Elem>;

template <class Ctx>
Vec<Ctx> vec_zero(const Ctx& c, int dim) {
    return Vec<Ctx>(size_t(dim), FieldOps<Ctx>::zero(c));
}

template <class Ctx>
Vec<Ctx> vec_unit(const Ctx& c, int dim, int i) {
    auto v = vec_zero(c, dim);
    v[size_t(i)] = FieldOps<Ctx>::one(c);
    return v;
}

template <class Ctx>
Vec<Ctx> vec_add(const Ctx& c, const Vec<Ctx>& a, const Vec<Ctx>& b) {
    Vec<Ctx> out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] = FieldOps<Ctx>::add(c, out[i], b[i]);
    return out;
}

template <class Ctx>
bool vec_is_zero(const Ctx& c, const Vec<Ctx>& a) {
    for (auto& x : a)
        if (!FieldOps<Ctx>::is_zero(c, x)) return false;
    return true;
}

template <class Ctx>
Vec<Ctx> alg_mul(const Ctx& c, const StructAlg<Ctx>& A, const Vec<Ctx>& x, const Vec<Ctx>& y) {
    using Ops = FieldOps<Ctx>;
    Vec<Ctx> out = vec_zero(c, A.dim);
    for (int i = 0; i < A.dim; ++i) {
        if (Ops::is_zero(c, x[size_t(i)])) continue;
        for (int j = 0; j < A.dim; ++j) {
            if (Ops::is_zero(c, y[size_t(j)])) continue;
            auto xy = Ops::mul(c, x[size_t(i)], y[size_t(j)]);
            for (int k = 0; k < A.dim; ++k) {
                const auto& t = A.coef(i, j, k);
                if (Ops::is_zero(c, t)) continue;
                out[size_t(k)] = Ops::add(c, out[size_t(k)], Ops::mul(c, xy, t));
            }
        }
    }
    return out;
}

template <class Ctx>
Vec<Ctx> apply_involution(const Ctx& c, const LinInvolution<Ctx>& s, const Vec<Ctx>& x) {
    using Ops = FieldOps<Ctx>;
    Vec<Ctx> out = vec_zero(c, s.dim);
    for (int i = 0; i < s.dim; ++i) {
        if (Ops::is_zero(c, x[size_t(i)])) continue;
        for (int k = 0; k < s.dim; ++k)
            out[size_t(k)] = Ops::add(c, out[size_t(k)], Ops::mul(c, x[size_t(i)], s.rows[size_t(i)][size_t(k)]));
    }
    return out;
}

// Quaternion [a, b): basis (1, u, v, w) with u^2 = a + u, v^2 = b, w = uv production
// rules: vu = w + v, uw = av + w, wu = av, vw = b + bu, wv = bu, w^2 = ab.
template <class Ctx>
StructAlg<Ctx> build_quaternion(const Ctx& c, const typename Ctx::Elem& a, const typename Ctx::Elem& b) {
    using Ops = FieldOps<Ctx>;
    if (Ops::is_zero(c, b)) throw std::invalid_argument("build_quaternion: b = 0");
    StructAlg<Ctx> A;
    A.dim = 4;
    A.labels = {"1", "u", "v", "w"};
    A.table.assign(size_t(4 * 4 * 4), Ops::zero(c));
    auto set = [&](int i, int j, std::initializer_list<std::pair<int, typename Ctx::Elem>> terms) {
        for (auto& [k, coefv] : terms) A.table[size_t((i * 4 + j) * 4 + k)] = coefv;
    };
    auto one = Ops::one(c);
    auto ab = Ops::mul(c, a, b);
    for (int i = 0; i < 4; ++i) {
        set(0, i, {{i, one}});
        if (i != 0) set(i, 0, {{i, one}});
    }
    set(1, 1, {{0, a}, {1, one}});          // u^2 = a + u
    set(1, 2, {{3, one}});                  // uv = w
    set(2, 1, {{3, one}, {2, one}});        // vu = w + v
    set(2, 2, {{0, b}});                    // v^2 = b
    set(1, 3, {{2, a}, {3, one}});          // uw = av + w
    set(3, 1, {{2, a}});                    // wu = av
    set(2, 3, {{0, b}, {1, b}});            // vw = b + bu
    set(3, 2, {{1, b}});                    // wv = bu
    set(3, 3, {{0, ab}});                   // w^2 = ab
    return A;
}

// sigma_0 fixes 1, u, v and sends w to w + v.
template <class Ctx>
LinInvolution<Ctx> build_sigma0(const Ctx& c) {
    LinInvolution<Ctx> s;
    s.dim = 4;
    for (int i = 0; i < 4; ++i) s.rows.push_back(vec_unit(c, 4, i));
    s.rows[3][2] = FieldOps<Ctx>::one(c);
    return s;
}

template <class Ctx>
StructAlg<Ctx> tensor(const Ctx& c, const StructAlg<Ctx>& A, const StructAlg<Ctx>& B) {
    using Ops = FieldOps<Ctx>;
    StructAlg<Ctx> T;
    T.dim = A.dim * B.dim;
    T.table.assign(size_t(T.dim) * size_t(T.dim) * size_t(T.dim), Ops::zero(c));
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < B.dim; ++j)
            T.labels.push_back(A.labels[size_t(i)] + "." + B.labels[size_t(j)]);
    for (int i = 0; i < A.dim; ++i)
        for (int k = 0; k < A.dim; ++k)
            for (int m = 0; m < A.dim; ++m) {
                const auto& ca = A.coef(i, k, m);
                if (Ops::is_zero(c, ca)) continue;
                for (int j = 0; j < B.dim; ++j)
                    for (int l = 0; l < B.dim; ++l)
                        for (int n = 0; n < B.dim; ++n) {
                            const auto& cb = B.coef(j, l, n);
                            if (Ops::is_zero(c, cb)) continue;
                            int I = i * B.dim + j, J = k * B.dim + l, M = m * B.dim + n;
                            T.table[size_t((I * T.dim + J) * T.dim + M)] = Ops::mul(c, ca, cb);
                        }
            }
    return T;
}

template <class Ctx>
LinInvolution<Ctx> tensor(const Ctx& c, const LinInvolution<Ctx>& A, const LinInvolution<Ctx>& B) {
    using Ops = FieldOps<Ctx>;
    LinInvolution<Ctx> T;
    T.dim = A.dim * B.dim;
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < B.dim; ++j) {
            Vec<Ctx> row = vec_zero(c, T.dim);
            for (int k = 0; k < A.dim; ++k)
                for (int l = 0; l < B.dim; ++l) {
                    auto v = Ops::mul(c, A.rows[size_t(i)][size_t(k)], B.rows[size_t(j)][size_t(l)]);
                    row[size_t(k * B.dim + l)] = v;
                }
            T.rows.push_back(std::move(row));
        }
    return T;
}

template <class Ctx>
bool check_associative(const Ctx& c, const StructAlg<Ctx>& A) {
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k) {
                auto left = alg_mul(c, A, alg_mul(c, A, vec_unit(c, A.dim, i), vec_unit(c, A.dim, j)),
                                    vec_unit(c, A.dim, k));
                auto right = alg_mul(c, A, vec_unit(c, A.dim, i),
                                     alg_mul(c, A, vec_unit(c, A.dim, j), vec_unit(c, A.dim, k)));
                if (!(vec_is_zero(c, vec_add(c, left, right)))) return false;
            }
    return true;
}

// Echelon basis of a span, for membership tests.
template <class Ctx>
class VecSpan {
public:
    VecSpan(const Ctx& c, int dim) : c_(c), dim_(dim) {}

    bool insert(Vec<Ctx> v) {
        reduce(v);
        int p = pivot(v);
        if (p < 0) return false;
        auto inv = FieldOps<Ctx>::inv(c_, v[size_t(p)]);
        for (auto& x : v) x = FieldOps<Ctx>::mul(c_, x, inv);
        rows_.push_back(std::move(v));
        std::sort(rows_.begin(), rows_.end(),
                  [&](const Vec<Ctx>& a, const Vec<Ctx>& b) { return pivot(a) < pivot(b); });
        return true;
    }
    bool contains(Vec<Ctx> v) const {
        reduce(v);
        return pivot(v) < 0;
    }
    int dim() const { return int(rows_.size()); }
    const std::vector<Vec<Ctx>>& rows() const { return rows_; }

private:
    int pivot(const Vec<Ctx>& v) const {
        for (size_t j = 0; j < v.size(); ++j)
            if (!FieldOps<Ctx>::is_zero(c_, v[j])) return int(j);
        return -1;
    }
    void reduce(Vec<Ctx>& v) const {
        for (const Vec<Ctx>& r : rows_) {
            int p = pivot(r);
            if (p < 0 || FieldOps<Ctx>::is_zero(c_, v[size_t(p)])) continue;
            auto f = FieldOps<Ctx>::div(c_, v[size_t(p)], r[size_t(p)]);
            for (size_t j = 0; j < v.size(); ++j)
                v[j] = FieldOps<Ctx>::add(c_, v[j], FieldOps<Ctx>::mul(c_, f, r[j]));
        }
    }
    Ctx c_;
    int dim_;
    std::vector<Vec<Ctx>> rows_;
};

// Alt(A, sigma) = image of (id + sigma); Sym = its kernel = fixed space.
template <class Ctx>
VecSpan<Ctx> alt_space(const Ctx& c, const StructAlg<Ctx>& A, const LinInvolution<Ctx>& s) {
    VecSpan<Ctx> span(c, A.dim);
    for (int i = 0; i < A.dim; ++i) {
        auto e = vec_unit(c, A.dim, i);
        span.insert(vec_add(c, e, apply_involution(c, s, e)));
    }
    return span;
}

template <class Ctx>
std::vector<Vec<Ctx>> sym_space(const Ctx& c, const StructAlg<Ctx>& A, const LinInvolution<Ctx>& s) {
    // kernel of id + sigma via elimination with variable tracking
    using Ops = FieldOps<Ctx>;
    struct Row {
        Vec<Ctx> img, src;
    };
    std::vector<Row> rows;
    std::vector<Vec<Ctx>> kernel;
    auto pivot = [&](const Vec<Ctx>& v) {
        for (size_t j = 0; j < v.size(); ++j)
            if (!Ops::is_zero(c, v[j])) return int(j);
        return -1;
    };
    for (int i = 0; i < A.dim; ++i) {
        auto e = vec_unit(c, A.dim, i);
        Row r{vec_add(c, e, apply_involution(c, s, e)), e};
        for (const Row& b : rows) {
            int p = pivot(b.img);
            if (p < 0 || Ops::is_zero(c, r.img[size_t(p)])) continue;
            auto f = Ops::div(c, r.img[size_t(p)], b.img[size_t(p)]);
            for (size_t j = 0; j < r.img.size(); ++j) {
                r.img[j] = Ops::add(c, r.img[j], Ops::mul(c, f, b.img[j]));
                r.src[j] = Ops::add(c, r.src[j], Ops::mul(c, f, b.src[j]));
            }
        }
        if (pivot(r.img) < 0) kernel.push_back(std::move(r.src));
        else rows.push_back(std::move(r));
    }
    return kernel;
}

struct LemmaSuiteReport {
    int samples = 0;
    int violations = 0;
    std::vector<std::string> witnesses;
    bool usym_ok = true;     // sigma(u) = u for each factor when v in Alt
    bool one_not_alt = true; // orthogonality
};

// Sampled checks of the structural lemmas; `anisotropic` enables the checks
// that require anisotropy (x^2 + alpha in Alt forces x^2 = alpha; sigma(x)x
// never lands in Alt for x != 0).
template <class Ctx>
LemmaSuiteReport check_lemma_suite(const Ctx& c, const StructAlg<Ctx>& A, const LinInvolution<Ctx>& s,
                                   const std::vector<Vec<Ctx>>& u_images, bool anisotropic, int samples,
                                   std::mt19937_64& rng) {
    using Ops = FieldOps<Ctx>;
    LemmaSuiteReport rep;
    VecSpan<Ctx> alt = alt_space(c, A, s);
    auto sym = sym_space(c, A, s);
    rep.one_not_alt = !alt.contains(vec_unit(c, A.dim, 0));
    for (const auto& u : u_images)
        if (!(vec_is_zero(c, vec_add(c, apply_involution(c, s, u), u)))) rep.usym_ok = false;

    auto elems = Ops::enumerate(c, 1);
    auto random_combo = [&](const std::vector<Vec<Ctx>>& basis) {
        Vec<Ctx> v = vec_zero(c, A.dim);
        for (const auto& b : basis) {
            const auto& coefv = elems[rng() % elems.size()];
            for (size_t j = 0; j < v.size(); ++j)
                v[j] = Ops::add(c, v[j], Ops::mul(c, coefv, b[j]));
        }
        return v;
    };

    for (int it = 0; it < samples; ++it) {
        ++rep.samples;
        Vec<Ctx> x = random_combo(sym);
        Vec<Ctx> y = random_combo(alt.rows());
        // Sym * Alt * Sym stays in Alt
        if (!alt.contains(alg_mul(c, A, alg_mul(c, A, x, y), x))) {
            ++rep.violations;
            rep.witnesses.push_back("xyx outside Alt");
        }
        if (anisotropic) {
            Vec<Ctx> x2 = alg_mul(c, A, x, x);
            // alpha with x^2 + alpha in Alt exists iff x^2 in Alt + <1>
            VecSpan<Ctx> alt1 = alt;
            alt1.insert(vec_unit(c, A.dim, 0));
            if (alt1.contains(x2)) {
                // then x^2 must be the scalar alpha itself
                Vec<Ctx> scalar_part = vec_zero(c, A.dim);
                scalar_part[0] = x2[0];
                if (!(vec_is_zero(c, vec_add(c, x2, scalar_part)))) {
                    ++rep.violations;
                    rep.witnesses.push_back("x^2 + alpha in Alt with x^2 not scalar");
                }
            }
            if (!vec_is_zero(c, x)) {
                Vec<Ctx> sxx = alg_mul(c, A, apply_involution(c, s, x), x);
                if (alt.contains(sxx)) {
                    ++rep.violations;
                    rep.witnesses.push_back("sigma(x)x in Alt for nonzero x");
                }
            }
        }
    }
    return rep;
}

// Bounded isotropy search: candidate vectors first (the maximal-ideal
// directions of Phi lift to isotropic elements), then random coordinates.
template <class Ctx>
std::optional<Vec<Ctx>> isotropic_search(const Ctx& c, const StructAlg<Ctx>& A, const LinInvolution<Ctx>& s,
                                         const std::vector<Vec<Ctx>>& candidates, int height_bound,
                                         int random_tries, std::mt19937_64& rng) {
    using Ops = FieldOps<Ctx>;
    if (A.dim < 1) throw std::invalid_argument("isotropic_search: empty algebra");
    auto isotropic = [&](const Vec<Ctx>& x) {
        return !vec_is_zero(c, x) && vec_is_zero(c, alg_mul(c, A, apply_involution(c, s, x), x));
    };
    for (const auto& x : candidates)
        if (isotropic(x)) return x;
    auto elems = Ops::enumerate(c, height_bound);
    for (int it = 0; it < random_tries; ++it) {
        Vec<Ctx> x = vec_zero(c, A.dim);
        for (auto& coord : x) coord = elems[rng() % elems.size()];
        if (isotropic(x)) return x;
    }
    return std::nullopt;
}

} // namespace qdesc
