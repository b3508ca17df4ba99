#include "qdesc/involution.hpp"

namespace qdesc {

namespace {

// distinct subset products of the nonzero S-constants, deterministic order
std::vector<RatFun> s_product_candidates(const Fq& F, const std::vector<RatFun>& s_constants) {
    std::vector<RatFun> nz;
    for (const RatFun& s : s_constants)
        if (!s.is_zero()) nz.push_back(s);
    if (nz.size() > 12) nz.resize(12); // keep the candidate space bounded
    std::vector<RatFun> out;
    for (size_t mask = 1; mask < (size_t(1) << nz.size()); ++mask) {
        RatFun p = RatFun::one(F);
        for (size_t i = 0; i < nz.size(); ++i)
            if (mask & (size_t(1) << i)) p = p * nz[i];
        if (p.is_zero()) continue;
        bool dup = false;
        for (const RatFun& q : out) dup = dup || q == p;
        if (!dup) out.push_back(p);
    }
    return out;
}

} // namespace

std::optional<NormalizedPhi> normalize_phi_presentation(const SepCtx& K, const PhiAlgebra<SepCtx>& P,
                                                        const std::vector<RatFun>& s_constants) {
    using Ops = FieldOps<SepCtx>;
    const Fq& F = K.fq();
    QSet<SepCtx> Q = qset_of_generators(K, subset_products(K, P.constants));
    int r = log2_exact(Q.dim());
    int n = P.n();

    // field part: gammas from S-subset-products, each inside Q, jointly
    // 2-independent (every acceptance doubles the span)
    std::vector<RatFun> gammas;
    QSet<SepCtx> span = qset_of_generators(K, {Ops::one(K)});
    for (const RatFun& cand : s_product_candidates(F, s_constants)) {
        if (int(gammas.size()) == r) break;
        KElem g = K.embed(cand);
        if (!qset_contains(K, Q, g)) continue;
        std::vector<KElem> gens;
        for (const RatFun& old : gammas) gens.push_back(K.embed(old));
        gens.push_back(g);
        QSet<SepCtx> grown = qset_of_generators(K, subset_products(K, gens));
        if (grown.dim() == 2 * span.dim()) {
            gammas.push_back(cand);
            span = std::move(grown);
        }
    }
    if (int(gammas.size()) != r) return std::nullopt;

    PhiLinearSystem<SepCtx> sys(K, P);
    NormalizedPhi out;
    for (const RatFun& gamma : gammas) {
        auto coords = sys.sqrt_in_phi(K.embed(gamma));
        if (!coords) return std::nullopt;
        if (!(phi_square_scalar(K, P, PhiElem<SepCtx>{*coords}) == K.embed(gamma)))
            throw std::logic_error("normalize_phi_presentation: square mismatch");
        out.field_part.emplace_back(std::move(*coords), gamma);
    }

    if (r == n) return out;

    // radical part: square-1 generators from the particular solution of
    // sum d_S q_S = 1 shifted by maximal-ideal vectors
    auto w0 = sys.sqrt_in_phi(K.one());
    if (!w0) return std::nullopt;
    auto kernel = sys.maximal_ideal_basis();
    std::vector<std::vector<KElem>> candidates;
    auto add_candidate = [&](std::vector<KElem> v) {
        if (candidates.size() < 24) candidates.push_back(std::move(v));
    };
    auto vadd = [&](const std::vector<KElem>& a, const std::vector<KElem>& b) {
        std::vector<KElem> o = a;
        for (size_t i = 0; i < o.size(); ++i) o[i] = K.add(o[i], b[i]);
        return o;
    };
    add_candidate(*w0);
    for (size_t i = 0; i < kernel.size(); ++i) {
        add_candidate(vadd(*w0, kernel[i]));
        for (size_t j = i + 1; j < kernel.size(); ++j)
            add_candidate(vadd(vadd(*w0, kernel[i]), kernel[j]));
    }

    // generated-subalgebra dimension for a generator tuple
    auto generated_rank = [&](const std::vector<std::vector<KElem>>& gens) {
        std::vector<PhiElem<SepCtx>> monomials{phi_monomial(K, P, 0)};
        std::vector<std::vector<KElem>> coeffs{monomials[0].c};
        for (auto& g : gens) {
            size_t cur = monomials.size();
            for (size_t i = 0; i < cur; ++i) {
                monomials.push_back(phi_mul(K, P, monomials[i], PhiElem<SepCtx>{g}));
                coeffs.push_back(monomials.back().c);
            }
        }
        return vector_rank(K, coeffs);
    };

    std::vector<std::vector<KElem>> chosen;
    for (auto& [coords, gamma] : out.field_part) chosen.push_back(coords);
    int want = n - r;
    std::vector<std::vector<KElem>> radical;
    // greedy: each new generator must double the generated dimension
    for (int j = 0; j < want; ++j) {
        bool found = false;
        for (auto& cand : candidates) {
            auto trial = chosen;
            trial.push_back(cand);
            if (generated_rank(trial) == (1 << (r + j + 1))) {
                chosen = std::move(trial);
                radical.push_back(cand);
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    for (auto& v : radical) {
        if (!(phi_square_scalar(K, P, PhiElem<SepCtx>{v}) == K.one()))
            throw std::logic_error("normalize_phi_presentation: radical square not 1");
        out.radical_part.push_back(v);
    }
    return out;
}

} // namespace qdesc
