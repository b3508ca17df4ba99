// Places of F_q(t), Laurent-series completions, residues of differentials,
// and global/local Artin-Schreier reduction.
#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qdesc/ratfun.hpp"
#include "qdesc/residue_field.hpp"

namespace qdesc {

inline constexpr int kValInfinity = std::numeric_limits<int>::max() / 4;

// Finite place (monic irreducible polynomial) or the place at infinity.
class Place {
public:
    static Place finite(Poly p);
    static Place infinity(const Fq& F);

    bool is_infinity() const { return !p_.has_value(); }
    const Poly& poly() const;
    int degree() const { return p_ ? p_->degree() : 1; }
    const Fq& fq() const { return *F_; }
    ResFieldPtr residue_field() const;

    // finite places by (degree, coefficients); infinity last
    static int cmp(const Place& a, const Place& b);
    friend bool operator==(const Place& a, const Place& b) { return cmp(a, b) == 0; }
    std::string to_string(const std::string& var) const;

private:
    Place() = default;
    std::optional<Poly> p_;
    const Fq* F_ = nullptr;
};

// v_v(f); kValInfinity for f = 0.
int valuation(const RatFun& f, const Place& v);

// Residue of f at v; requires valuation(f, v) >= 0.
RElem eval_at_place(const RatFun& f, const Place& v);

// Truncated Laurent series: coefficients known for exponents in [start, prec).
// Exponents below start are exactly zero; at or above prec, unknown.
class LaurentSeries {
public:
    LaurentSeries(ResFieldPtr k, int start, int prec, std::vector<RElem> coef);
    static LaurentSeries zero(ResFieldPtr k, int prec);

    const ResFieldPtr& coeff_field() const { return k_; }
    int start() const { return start_; }
    int prec() const { return prec_; }
    bool known_zero() const { return coef_.empty(); }
    RElem coeff(int i) const;

    LaurentSeries truncated(int prec) const;
    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    LaurentSeries inverse() const;    // leading coefficient must be known nonzero
    LaurentSeries derivative() const; // d/dpi, coefficients constant
    LaurentSeries shifted(int n) const;

    RElem residue() const; // coefficient of pi^{-1}; needs prec > -1

    static bool eq_to_shared_prec(const LaurentSeries& a, const LaurentSeries& b);
    std::string to_string() const;

private:
    void normalize();
    ResFieldPtr k_;
    int start_ = 0, prec_ = 0;
    std::vector<RElem> coef_; // coef_[i] = coefficient of pi^(start_+i)
};

// Expansion of f at v with exponents known in [v(f), prec). The coefficient
// section k_v -> O_v is multiplicative (Hensel lift of the residue generator),
// so expansion is ring-homomorphic to precision.
LaurentSeries expand(const RatFun& f, const Place& v, int prec);

// Multiplicative-section lift of a residue element at a finite place, exact as
// a polynomial in t, congruent to the Hensel section mod p^prec_levels.
Poly lift_residue(const RElem& c, const Place& v, int prec_levels);

// Coefficient of pi^{-1} in a * db/b; computed twice (double precision) and
// cross-checked. b != 0.
RElem residue_a_dlog_b(const RatFun& a, const RatFun& b, const Place& v);

struct WpObstruction {
    Place v;
    int order; // odd pole order of the reduced function at v
};

struct WpWitness {
    std::optional<RatFun> g; // wp(g) = f, present iff member
    std::vector<WpObstruction> odd_poles;
    std::optional<uint8_t> residual_constant; // trace-1 constant, when poles all clear
};

// f in wp(F) = {x^2+x}? Witness or reduced obstruction either way.
std::pair<bool, WpWitness> is_in_wp_global(const RatFun& f);

struct WpLocalReduction {
    RatFun reduced;    // f + wp(transcript); v-valuation >= 0 or negative odd
    RatFun transcript;
};
WpLocalReduction wp_reduce_local(const RatFun& f, const Place& v);

// Distinct finite places in the support (zeros and poles) of f != 0.
std::vector<Place> support_finite(const RatFun& f);
// Finite pole places only.
std::vector<Place> poles_finite(const RatFun& f);

} // namespace qdesc
