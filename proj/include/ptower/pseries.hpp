#pragma once

#include <optional>
#include <vector>

#include "ptower/dieudonne.hpp"
#include "ptower/tower.hpp"

namespace ptower {

// Certified lower-bound data for the coefficients of a truncated series in
// the l-family. An atom (shift, i) contributes shift + LB_i(m) where LB_i
// is the proven coefficient floor of l(phi^(i)(X)); the series bound is the
// min over atoms.
//
// Lubin-Tate floor (hard-coded; proof sketch):
//   phi^(s)'(X) = prod_{j<s} phi'(phi^(j)(X)) and every coefficient of
//   phi'(X) = p X^{p-1} + sum_i i alpha_i X^{i-1} is divisible by p, so the
//   derivative of phi^(s) has content >= p^s; comparing the X^(m-1)
//   coefficients gives v([X^m] phi^(s)) >= s - v_p(m).  Each operator word
//   J(phi)^k contributing to X-degree m factors as b_{i_1}...b_{i_k}
//   phi^(s) with s = i_1+...+i_k, and p^i b_i in pZp gives
//   v(b_{i_1}...b_{i_k}) >= k - s >= ceil(s/d) - s.  Hence for l(phi^(i)):
//     LB_i(m) = ceil(max(0, ceil(log_p m) - i)/d) + i - v_p(m).
// Kummer floor: phi^(s) = X^(p^s), so only m = p^(s+i) occur and the
//   coefficient is gamma_s with v >= ceil(s/d) - s.
struct TailAtom {
    long shift = 0;
    int i = 0;
};

struct TailBound {
    bool valid = false;
    TowerKind kind = TowerKind::LubinTate;
    long p = 3;
    int d = 2;
    std::vector<TailAtom> atoms;

    // proven v_p lower bound for coefficient m (m >= 1); nullopt means the
    // coefficient is exactly zero (Kummer non-p-power positions)
    std::optional<Frac> lower_bound(long long m) const;
    // min over m > D of LB(m) + m*t for evaluation points of valuation t > 0
    Frac tail_valuation(long long D, const Frac& t) const;
};

// Truncated power series over Qp with a certified tail. Coefficient c[m]
// carries its own precision window (abs precision >= LB(m) + K for built
// series).
struct PSeries {
    long p = 3;
    long D = 0;
    std::vector<PadicScalar> c;  // size D+1
    TailBound tail;
};

// f(phi(X)) truncated at degree D, exact coefficientwise. phi is the spec's
// Lubin-Tate series (Kummer: phi(X) = X^p).
PSeries phi_substitute(const PSeries& f, const TowerSpec& spec, long D);

// Builds the whole family l(phi^(i)(X)) for one (H, spec, D); the members
// share the operator expansion, so asking for several i is cheap.
class LogSeriesBuilder {
public:
    LogSeriesBuilder(const HondaData& h, const TowerSpec& spec, long D);

    const HondaData& honda() const { return h_; }
    const TowerSpec& spec() const { return spec_; }
    long truncation() const { return D_; }

    // l(phi^(i)(X)); i = 0 is l itself
    const PSeries& series(int i) const;
    // gamma_s of 1/Hbar(Y) = sum gamma_s Y^s (exact recurrence)
    const std::vector<PadicScalar>& gamma() const { return gamma_; }

private:
    void build_cyclotomic();
    void build_generic_lubin_tate();
    void build_kummer();

    HondaData h_;
    TowerSpec spec_;
    long D_;
    int s_stop_;
    long work_mod_;  // accumulation modulus exponent
    int k_eff_;      // relative precision actually supported by the inputs
    std::vector<PadicScalar> gamma_;
    std::vector<PSeries> family_;
};

PSeries build_l(const HondaData& h, const TowerSpec& spec, long D);

// y(l) = beta1 (epsilon + l(X)) + beta2 l(phi(X)), truncated at D; the
// constant term beta1*epsilon is retained.
PSeries y_combination(const HondaData& h, const LogCoeffs& c, const TowerSpec& spec, long D);

// Evaluates the truncated series at x and certifies the discarded tail:
// the result carries O(p^T) with T = tail_valuation(D, v(x)) merged in.
// Throws PrecisionUnreachable if T < target_abs_prec.
struct PrecisionUnreachable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

TowerElement eval_series(const PSeries& f, const TowerElement& x, const Frac& target_abs_prec);

// Fast path for x = pi_level^k (k >= 0; k = 0 evaluates at 1 -- unused).
TowerElement eval_series_at_pi_power(const PSeries& f, const TowerContext& ctx, int level, long k,
                                     const Frac& target_abs_prec);

}  // namespace ptower
