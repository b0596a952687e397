#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ptower/padic.hpp"
#include "ptower/qpoly.hpp"

namespace ptower {

enum class TowerKind { LubinTate, Kummer };

// Defining data of a tower of totally ramified extensions of Qp.
//
// LubinTate: phi(X) = X^p + alpha_{p-1} X^{p-1} + ... + alpha_1 X with
//            p | alpha_i and v(alpha_1) = 1; pi_0 = 0, phi(pi_n) = pi_{n-1}.
// Kummer:    base field K' = Qp[Y]/(g) with g Eisenstein of degree e < p;
//            pi_0 = Y, pi_{n+1}^p = pi_n.
struct TowerSpec {
    TowerKind kind = TowerKind::LubinTate;
    long p = 3;
    int prec = kDefaultPrec;
    std::vector<mpz_class> alpha;  // LubinTate: alpha_1..alpha_{p-1}
    std::vector<mpz_class> g;      // Kummer: lower coefficients g_0..g_{e-1} of monic g

    static TowerSpec lubin_tate(long p, std::vector<mpz_class> alpha, int prec = kDefaultPrec);
    // phi(X) = (1+X)^p - 1
    static TowerSpec cyclotomic(long p, int prec = kDefaultPrec);
    static TowerSpec kummer(long p, std::vector<mpz_class> g_lower, int prec = kDefaultPrec);

    int ramification_e() const;  // Kummer base degree; 1 for LubinTate
    bool is_cyclotomic() const;
    void validate() const;
};

class TowerContext;

// Element of the level-n field, as a polynomial in pi_n of degree
// < step_degree(n) with level-(n-1) coefficients; level-0 elements are
// polynomials in pi_0 over Qp (a single scalar for Lubin-Tate towers).
// Coefficient vectors always have full (padded) length.
class TowerElement {
public:
    TowerElement() = default;

    const TowerContext* context() const { return ctx_; }
    int level() const { return level_; }
    bool empty() const { return ctx_ == nullptr; }

    const std::vector<TowerElement>& up() const { return up_; }
    const std::vector<PadicScalar>& base() const { return base_; }

    bool indistinguishable_from_zero() const;
    bool is_exact_zero() const;
    // a scalar constant (all higher coordinates exactly zero)?
    std::optional<PadicScalar> as_scalar() const;

    // min over coordinates of v(coeff) + j * v(pi); exact unless a
    // cancelled coordinate attains the minimum.
    ValBound valuation_bound() const;

    friend class TowerContext;
    friend TowerElement t_add(const TowerElement& a, const TowerElement& b);
    friend TowerElement t_sub(const TowerElement& a, const TowerElement& b);
    friend TowerElement t_mul(const TowerElement& a, const TowerElement& b);
    friend TowerElement t_neg(const TowerElement& a);
    friend TowerElement scalar_mul(const PadicScalar& c, const TowerElement& a);
    friend TowerElement mul_by_pi(const TowerElement& a);
    friend TowerElement cap_abs_precision(const TowerElement& a, const Frac& A);

private:
    const TowerContext* ctx_ = nullptr;
    int level_ = -1;
    std::vector<TowerElement> up_;
    std::vector<PadicScalar> base_;
};

// Immutable tower context: step polynomials, degrees, trace data for
// levels 0..n_max. Safe to share across threads.
class TowerContext {
public:
    TowerContext(TowerSpec spec, int n_max);

    const TowerSpec& spec() const { return spec_; }
    long prime() const { return spec_.p; }
    int prec() const { return spec_.prec; }
    int n_max() const { return n_max_; }

    // degree of the level-n step over level n-1 (n >= 1)
    int step_degree(int n) const;
    int base_degree() const;        // [level 0 : Qp]
    long total_degree(int n) const; // [level n : Qp]
    Frac pi_valuation(int n) const; // v_p(pi_n) = 1/total_degree(n)

    // monic step polynomial of level n (n >= 1): lower coefficients, as
    // level-(n-1) elements
    const std::vector<TowerElement>& step_poly(int n) const;
    // power sums s_0..s_{deg-1} of the step polynomial roots (Newton's
    // identities), used by the one-step trace
    const std::vector<TowerElement>& step_power_sums(int n) const;

    TowerElement zero(int n) const;
    TowerElement one(int n) const;
    TowerElement from_scalar(int n, const PadicScalar& c) const;
    TowerElement pi(int n) const;          // uniformizer; LubinTate pi_0 = 0
    TowerElement pi_power(int n, long k) const;

    TowerElement coerce(const TowerElement& x, int n) const;  // inclusion to level n >= x.level

    // one-step trace Tr_{n/n-1}
    TowerElement trace_step(const TowerElement& x) const;
    // Tr_{n/m} as a composite of one-step traces (m <= n)
    TowerElement trace_down(const TowerElement& x, int m) const;
    // one-step norm via the determinant of the multiplication matrix
    TowerElement norm_step(const TowerElement& x) const;
    // norm from level n down to Qp (through the Kummer base when present)
    PadicScalar norm_to_qp(const TowerElement& x) const;

private:
    void check_elem(const TowerElement& x) const;
    TowerElement reduce_mod_g(std::vector<PadicScalar> coeffs) const;  // Kummer base
    bool step0_is_minus_pi(int n) const { return step0_minus_pi_[static_cast<size_t>(n)] != 0; }
    friend TowerElement t_mul(const TowerElement& a, const TowerElement& b);
    friend TowerElement mul_by_pi(const TowerElement& a);

    TowerSpec spec_;
    int n_max_;
    std::vector<PadicScalar> g_scalar_;                    // Kummer base step (monic, lower coeffs)
    std::vector<std::vector<TowerElement>> steps_;         // [n] lower coeffs, n >= 1
    std::vector<std::vector<TowerElement>> power_sums_;    // [n] s_0..s_{deg-1}
    std::vector<char> step0_minus_pi_;                     // [n] step constant term is -pi_{n-1}
};

// build_tower: validates the spec and constructs the context
std::shared_ptr<const TowerContext> build_tower(const TowerSpec& spec, int n_max);

TowerElement t_add(const TowerElement& a, const TowerElement& b);
TowerElement t_sub(const TowerElement& a, const TowerElement& b);
TowerElement t_mul(const TowerElement& a, const TowerElement& b);
TowerElement t_neg(const TowerElement& a);
TowerElement scalar_mul(const PadicScalar& c, const TowerElement& a);
// x * pi_n at x's level; cheap (shift + step reduction)
TowerElement mul_by_pi(const TowerElement& a);
// merge O(p^A) into every coordinate (A in v_p units)
TowerElement cap_abs_precision(const TowerElement& a, const Frac& A);

bool t_indistinguishable(const TowerElement& a, const TowerElement& b);
// smallest certified absolute precision over coordinates (the floor a
// residual must clear); infinite for exactly-known elements
ValBound t_abs_precision(const TowerElement& a);

}  // namespace ptower
