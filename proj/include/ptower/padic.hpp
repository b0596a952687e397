#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ptower/frac.hpp"

namespace ptower {

inline constexpr int kDefaultPrec = 40;

// Interned per-prime context holding a growable table of powers of p.
// Contexts are never freed; raw pointers stay valid for the process.
class PadicCtx {
public:
    static const PadicCtx* get(long p);

    long prime() const { return p_; }
    // p^k for k >= 0; extends the table on demand (thread-safe).
    const mpz_class& pow(long k) const;

private:
    explicit PadicCtx(long p);
    long p_;
    mutable std::vector<mpz_class> powers_;
    mutable void* mu_;  // std::mutex, kept opaque to avoid <mutex> in the header
};

enum class PState : std::uint8_t {
    ExactZero,  // the number 0, known exactly
    BigOh,      // O(p^A): indistinguishable from zero below absolute precision A
    Unit        // u * p^v with u a unit known modulo p^K
};

// Element of Qp with explicit precision semantics.
//
//   Unit state:   value = u * p^v, u in [1, p^K), p coprime to u, known
//                 modulo p^(v+K).  K > 0 always.
//   BigOh state:  all that is known is value ≡ 0 (mod p^A); arises from
//                 full cancellation and from truncation-tail caps.
//   ExactZero:    the distinguished exact 0 (valuation +inf).
//
// Values are immutable after construction; all operations are pure.
class PadicScalar {
public:
    PadicScalar() : ctx_(nullptr), st_(PState::ExactZero), v_(0), K_(0) {}

    static PadicScalar zero(long p);
    static PadicScalar big_oh(long p, long abs_prec);
    static PadicScalar from_unit(long p, long v, mpz_class u, int prec);
    static PadicScalar from_integer(long p, const mpz_class& n, int prec = kDefaultPrec);
    static PadicScalar from_integer(long p, long n, int prec = kDefaultPrec);
    // num/den with den coprime-to-p not required: valuations subtract.
    static PadicScalar from_ratio(long p, const mpz_class& num, const mpz_class& den,
                                  int prec = kDefaultPrec);

    long prime() const;
    PState state() const { return st_; }
    bool is_exact_zero() const { return st_ == PState::ExactZero; }
    bool is_big_oh() const { return st_ == PState::BigOh; }
    bool is_unit_state() const { return st_ == PState::Unit; }
    // ExactZero or BigOh: nothing above the precision floor distinguishes it from 0.
    bool indistinguishable_from_zero() const { return st_ != PState::Unit; }

    // Unit: exact valuation. BigOh: lower bound A. ExactZero: infinite.
    ValBound valuation() const;
    // Absolute precision: v+K (Unit), A (BigOh); infinite for ExactZero.
    ValBound abs_precision() const;

    long unit_valuation() const;          // Unit state only
    const mpz_class& unit() const { return u_; }
    int rel_precision() const { return K_; }
    long big_oh_exponent() const;         // BigOh state only

    PadicScalar neg() const;
    // Merge with O(p^A): caps the absolute precision at A.
    PadicScalar cap_abs_precision(long A) const;
    // Lower the relative precision to k (Unit state; no-op otherwise).
    PadicScalar with_rel_precision(int k) const;

    friend PadicScalar add(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar sub(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar mul(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar div(const PadicScalar& a, const PadicScalar& b);

    PadicScalar pow_int(unsigned long k) const;
    PadicScalar inverse() const;
    PadicScalar mul_p_power(long k) const;  // value * p^k, exact shift

    // Representation equality (state, v, u, K all equal) -- used for
    // round-trip and determinism tests, not a mathematical comparison.
    friend bool operator==(const PadicScalar& a, const PadicScalar& b);

    // a - b is ExactZero or BigOh (agreement to the shared precision).
    friend bool indistinguishable(const PadicScalar& a, const PadicScalar& b);

    std::string str() const;

    const PadicCtx* ctx() const { return ctx_; }

private:
    PadicScalar(const PadicCtx* c, PState st, long v, int K, mpz_class u)
        : ctx_(c), st_(st), v_(v), K_(K), u_(std::move(u)) {}
    static void check_same_prime(const PadicScalar& a, const PadicScalar& b);

    const PadicCtx* ctx_;
    PState st_;
    long v_;        // Unit: valuation; BigOh: absolute precision bound
    int K_;         // Unit: relative precision (> 0); otherwise 0
    mpz_class u_;   // Unit: canonical unit in [1, p^K); otherwise 0
};

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);

}  // namespace ptower
