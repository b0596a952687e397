#include "ptower/padic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ptower {

namespace {
std::mutex& registry_mutex() {
    static std::mutex mu;
    return mu;
}
std::map<long, std::unique_ptr<PadicCtx>>& registry() {
    static std::map<long, std::unique_ptr<PadicCtx>> reg;
    return reg;
}

bool is_prime_small(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}
}  // namespace

PadicCtx::PadicCtx(long p) : p_(p), mu_(new std::mutex) {
    powers_.reserve(2 * kDefaultPrec + 8);
    powers_.emplace_back(1);
    mpz_class pp(p);
    for (int k = 1; k <= 2 * kDefaultPrec + 4; ++k) powers_.push_back(powers_.back() * pp);
}

const PadicCtx* PadicCtx::get(long p) {
    if (!is_prime_small(p)) throw std::invalid_argument("PadicCtx: p must be a prime >= 2");
    std::lock_guard<std::mutex> lk(registry_mutex());
    auto& reg = registry();
    auto it = reg.find(p);
    if (it == reg.end()) it = reg.emplace(p, std::unique_ptr<PadicCtx>(new PadicCtx(p))).first;
    return it->second.get();
}

const mpz_class& PadicCtx::pow(long k) const {
    if (k < 0) throw std::invalid_argument("PadicCtx::pow: negative exponent");
    if (static_cast<size_t>(k) >= powers_.size()) {
        std::lock_guard<std::mutex> lk(*static_cast<std::mutex*>(mu_));
        mpz_class pp(p_);
        while (static_cast<size_t>(k) >= powers_.size()) powers_.push_back(powers_.back() * pp);
    }
    return powers_[static_cast<size_t>(k)];
}

long PadicScalar::prime() const {
    if (!ctx_) throw std::logic_error("PadicScalar: default-constructed value has no prime");
    return ctx_->prime();
}

PadicScalar PadicScalar::zero(long p) {
    return PadicScalar(PadicCtx::get(p), PState::ExactZero, 0, 0, mpz_class(0));
}

PadicScalar PadicScalar::big_oh(long p, long abs_prec) {
    return PadicScalar(PadicCtx::get(p), PState::BigOh, abs_prec, 0, mpz_class(0));
}

PadicScalar PadicScalar::from_unit(long p, long v, mpz_class u, int prec) {
    if (prec <= 0) throw std::invalid_argument("PadicScalar: precision must be positive");
    const PadicCtx* c = PadicCtx::get(p);
    mpz_class m = c->pow(prec);
    mpz_class uu = u % m;
    if (uu < 0) uu += m;
    if (uu == 0 || mpz_divisible_ui_p(uu.get_mpz_t(), static_cast<unsigned long>(p)))
        throw std::invalid_argument("PadicScalar::from_unit: u not a unit mod p");
    return PadicScalar(c, PState::Unit, v, prec, std::move(uu));
}

PadicScalar PadicScalar::from_integer(long p, const mpz_class& n, int prec) {
    if (prec <= 0) throw std::invalid_argument("PadicScalar: precision must be positive");
    if (n == 0) return zero(p);
    const PadicCtx* c = PadicCtx::get(p);
    mpz_class rest = n;
    long v = static_cast<long>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), c->pow(1).get_mpz_t()));
    mpz_class m = c->pow(prec);
    mpz_class u = rest % m;
    if (u < 0) u += m;
    return PadicScalar(c, PState::Unit, v, prec, std::move(u));
}

PadicScalar PadicScalar::from_integer(long p, long n, int prec) {
    return from_integer(p, mpz_class(n), prec);
}

PadicScalar PadicScalar::from_ratio(long p, const mpz_class& num, const mpz_class& den, int prec) {
    if (den == 0) throw std::invalid_argument("PadicScalar::from_ratio: zero denominator");
    PadicScalar a = from_integer(p, num, prec);
    PadicScalar b = from_integer(p, den, prec);
    return div(a, b);
}

ValBound PadicScalar::valuation() const {
    switch (st_) {
        case PState::ExactZero: return ValBound::inf();
        case PState::BigOh: return ValBound::at_least(Frac(v_));
        default: return ValBound::at(Frac(v_));
    }
}

ValBound PadicScalar::abs_precision() const {
    switch (st_) {
        case PState::ExactZero: return ValBound::inf();
        case PState::BigOh: return ValBound::at(Frac(v_));
        default: return ValBound::at(Frac(v_ + K_));
    }
}

long PadicScalar::unit_valuation() const {
    if (st_ != PState::Unit) throw std::logic_error("unit_valuation: not in unit state");
    return v_;
}

long PadicScalar::big_oh_exponent() const {
    if (st_ != PState::BigOh) throw std::logic_error("big_oh_exponent: not a big-oh value");
    return v_;
}

void PadicScalar::check_same_prime(const PadicScalar& a, const PadicScalar& b) {
    if (!a.ctx_ || !b.ctx_) throw std::logic_error("PadicScalar: uninitialised operand");
    if (a.ctx_ != b.ctx_)
        throw std::invalid_argument("PadicScalar: prime mismatch (" +
                                    std::to_string(a.ctx_->prime()) + " vs " +
                                    std::to_string(b.ctx_->prime()) + ")");
}

PadicScalar PadicScalar::neg() const {
    if (st_ != PState::Unit) return *this;
    mpz_class u = ctx_->pow(K_) - u_;
    return PadicScalar(ctx_, PState::Unit, v_, K_, std::move(u));
}

PadicScalar PadicScalar::cap_abs_precision(long A) const {
    if (!ctx_) throw std::logic_error("PadicScalar: uninitialised value");
    switch (st_) {
        case PState::ExactZero: return big_oh(ctx_->prime(), A);
        case PState::BigOh: return v_ <= A ? *this : big_oh(ctx_->prime(), A);
        default: {
            if (v_ >= A) return big_oh(ctx_->prime(), A);
            long k = A - v_;
            if (k >= K_) return *this;
            mpz_class u = u_ % ctx_->pow(k);
            return PadicScalar(ctx_, PState::Unit, v_, static_cast<int>(k), std::move(u));
        }
    }
}

PadicScalar PadicScalar::with_rel_precision(int k) const {
    if (st_ != PState::Unit || k >= K_) return *this;
    if (k <= 0) throw std::invalid_argument("with_rel_precision: k must be positive");
    mpz_class u = u_ % ctx_->pow(k);
    return PadicScalar(ctx_, PState::Unit, v_, k, std::move(u));
}

PadicScalar mul(const PadicScalar& a, const PadicScalar& b) {
    PadicScalar::check_same_prime(a, b);
    if (a.st_ == PState::ExactZero || b.st_ == PState::ExactZero)
        return PadicScalar::zero(a.ctx_->prime());
    if (a.st_ == PState::BigOh || b.st_ == PState::BigOh) {
        // O(p^A) * u p^v = O(p^(A+v));  O(p^A) * O(p^B) = O(p^(A+B))
        long s = a.v_ + b.v_;
        return PadicScalar::big_oh(a.ctx_->prime(), s);
    }
    int K = std::min(a.K_, b.K_);
    mpz_class u = (a.u_ * b.u_) % a.ctx_->pow(K);
    return PadicScalar(a.ctx_, PState::Unit, a.v_ + b.v_, K, std::move(u));
}

PadicScalar div(const PadicScalar& a, const PadicScalar& b) {
    PadicScalar::check_same_prime(a, b);
    if (b.st_ == PState::ExactZero)
        throw std::domain_error("PadicScalar: division by exact zero");
    if (b.st_ == PState::BigOh)
        throw std::domain_error("PadicScalar: division by value indistinguishable from zero");
    if (a.st_ == PState::ExactZero) return a;
    if (a.st_ == PState::BigOh) return PadicScalar::big_oh(a.ctx_->prime(), a.v_ - b.v_);
    int K = std::min(a.K_, b.K_);
    const mpz_class& m = a.ctx_->pow(K);
    mpz_class binv;
    if (!mpz_invert(binv.get_mpz_t(), b.u_.get_mpz_t(), m.get_mpz_t()))
        throw std::logic_error("PadicScalar: unit inversion failed");
    mpz_class u = (a.u_ * binv) % m;
    return PadicScalar(a.ctx_, PState::Unit, a.v_ - b.v_, K, std::move(u));
}

PadicScalar add(const PadicScalar& a, const PadicScalar& b) {
    PadicScalar::check_same_prime(a, b);
    if (a.st_ == PState::ExactZero) return b;
    if (b.st_ == PState::ExactZero) return a;
    long p = a.ctx_->prime();
    // absolute precision of the sum
    long A;
    if (a.st_ == PState::BigOh && b.st_ == PState::BigOh) {
        return PadicScalar::big_oh(p, std::min(a.v_, b.v_));
    } else if (a.st_ == PState::BigOh) {
        A = std::min(a.v_, b.v_ + b.K_);
        if (b.v_ >= A) return PadicScalar::big_oh(p, A);
        return b.cap_abs_precision(A);
    } else if (b.st_ == PState::BigOh) {
        A = std::min(b.v_, a.v_ + a.K_);
        if (a.v_ >= A) return PadicScalar::big_oh(p, A);
        return a.cap_abs_precision(A);
    }
    A = std::min(a.v_ + a.K_, b.v_ + b.K_);
    long vmin = std::min(a.v_, b.v_);
    long w = A - vmin;  // digits of the sum visible above p^vmin; >= 1
    const mpz_class& m = a.ctx_->pow(w);
    mpz_class s = a.u_ * a.ctx_->pow(a.v_ - vmin) + b.u_ * a.ctx_->pow(b.v_ - vmin);
    s %= m;
    if (s == 0) return PadicScalar::big_oh(p, A);
    mpz_class rest = s;
    long t = static_cast<long>(
        mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), a.ctx_->pow(1).get_mpz_t()));
    // s != 0 mod p^w, so t < w and the leading unit survives
    return PadicScalar(a.ctx_, PState::Unit, vmin + t, static_cast<int>(w - t), std::move(rest));
}

PadicScalar sub(const PadicScalar& a, const PadicScalar& b) { return add(a, b.neg()); }

PadicScalar PadicScalar::pow_int(unsigned long k) const {
    if (!ctx_) throw std::logic_error("PadicScalar: uninitialised value");
    PadicScalar acc = from_integer(ctx_->prime(), 1, K_ > 0 ? K_ : kDefaultPrec);
    PadicScalar base = *this;
    while (k > 0) {
        if (k & 1) acc = mul(acc, base);
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return acc;
}

PadicScalar PadicScalar::inverse() const {
    if (!ctx_) throw std::logic_error("PadicScalar: uninitialised value");
    return div(from_integer(ctx_->prime(), 1, K_ > 0 ? K_ : kDefaultPrec), *this);
}

PadicScalar PadicScalar::mul_p_power(long k) const {
    if (!ctx_) throw std::logic_error("PadicScalar: uninitialised value");
    switch (st_) {
        case PState::ExactZero: return *this;
        case PState::BigOh: return big_oh(ctx_->prime(), v_ + k);
        default: return PadicScalar(ctx_, PState::Unit, v_ + k, K_, u_);
    }
}

bool operator==(const PadicScalar& a, const PadicScalar& b) {
    if (a.ctx_ != b.ctx_ || a.st_ != b.st_) return false;
    switch (a.st_) {
        case PState::ExactZero: return true;
        case PState::BigOh: return a.v_ == b.v_;
        default: return a.v_ == b.v_ && a.K_ == b.K_ && a.u_ == b.u_;
    }
}

bool indistinguishable(const PadicScalar& a, const PadicScalar& b) {
    return sub(a, b).indistinguishable_from_zero();
}

std::string PadicScalar::str() const {
    std::ostringstream os;
    if (!ctx_) return "<uninit>";
    switch (st_) {
        case PState::ExactZero: os << "0(exact)"; break;
        case PState::BigOh: os << "O(" << ctx_->prime() << "^" << v_ << ")"; break;
        default:
            os << u_.get_str() << "*" << ctx_->prime() << "^" << v_ << " + O(" << ctx_->prime()
               << "^" << (v_ + K_) << ")";
    }
    return os.str();
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) { return add(a, b); }
PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return sub(a, b); }
PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) { return mul(a, b); }
PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) { return div(a, b); }

}  // namespace ptower
