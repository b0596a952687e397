#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ptower {

// Small exact rational on int64. Valuations of tower elements are rationals
// with denominator equal to the extension degree, so this never needs
// arbitrary precision.
struct Frac {
    long long num = 0;
    long long den = 1;

    Frac() = default;
    Frac(long long n) : num(n), den(1) {}
    Frac(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Frac: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Frac operator+(const Frac& a, const Frac& b) {
        return Frac(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Frac operator-(const Frac& a, const Frac& b) {
        return Frac(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Frac operator*(const Frac& a, const Frac& b) {
        return Frac(a.num * b.num, a.den * b.den);
    }
    friend Frac operator/(const Frac& a, const Frac& b) {
        if (b.num == 0) throw std::domain_error("Frac: division by zero");
        return Frac(a.num * b.den, a.den * b.num);
    }
    Frac operator-() const { return Frac(-num, den); }

    friend bool operator==(const Frac& a, const Frac& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Frac& a, const Frac& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Frac& a, const Frac& b) { return a == b || a < b; }
    friend bool operator>(const Frac& a, const Frac& b) { return b < a; }
    friend bool operator>=(const Frac& a, const Frac& b) { return b <= a; }

    long long floor() const {
        long long q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    long long ceil() const {
        long long q = num / den;
        if (num % den != 0 && num > 0) ++q;
        return q;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
    friend std::ostream& operator<<(std::ostream& os, const Frac& f) { return os << f.str(); }
};

// A possibly-infinite, possibly-only-bounded valuation. `exact == false`
// means "the valuation is at least v" (the element is indistinguishable
// from zero below p^v).
struct ValBound {
    bool infinite = false;
    Frac v;
    bool exact = true;

    static ValBound inf() { return ValBound{true, Frac(0), true}; }
    static ValBound at(Frac f) { return ValBound{false, f, true}; }
    static ValBound at_least(Frac f) { return ValBound{false, f, false}; }

    bool ge(const Frac& f) const { return infinite || v >= f; }

    std::string str() const {
        if (infinite) return "inf";
        return exact ? v.str() : (">=" + v.str());
    }
};

// min under "infinite is largest"; exactness survives only if the minimum
// is attained by an exact bound strictly below every inexact one.
inline ValBound vmin(const ValBound& a, const ValBound& b) {
    if (a.infinite) return b;
    if (b.infinite) return a;
    if (a.v < b.v) return ValBound{false, a.v, a.exact};
    if (b.v < a.v) return ValBound{false, b.v, b.exact};
    return ValBound{false, a.v, a.exact && b.exact};
}

}  // namespace ptower
