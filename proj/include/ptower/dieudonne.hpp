#pragma once

#include <string>
#include <vector>

#include "ptower/qpoly.hpp"

namespace ptower {

struct TowerSpec;  // tower.hpp

enum class ReductionType { Ordinary, Supersingular, InBetween };
std::string to_string(ReductionType t);

// Characteristic polynomial H(X) = X^d + a_{d-1}X^{d-1} + ... + a_0 of the
// Frobenius, with v(a_0) >= 1 (topologically nilpotent F). The b_i of the
// inverted series are b_i = a_i/a_0 (i < d), b_d = 1/a_0.
class HondaData {
public:
    // a = [a_0, ..., a_{d-1}], p-integral, v(a_0) >= 1
    HondaData(long p, std::vector<PadicScalar> a);

    long prime() const { return p_; }
    int degree() const { return static_cast<int>(a_.size()); }
    const std::vector<PadicScalar>& a() const { return a_; }
    const PadicScalar& a0() const { return a_[0]; }

    // b_1..b_d
    std::vector<PadicScalar> b() const;
    // H as a monic QPoly [a_0, ..., a_{d-1}, 1]
    QPoly char_poly() const;

    // p^i b_i in pZp for every i -- the condition that makes the log series
    // converge (holds when the reduction is supersingular).
    bool series_convergent() const;
    void require_series_convergent() const;

private:
    long p_;
    std::vector<PadicScalar> a_;
};

// H^dual(X) = X^d + p(a_1/a_0)X^{d-1} + ... + p^{d-1}(a_{d-1}/a_0)X + p^d/a_0,
// the characteristic polynomial of the Verschiebung (FV = p).
QPoly dual_char_poly(const HondaData& h);

// Classification by the Newton slopes of H^dual: all 0 -> Ordinary,
// all > 0 -> Supersingular, otherwise InBetween.
ReductionType classify_reduction(const HondaData& h);
ReductionType classify_from_slopes(const std::vector<std::pair<Frac, int>>& slopes);

// epsilon = a_0 alpha_{p-1} / (p (a_0 + ... + a_{d-1} + 1)); the denominator
// has valuation exactly 1 for valid data.
PadicScalar epsilon(const HondaData& h, const TowerSpec& spec);

struct LogCoeffs {
    PadicScalar alpha1;
    PadicScalar alpha2;
};

// true iff v(alpha2/alpha1) >= 1
bool assumption_k_check(const LogCoeffs& c);

}  // namespace ptower
