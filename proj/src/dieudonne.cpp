#include "ptower/dieudonne.hpp"

#include <stdexcept>

#include "ptower/tower.hpp"

namespace ptower {

std::string to_string(ReductionType t) {
    switch (t) {
        case ReductionType::Ordinary: return "Ordinary";
        case ReductionType::Supersingular: return "Supersingular";
        default: return "InBetween";
    }
}

HondaData::HondaData(long p, std::vector<PadicScalar> a) : p_(p), a_(std::move(a)) {
    if (a_.empty()) throw std::invalid_argument("HondaData: degree must be >= 1");
    for (const auto& c : a_) {
        if (c.prime() != p_) throw std::invalid_argument("HondaData: coefficient prime mismatch");
        if (c.is_big_oh()) throw std::invalid_argument("HondaData: indeterminate coefficient");
        if (c.is_unit_state() && c.unit_valuation() < 0)
            throw std::invalid_argument("HondaData: coefficients must be p-integral");
    }
    if (a_[0].is_exact_zero()) throw std::invalid_argument("HondaData: a_0 must be nonzero");
    if (a_[0].unit_valuation() < 1)
        throw std::invalid_argument("HondaData: v(a_0) >= 1 required (F topologically nilpotent)");
}

std::vector<PadicScalar> HondaData::b() const {
    const int d = degree();
    std::vector<PadicScalar> out;
    out.reserve(static_cast<size_t>(d));
    for (int i = 1; i < d; ++i) out.push_back(div(a_[static_cast<size_t>(i)], a_[0]));
    out.push_back(a_[0].inverse());  // b_d = 1/a_0
    return out;
}

QPoly HondaData::char_poly() const {
    QPoly f = a_;
    f.push_back(PadicScalar::from_integer(p_, 1, a_[0].rel_precision()));
    return f;
}

bool HondaData::series_convergent() const {
    // p^i b_i in pZp  <=>  i + v(a_i) - v(a_0) >= 1 (with a_d = 1)
    const int d = degree();
    long v0 = a_[0].unit_valuation();
    for (int i = 1; i <= d; ++i) {
        long vai = (i == d) ? 0
                            : (a_[static_cast<size_t>(i)].is_exact_zero()
                                   ? -1
                                   : a_[static_cast<size_t>(i)].unit_valuation());
        if (vai < 0) continue;  // exact zero coefficient: term vanishes
        if (i + vai - v0 < 1) return false;
    }
    return true;
}

void HondaData::require_series_convergent() const {
    if (!series_convergent())
        throw std::domain_error(
            "HondaData: p^i b_i not in pZp; the log series does not converge for this H");
}

QPoly dual_char_poly(const HondaData& h) {
    const int d = h.degree();
    const long p = h.prime();
    int prec = h.a0().rel_precision();
    PadicScalar pk = PadicScalar::from_integer(p, p, prec);
    QPoly f(static_cast<size_t>(d) + 1, PadicScalar::zero(p));
    f[static_cast<size_t>(d)] = PadicScalar::from_integer(p, 1, prec);
    // coefficient of X^{d-i} is p^i a_i / a_0, with a_d = 1
    for (int i = 1; i <= d; ++i) {
        PadicScalar ai = (i == d) ? PadicScalar::from_integer(p, 1, prec)
                                  : h.a()[static_cast<size_t>(i)];
        if (ai.is_exact_zero()) continue;
        f[static_cast<size_t>(d - i)] = div(ai, h.a0()).mul_p_power(i);
    }
    return f;
}

ReductionType classify_from_slopes(const std::vector<std::pair<Frac, int>>& slopes) {
    bool any_zero = false, any_pos = false;
    for (const auto& s : slopes) {
        if (s.first == Frac(0))
            any_zero = true;
        else if (s.first > Frac(0))
            any_pos = true;
        else
            throw std::domain_error("classify_from_slopes: negative root valuation");
    }
    if (any_zero && any_pos) return ReductionType::InBetween;
    return any_zero ? ReductionType::Ordinary : ReductionType::Supersingular;
}

ReductionType classify_reduction(const HondaData& h) {
    return classify_from_slopes(newton_slopes(dual_char_poly(h)));
}

PadicScalar epsilon(const HondaData& h, const TowerSpec& spec) {
    if (spec.kind != TowerKind::LubinTate)
        throw std::invalid_argument("epsilon: requires a Lubin-Tate tower spec");
    const long p = h.prime();
    if (spec.p != p) throw std::invalid_argument("epsilon: prime mismatch");
    int prec = h.a0().rel_precision();
    PadicScalar alpha_top = PadicScalar::from_integer(p, spec.alpha.back(), prec);
    PadicScalar denom = PadicScalar::from_integer(p, 1, prec);
    for (const auto& ai : h.a()) denom = add(denom, ai);
    denom = denom.mul_p_power(1);  // p * (a_0 + ... + a_{d-1} + 1)
    if (denom.is_exact_zero() || !denom.is_unit_state() || denom.unit_valuation() != 1)
        throw std::domain_error("epsilon: denominator is not p times a unit (invalid HondaData)");
    return div(mul(h.a0(), alpha_top), denom);
}

bool assumption_k_check(const LogCoeffs& c) {
    if (c.alpha1.is_exact_zero() || c.alpha1.is_big_oh())
        throw std::invalid_argument("assumption_k_check: alpha1 must be a nonzero known value");
    if (c.alpha2.is_exact_zero()) return true;  // ratio 0, divisible by p
    if (c.alpha2.is_big_oh())
        throw std::invalid_argument("assumption_k_check: alpha2 indeterminate");
    return c.alpha2.unit_valuation() - c.alpha1.unit_valuation() >= 1;
}

}  // namespace ptower
