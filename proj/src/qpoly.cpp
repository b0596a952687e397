#include "ptower/qpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace ptower {

QPoly qp_trim(QPoly f) {
    while (!f.empty() && f.back().is_exact_zero()) f.pop_back();
    return f;
}

QPoly qp_add(const QPoly& f, const QPoly& g) {
    QPoly r = f.size() >= g.size() ? f : g;
    const QPoly& s = f.size() >= g.size() ? g : f;
    for (size_t i = 0; i < s.size(); ++i) r[i] = add(r[i], s[i]);
    return r;
}

QPoly qp_sub(const QPoly& f, const QPoly& g) {
    QPoly ng(g.size());
    for (size_t i = 0; i < g.size(); ++i) ng[i] = g[i].neg();
    return qp_add(f, ng);
}

QPoly qp_mul(const QPoly& f, const QPoly& g) {
    if (f.empty() || g.empty()) return {};
    long p = f[0].prime();
    QPoly r(f.size() + g.size() - 1, PadicScalar::zero(p));
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) r[i + j] = add(r[i + j], mul(f[i], g[j]));
    return r;
}

QPoly qp_scale(const PadicScalar& c, const QPoly& f) {
    QPoly r(f.size(), c);
    for (size_t i = 0; i < f.size(); ++i) r[i] = mul(c, f[i]);
    return r;
}

PadicScalar qp_eval(const QPoly& f, const PadicScalar& x) {
    PadicScalar acc = PadicScalar::zero(x.prime());
    for (size_t i = f.size(); i-- > 0;) acc = add(mul(acc, x), f[i]);
    return acc;
}

QPoly qp_rem(QPoly f, const QPoly& g) {
    if (g.empty()) throw std::invalid_argument("qp_rem: empty divisor");
    size_t dg = g.size() - 1;
    if (!g[dg].is_unit_state() || g[dg].unit_valuation() != 0 || g[dg].unit() != 1)
        throw std::invalid_argument("qp_rem: divisor must be monic");
    while (f.size() > dg) {
        PadicScalar lead = f.back();
        size_t shift = f.size() - 1 - dg;
        if (!lead.is_exact_zero())
            for (size_t i = 0; i < dg; ++i) f[shift + i] = sub(f[shift + i], mul(lead, g[i]));
        f.pop_back();
    }
    return f;
}

std::vector<std::pair<Frac, int>> newton_slopes(const QPoly& f) {
    if (f.size() < 2) throw std::invalid_argument("newton_slopes: degree must be >= 1");
    const long d = static_cast<long>(f.size()) - 1;
    {
        const PadicScalar& lead = f.back();
        if (!lead.is_unit_state() || lead.unit_valuation() != 0)
            throw std::invalid_argument("newton_slopes: polynomial must be monic");
    }
    // points (i, v(c_i)); exact-zero coefficients are points at +infinity
    std::vector<bool> finite(d + 1, false);
    std::vector<Frac> val(d + 1, Frac(0));
    for (long i = 0; i <= d; ++i) {
        const PadicScalar& c = f[static_cast<size_t>(i)];
        if (c.is_exact_zero()) continue;
        if (c.is_big_oh())
            throw std::domain_error(
                "newton_slopes: coefficient " + std::to_string(i) +
                " has indeterminate valuation (cancelled to working precision)");
        finite[static_cast<size_t>(i)] = true;
        val[static_cast<size_t>(i)] = Frac(c.unit_valuation());
    }
    if (!finite[0])
        throw std::domain_error("newton_slopes: zero constant term (0 is a root; shift first)");

    // lower convex hull from (0, v0) to (d, 0), scanning by slope
    std::vector<std::pair<Frac, int>> out;
    long i = 0;
    while (i < d) {
        long best_j = -1;
        Frac best_slope(0);
        for (long j = i + 1; j <= d; ++j) {
            if (!finite[static_cast<size_t>(j)]) continue;
            Frac s = (val[static_cast<size_t>(j)] - val[static_cast<size_t>(i)]) / Frac(j - i);
            if (best_j < 0 || s < best_slope || (s == best_slope && j > best_j)) {
                best_slope = s;
                best_j = j;
            }
        }
        out.emplace_back(-best_slope, static_cast<int>(best_j - i));
        i = best_j;
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // merge equal slopes
    std::vector<std::pair<Frac, int>> merged;
    for (auto& s : out) {
        if (!merged.empty() && merged.back().first == s.first)
            merged.back().second += s.second;
        else
            merged.push_back(s);
    }
    return merged;
}

}  // namespace ptower
