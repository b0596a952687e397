#include "ptower/pseries.hpp"

#include <stdexcept>

#include "ptower/kernels.hpp"

namespace ptower {

namespace {

long vp_ll(long long m, long p) {
    if (m == 0) throw std::logic_error("vp_ll: zero");
    if (m < 0) m = -m;
    long v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

// smallest t >= 0 with p^t >= m
long lam_ll(long long m, long p) {
    long t = 0;
    long long pw = 1;
    while (pw < m) {
        pw *= p;
        ++t;
    }
    return t;
}

bool is_power_of_p(long long m, long p, long& t_out) {
    long long pw = 1;
    long t = 0;
    while (pw < m) {
        pw *= p;
        ++t;
    }
    t_out = t;
    return pw == m;
}

long long ceil_div(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && ((a > 0) == (b > 0))) ++q;
    return q;
}

}  // namespace

std::optional<Frac> TailBound::lower_bound(long long m) const {
    if (!valid) throw std::logic_error("TailBound: no certified bound available");
    if (m < 1) throw std::invalid_argument("TailBound::lower_bound: m >= 1 required");
    std::optional<Frac> best;
    if (kind == TowerKind::LubinTate) {
        long lm = lam_ll(m, p);
        long vm = vp_ll(m, p);
        for (const auto& a : atoms) {
            long s_min = std::max(0L, lm - a.i);
            long lb = a.shift + static_cast<long>(ceil_div(s_min, d)) + a.i - vm;
            Frac f(lb);
            if (!best || f < *best) best = f;
        }
        return best;
    }
    // Kummer: coefficients only at m = p^(s+i)
    long t;
    if (!is_power_of_p(m, p, t)) return std::nullopt;
    for (const auto& a : atoms) {
        long s = t - a.i;
        if (s < 0) continue;
        long lb = a.shift + static_cast<long>(ceil_div(s, d)) - s;
        Frac f(lb);
        if (!best || f < *best) best = f;
    }
    return best;  // nullopt when no atom reaches this power
}

Frac TailBound::tail_valuation(long long D, const Frac& t) const {
    if (!valid) throw std::logic_error("TailBound: no certified bound available");
    if (!(Frac(0) < t)) throw std::invalid_argument("TailBound: evaluation point needs v > 0");
    bool have = false;
    Frac best(0);
    auto consider = [&](long long m, const Frac& lb) {
        Frac term = lb + t * Frac(m);
        if (!have || term < best) {
            best = term;
            have = true;
        }
    };

    long min_shift = 0;
    for (const auto& a : atoms) min_shift = std::min(min_shift, a.shift);

    if (kind == TowerKind::LubinTate) {
        long j = lam_ll(D + 1, p);
        long long pw_lo = 1;  // p^(j-1)
        for (long q = 0; q < j - 1; ++q) pw_lo *= p;
        for (;; ++j) {
            long long pw_hi = pw_lo * p;  // p^j
            // worst coefficient floor in this block for each possible v_p
            for (long v = 0; v <= j; ++v) {
                long long pv = 1;
                bool ovf = false;
                for (long q = 0; q < v; ++q) {
                    if (pv > (1LL << 55)) { ovf = true; break; }
                    pv *= p;
                }
                if (ovf) break;
                long long thr = std::max(D, pw_lo);
                long long m0 = (thr / pv + 1) * pv;
                if (vp_ll(m0, p) > v) m0 += pv;
                if (m0 > pw_hi) continue;
                auto lb = lower_bound(m0);
                consider(m0, *lb);
            }
            // stop once the block floor alone exceeds the running minimum
            Frac block_floor = Frac(min_shift - (j + 1)) + t * Frac(pw_lo * p);
            if (have && pw_lo * p > D && block_floor > best && t * Frac(pw_lo) >= Frac(1)) break;
            pw_lo *= p;
            if (pw_lo > (1LL << 55)) break;  // term is astronomically large by now
        }
        return best;
    }

    // Kummer: only p-power degrees occur
    for (const auto& a : atoms) {
        long s = std::max(0L, lam_ll(D + 1, p) - a.i);
        long long m = 1;
        for (long q = 0; q < s + a.i; ++q) m *= p;
        for (;; ++s) {
            if (m > D) {
                Frac lb(a.shift + static_cast<long>(ceil_div(s, d)) - s);
                consider(m, lb);
                if (t * Frac(m) >= Frac(1) && lb + t * Frac(m) > best) break;
            }
            if (m > (1LL << 55) / p) break;
            m *= p;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------

LogSeriesBuilder::LogSeriesBuilder(const HondaData& h, const TowerSpec& spec, long D)
    : h_(h), spec_(spec), D_(D) {
    if (spec_.p != h_.prime()) throw std::invalid_argument("LogSeriesBuilder: prime mismatch");
    if (D_ < 1) throw std::invalid_argument("LogSeriesBuilder: D >= 1 required");
    h_.require_series_convergent();

    const long p = spec_.p;
    const int d = h_.degree();
    const int K = spec_.prec;
    const long L = lam_ll(D_, p);
    work_mod_ = K + L + d + 2;

    // gamma_s: 1/Hbar(Y) = sum gamma_s Y^s; gamma_0 = 1,
    // gamma_s = -sum_{i=1}^{min(d,s)} b_i gamma_{s-i}
    std::vector<PadicScalar> b = h_.b();
    int keff = K;
    for (const auto& ai : h_.a())
        if (ai.is_unit_state()) keff = std::min(keff, ai.rel_precision());
    k_eff_ = keff;

    s_stop_ = static_cast<int>(d * (work_mod_ + L) + d);
    gamma_.resize(static_cast<size_t>(s_stop_) + 1, PadicScalar::zero(p));
    gamma_[0] = PadicScalar::from_integer(p, 1, keff);
    for (int s = 1; s <= s_stop_; ++s) {
        PadicScalar acc = PadicScalar::zero(p);
        for (int i = 1; i <= std::min(d, s); ++i)
            acc = add(acc, mul(b[static_cast<size_t>(i - 1)], gamma_[static_cast<size_t>(s - i)]));
        gamma_[static_cast<size_t>(s)] = acc.neg();
    }

    family_.resize(static_cast<size_t>(d));
    if (spec_.kind == TowerKind::Kummer)
        build_kummer();
    else if (spec_.is_cyclotomic())
        build_cyclotomic();
    else
        build_generic_lubin_tate();
}

const PSeries& LogSeriesBuilder::series(int i) const {
    if (i < 0 || static_cast<size_t>(i) >= family_.size())
        throw std::out_of_range("LogSeriesBuilder::series: i must be in [0, d)");
    return family_[static_cast<size_t>(i)];
}

namespace {
// Shared finalisation: acc holds p^L * c_m mod p^(M+L); apply the precision
// contract abs_prec >= LB(m) + K, tightened by any extra per-coefficient
// window (indeterminate gamma contributions).
PSeries finalize_family(long p, long D, int K, long L, long M, const std::vector<mpz_class>& acc,
                        const std::vector<long>& extra_window, const TailBound& tb) {
    PSeries f;
    f.p = p;
    f.D = D;
    f.tail = tb;
    f.c.resize(static_cast<size_t>(D) + 1, PadicScalar::zero(p));
    for (long m = 1; m <= D; ++m) {
        const mpz_class& z = acc[static_cast<size_t>(m)];
        auto lb = tb.lower_bound(m);
        if (!lb) {
            f.c[static_cast<size_t>(m)] = PadicScalar::zero(p);  // proven-zero position
            continue;
        }
        long cap = std::min(lb->ceil() + K, extra_window[static_cast<size_t>(m)]);
        PadicScalar v = z == 0 ? PadicScalar::zero(p)
                               : PadicScalar::from_integer(p, z, static_cast<int>(M + L))
                                     .mul_p_power(-L);
        f.c[static_cast<size_t>(m)] = v.cap_abs_precision(cap);
    }
    // the constant term of every l(phi^(i)) is exactly 0
    if (acc[0] != 0) throw std::logic_error("log series: nonzero constant term");
    return f;
}

constexpr long kNoWindow = 1L << 40;
}  // namespace

void LogSeriesBuilder::build_cyclotomic() {
    const long p = spec_.p;
    const int d = h_.degree();
    const long L = lam_ll(D_, p);
    const long M = work_mod_;
    const PadicCtx* ctx = PadicCtx::get(p);
    const mpz_class& mod_big = ctx->pow(M + L);

    // inverses of the unit parts of 1..D+1 mod p^(M+L)
    std::vector<mpz_class> inv_unit(static_cast<size_t>(D_) + 2);
    for (long k = 1; k <= D_ + 1; ++k) {
        long long u = k;
        while (u % p == 0) u /= p;
        mpz_class uz(static_cast<long>(u));
        if (!mpz_invert(inv_unit[static_cast<size_t>(k)].get_mpz_t(), uz.get_mpz_t(),
                        mod_big.get_mpz_t()))
            throw std::logic_error("build_cyclotomic: inversion failed");
    }

    for (int i = 0; i < d; ++i) {
        std::vector<mpz_class> acc(static_cast<size_t>(D_) + 1, mpz_class(0));
        std::vector<long> extra(static_cast<size_t>(D_) + 1, kNoWindow);
        for (int s = 0; s <= s_stop_; ++s) {
            const PadicScalar& g = gamma_[static_cast<size_t>(s)];
            if (g.is_exact_zero()) continue;
            const long t = s + i;
            if (g.is_big_oh()) {
                // contribution unknown below A + v(coefficient of phi^(t))
                long A = g.big_oh_exponent();
                for (long long m = 1; m <= D_; ++m)
                    extra[static_cast<size_t>(m)] =
                        std::min(extra[static_cast<size_t>(m)], A + t - vp_ll(m, p));
                continue;
            }
            const long vg = g.unit_valuation();
            // phi^(t)(X) = (1+X)^(p^t) - 1: coefficient of X^m is C(p^t, m),
            // with v_p = t - v_p(m) (Kummer's theorem); track the unit part.
            long long row_end = D_;
            if (t < 62) {
                long long pt_ll = 1;
                bool small = true;
                for (long q = 0; q < t; ++q) {
                    pt_ll *= p;
                    if (pt_ll > D_) { small = false; break; }
                }
                if (small && pt_ll <= D_) row_end = pt_ll;
            }
            mpz_class pt;  // p^t, exact
            mpz_ui_pow_ui(pt.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(t));
            mpz_class unit_c(1);  // unit part of C(p^t, m), starting at m = 1
            long e_c = t;         // v_p(C(p^t, m)) = t - v_p(m)
            mpz_class num, term;
            for (long long m = 1; m <= row_end; ++m) {
                long E = L + vg + e_c;
                if (E < M + L) {
                    term = g.unit() * unit_c;
                    term %= mod_big;
                    term *= ctx->pow(E);
                    acc[static_cast<size_t>(m)] += term;
                    acc[static_cast<size_t>(m)] %= mod_big;
                }
                if (m == row_end) break;
                // C(p^t, m+1) = C(p^t, m) * (p^t - m) / (m+1)
                long v1 = vp_ll(m, p);  // v_p(p^t - m) = v_p(m) for m < p^t
                num = pt - static_cast<long>(m);
                mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), ctx->pow(v1).get_mpz_t());
                long v2 = vp_ll(m + 1, p);
                unit_c *= num;
                unit_c %= mod_big;
                unit_c *= inv_unit[static_cast<size_t>(m + 1)];
                unit_c %= mod_big;
                e_c += v1 - v2;
            }
        }
        TailBound tb;
        tb.valid = true;
        tb.kind = TowerKind::LubinTate;
        tb.p = p;
        tb.d = d;
        tb.atoms = {{0, i}};
        family_[static_cast<size_t>(i)] = finalize_family(p, D_, k_eff_, L, M, acc, extra, tb);
    }
}

void LogSeriesBuilder::build_generic_lubin_tate() {
    const long p = spec_.p;
    const int d = h_.degree();
    const long L = lam_ll(D_, p);
    const long M = work_mod_;
    const PadicCtx* ctx = PadicCtx::get(p);

    long neg = 0;
    for (const auto& g : gamma_)
        if (g.is_unit_state()) neg = std::max(neg, -g.unit_valuation());
    const long Mpsi = M + L + neg + 2;
    const mpz_class& mod_psi = ctx->pow(Mpsi);
    const mpz_class& mod_big = ctx->pow(M + L);

    // phi as integer coefficients [0, alpha_1, ..., alpha_{p-1}, 1]
    kernels::ZVec phi(static_cast<size_t>(p) + 1, mpz_class(0));
    for (long idx = 1; idx < p; ++idx) {
        phi[static_cast<size_t>(idx)] = spec_.alpha[static_cast<size_t>(idx - 1)] % mod_psi;
        if (phi[static_cast<size_t>(idx)] < 0) phi[static_cast<size_t>(idx)] += mod_psi;
    }
    phi[static_cast<size_t>(p)] = 1;

    std::vector<std::vector<mpz_class>> acc(
        static_cast<size_t>(d), std::vector<mpz_class>(static_cast<size_t>(D_) + 1, mpz_class(0)));
    std::vector<std::vector<long>> extra(
        static_cast<size_t>(d), std::vector<long>(static_cast<size_t>(D_) + 1, kNoWindow));

    kernels::ZVec psi{mpz_class(0), mpz_class(1)};  // phi^(0) = X
    mpz_class term;
    const int t_max = s_stop_ + d - 1;
    for (int t = 0; t <= t_max; ++t) {
        for (int i = 0; i < d && i <= t; ++i) {
            int s = t - i;
            if (s > s_stop_) continue;
            const PadicScalar& g = gamma_[static_cast<size_t>(s)];
            if (g.is_exact_zero()) continue;
            if (g.is_big_oh()) {
                long A = g.big_oh_exponent();
                auto& ex = extra[static_cast<size_t>(i)];
                for (long m = 1; m <= D_; ++m)
                    ex[static_cast<size_t>(m)] =
                        std::min(ex[static_cast<size_t>(m)], A + (t - vp_ll(m, p)));
                continue;
            }
            const long vg = g.unit_valuation();
            for (long m = 1; m <= D_ && static_cast<size_t>(m) < psi.size(); ++m) {
                const mpz_class& z = psi[static_cast<size_t>(m)];
                if (z == 0) continue;
                mpz_class unit = z;
                long vz = static_cast<long>(mpz_remove(unit.get_mpz_t(), unit.get_mpz_t(),
                                                       ctx->pow(1).get_mpz_t()));
                long E = L + vg + vz;
                if (E >= M + L) continue;
                if (E < 0) throw std::logic_error("build_generic_lubin_tate: bound violation");
                term = g.unit() * unit;
                term %= mod_big;
                term *= ctx->pow(E);
                acc[static_cast<size_t>(i)][static_cast<size_t>(m)] += term;
                acc[static_cast<size_t>(i)][static_cast<size_t>(m)] %= mod_big;
            }
        }
        if (t == t_max) break;
        // psi <- psi(phi(X)) mod (X^(D+1), p^Mpsi), Horner over coefficients
        kernels::ZVec comp{mpz_class(0)};
        for (size_t j = psi.size(); j-- > 0;) {
            comp = kernels::conv_trunc(comp, phi, static_cast<size_t>(D_) + 1, mod_psi);
            if (comp.empty()) comp.assign(1, mpz_class(0));
            comp[0] += psi[j];
            comp[0] %= mod_psi;
        }
        psi = std::move(comp);
    }

    for (int i = 0; i < d; ++i) {
        TailBound tb;
        tb.valid = true;
        tb.kind = TowerKind::LubinTate;
        tb.p = p;
        tb.d = d;
        tb.atoms = {{0, i}};
        family_[static_cast<size_t>(i)] = finalize_family(
            p, D_, k_eff_, L, M, acc[static_cast<size_t>(i)], extra[static_cast<size_t>(i)], tb);
    }
}

void LogSeriesBuilder::build_kummer() {
    const long p = spec_.p;
    const int d = h_.degree();

    for (int i = 0; i < d; ++i) {
        PSeries f;
        f.p = p;
        f.D = D_;
        f.c.resize(static_cast<size_t>(D_) + 1, PadicScalar::zero(p));
        f.tail.valid = true;
        f.tail.kind = TowerKind::Kummer;
        f.tail.p = p;
        f.tail.d = d;
        f.tail.atoms = {{0, i}};
        long long m = 1;
        for (long q = 0; q < i; ++q) m *= p;
        for (int s = 0;; ++s) {
            if (m > D_) break;
            long cap = static_cast<long>(ceil_div(s, d)) - s + k_eff_;
            f.c[static_cast<size_t>(m)] = gamma_[static_cast<size_t>(s)].cap_abs_precision(cap);
            if (m > D_ / p) break;
            m *= p;
        }
        family_[static_cast<size_t>(i)] = f;
    }
}

PSeries build_l(const HondaData& h, const TowerSpec& spec, long D) {
    return LogSeriesBuilder(h, spec, D).series(0);
}

PSeries phi_substitute(const PSeries& f, const TowerSpec& spec, long D) {
    const long p = f.p;
    if (spec.p != p) throw std::invalid_argument("phi_substitute: prime mismatch");
    QPoly phi;
    phi.assign(static_cast<size_t>(p) + 1, PadicScalar::zero(p));
    if (spec.kind == TowerKind::LubinTate) {
        for (long i = 1; i < p; ++i)
            phi[static_cast<size_t>(i)] =
                PadicScalar::from_integer(p, spec.alpha[static_cast<size_t>(i - 1)], spec.prec);
    }
    phi[static_cast<size_t>(p)] = PadicScalar::from_integer(p, 1, spec.prec);

    QPoly out{PadicScalar::zero(p)};
    for (size_t j = f.c.size(); j-- > 0;) {
        out = qp_mul(out, phi);
        if (out.size() > static_cast<size_t>(D) + 1) out.resize(static_cast<size_t>(D) + 1);
        if (out.empty()) out.assign(1, PadicScalar::zero(p));
        out[0] = add(out[0], f.c[j]);
    }
    out.resize(static_cast<size_t>(D) + 1, PadicScalar::zero(p));

    PSeries g;
    g.p = p;
    g.D = D;
    g.c = std::move(out);
    if (f.tail.valid && f.tail.kind == spec.kind) {
        g.tail = f.tail;
        for (auto& a : g.tail.atoms) a.i += 1;
    } else {
        g.tail.valid = false;
    }
    return g;
}

PSeries y_combination(const HondaData& h, const LogCoeffs& c, const TowerSpec& spec, long D) {
    if (h.degree() != 2) throw std::invalid_argument("y_combination: requires d = 2");
    LogSeriesBuilder builder(h, spec, D);
    const PSeries& l0 = builder.series(0);
    const PSeries& l1 = builder.series(1);
    const long p = spec.p;

    PadicScalar beta1 = c.alpha1, beta2 = c.alpha2;
    PSeries y;
    y.p = p;
    y.D = D;
    y.c.resize(static_cast<size_t>(D) + 1, PadicScalar::zero(p));
    y.c[0] = mul(beta1, epsilon(h, spec));
    for (long m = 1; m <= D; ++m)
        y.c[static_cast<size_t>(m)] = add(mul(beta1, l0.c[static_cast<size_t>(m)]),
                                          mul(beta2, l1.c[static_cast<size_t>(m)]));
    y.tail.valid = true;
    y.tail.kind = l0.tail.kind;
    y.tail.p = p;
    y.tail.d = 2;
    y.tail.atoms.clear();
    if (!beta1.is_exact_zero()) y.tail.atoms.push_back({beta1.unit_valuation(), 0});
    if (!beta2.is_exact_zero()) y.tail.atoms.push_back({beta2.unit_valuation(), 1});
    if (y.tail.atoms.empty()) y.tail.valid = false;
    return y;
}

// ---------------------------------------------------------------------------

namespace {
TowerElement eval_constant(const PSeries& f, const TowerContext& ctx, int level) {
    return ctx.from_scalar(level, f.c[0]);
}
}  // namespace

TowerElement eval_series_at_pi_power(const PSeries& f, const TowerContext& ctx, int level, long k,
                                     const Frac& target_abs_prec) {
    if (k < 1) throw std::invalid_argument("eval_series_at_pi_power: k >= 1 required");
    if (ctx.spec().kind == TowerKind::LubinTate && level == 0)
        return eval_constant(f, ctx, 0);  // pi_0 = 0
    Frac t = ctx.pi_valuation(level) * Frac(k);
    Frac tail = f.tail.tail_valuation(f.D, t);
    if (tail < target_abs_prec)
        throw PrecisionUnreachable("eval_series: tail " + tail.str() +
                                   " below target " + target_abs_prec.str() +
                                   " (truncation degree too small)");
    TowerElement acc = ctx.zero(level);
    bool nonzero = false;
    for (long m = static_cast<long>(f.D); m >= 0; --m) {
        if (nonzero)
            for (long q = 0; q < k; ++q) acc = mul_by_pi(acc);
        const PadicScalar& cm = f.c[static_cast<size_t>(m)];
        if (!cm.is_exact_zero()) {
            acc = t_add(acc, ctx.from_scalar(level, cm));
            nonzero = true;
        }
    }
    return cap_abs_precision(acc, tail);
}

TowerElement eval_series(const PSeries& f, const TowerElement& x, const Frac& target_abs_prec) {
    const TowerContext* ctx = x.context();
    if (!ctx) throw std::invalid_argument("eval_series: empty evaluation point");
    if (x.is_exact_zero()) return eval_constant(f, *ctx, x.level());

    // peel constant embeddings so pi-powers of lower levels are recognised
    const TowerElement* base = &x;
    while (base->level() > 0) {
        bool embedded = true;
        for (size_t j = 1; j < base->up().size(); ++j)
            if (!base->up()[j].is_exact_zero()) {
                embedded = false;
                break;
            }
        if (!embedded) break;
        base = &base->up()[0];
    }
    // detect x = pi^k (k < step degree) structurally
    long k = -1;
    if (base->level() > 0) {
        const auto& coords = base->up();
        int nonzero = -1;
        for (size_t j = 0; j < coords.size(); ++j)
            if (!coords[j].is_exact_zero()) {
                if (nonzero >= 0) {
                    nonzero = -2;
                    break;
                }
                nonzero = static_cast<int>(j);
            }
        if (nonzero >= 1) {
            auto s = coords[static_cast<size_t>(nonzero)].as_scalar();
            if (s && s->is_unit_state() && s->unit_valuation() == 0 && s->unit() == 1) k = nonzero;
        }
    }
    if (k >= 1) {
        TowerElement r = eval_series_at_pi_power(f, *ctx, base->level(), k, target_abs_prec);
        return ctx->coerce(r, x.level());
    }

    ValBound vb = x.valuation_bound();
    if (vb.infinite || !vb.exact || !(Frac(0) < vb.v))
        throw std::invalid_argument(
            "eval_series: point must have known positive valuation");
    Frac tail = f.tail.tail_valuation(f.D, vb.v);
    if (tail < target_abs_prec)
        throw PrecisionUnreachable("eval_series: tail " + tail.str() + " below target " +
                                   target_abs_prec.str() + " (truncation degree too small)");
    TowerElement acc = ctx->zero(x.level());
    for (long m = static_cast<long>(f.D); m >= 0; --m) {
        acc = t_mul(acc, x);
        const PadicScalar& cm = f.c[static_cast<size_t>(m)];
        if (!cm.is_exact_zero()) acc = t_add(acc, ctx->from_scalar(x.level(), cm));
    }
    return cap_abs_precision(acc, tail);
}

}  // namespace ptower
