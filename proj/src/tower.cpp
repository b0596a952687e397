#include "ptower/tower.hpp"

#include <stdexcept>

#include "ptower/kernels.hpp"

namespace ptower {

namespace {
long mpz_val(const mpz_class& n, long p) {
    if (n == 0) return -1;  // caller treats as "infinite"
    mpz_class rest = n;
    mpz_class pp(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pp.get_mpz_t()));
}
}  // namespace

TowerSpec TowerSpec::lubin_tate(long p, std::vector<mpz_class> alpha, int prec) {
    TowerSpec s;
    s.kind = TowerKind::LubinTate;
    s.p = p;
    s.prec = prec;
    s.alpha = std::move(alpha);
    s.validate();
    return s;
}

TowerSpec TowerSpec::cyclotomic(long p, int prec) {
    // (1+X)^p - 1 = X^p + C(p,p-1) X^{p-1} + ... + C(p,1) X
    std::vector<mpz_class> alpha(static_cast<size_t>(p - 1));
    mpz_class binom;
    for (long i = 1; i <= p - 1; ++i) {
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(p),
                     static_cast<unsigned long>(i));
        alpha[static_cast<size_t>(i - 1)] = binom;
    }
    return lubin_tate(p, std::move(alpha), prec);
}

TowerSpec TowerSpec::kummer(long p, std::vector<mpz_class> g_lower, int prec) {
    TowerSpec s;
    s.kind = TowerKind::Kummer;
    s.p = p;
    s.prec = prec;
    s.g = std::move(g_lower);
    s.validate();
    return s;
}

int TowerSpec::ramification_e() const {
    return kind == TowerKind::Kummer ? static_cast<int>(g.size()) : 1;
}

bool TowerSpec::is_cyclotomic() const {
    if (kind != TowerKind::LubinTate || static_cast<long>(alpha.size()) != p - 1) return false;
    mpz_class binom;
    for (long i = 1; i <= p - 1; ++i) {
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(p),
                     static_cast<unsigned long>(i));
        if (alpha[static_cast<size_t>(i - 1)] != binom) return false;
    }
    return true;
}

void TowerSpec::validate() const {
    PadicCtx::get(p);  // checks primality
    if (prec <= 0) throw std::invalid_argument("TowerSpec: prec must be positive");
    if (kind == TowerKind::LubinTate) {
        if (static_cast<long>(alpha.size()) != p - 1)
            throw std::invalid_argument("TowerSpec: need alpha_1..alpha_{p-1}");
        if (mpz_val(alpha[0], p) != 1)
            throw std::invalid_argument("TowerSpec: v(alpha_1) must be exactly 1");
        for (size_t i = 1; i < alpha.size(); ++i) {
            long v = mpz_val(alpha[i], p);
            if (v == 0) throw std::invalid_argument("TowerSpec: p must divide every alpha_i");
        }
    } else {
        int e = static_cast<int>(g.size());
        if (e < 1) throw std::invalid_argument("TowerSpec: Kummer base degree must be >= 1");
        if (e >= p)
            throw std::invalid_argument("TowerSpec: Kummer requires e < p (proxy for zeta_p not in K')");
        if (mpz_val(g[0], p) != 1)
            throw std::invalid_argument("TowerSpec: g not Eisenstein (v(g_0) != 1)");
        for (size_t i = 1; i < g.size(); ++i) {
            long v = mpz_val(g[i], p);
            if (v == 0) throw std::invalid_argument("TowerSpec: g not Eisenstein (unit coefficient)");
        }
    }
}

// ---------------------------------------------------------------------------

std::shared_ptr<const TowerContext> build_tower(const TowerSpec& spec, int n_max) {
    return std::make_shared<const TowerContext>(spec, n_max);
}

TowerContext::TowerContext(TowerSpec spec, int n_max) : spec_(std::move(spec)), n_max_(n_max) {
    spec_.validate();
    if (n_max_ < 0) throw std::invalid_argument("TowerContext: n_max must be >= 0");
    const long p = spec_.p;
    const int prec = spec_.prec;

    if (spec_.kind == TowerKind::Kummer)
        for (const auto& gi : spec_.g) g_scalar_.push_back(PadicScalar::from_integer(p, gi, prec));

    steps_.resize(static_cast<size_t>(n_max_) + 1);
    power_sums_.resize(static_cast<size_t>(n_max_) + 1);
    step0_minus_pi_.assign(static_cast<size_t>(n_max_) + 1, 0);

    for (int n = 1; n <= n_max_; ++n) {
        int deg = step_degree(n);
        std::vector<TowerElement> lower(static_cast<size_t>(deg));
        if (spec_.kind == TowerKind::LubinTate && n == 1) {
            // phi(X)/X: coefficient of X^j is alpha_{j+1}
            for (int j = 0; j < deg; ++j)
                lower[static_cast<size_t>(j)] = from_scalar(
                    0, PadicScalar::from_integer(p, spec_.alpha[static_cast<size_t>(j)], prec));
        } else if (spec_.kind == TowerKind::LubinTate) {
            // phi(X) - pi_{n-1}
            lower[0] = t_neg(pi(n - 1));
            step0_minus_pi_[static_cast<size_t>(n)] = 1;
            for (int j = 1; j < deg; ++j)
                lower[static_cast<size_t>(j)] = from_scalar(
                    n - 1,
                    PadicScalar::from_integer(p, spec_.alpha[static_cast<size_t>(j - 1)], prec));
        } else {
            // X^p - pi_{n-1}
            lower[0] = t_neg(pi(n - 1));
            step0_minus_pi_[static_cast<size_t>(n)] = 1;
            for (int j = 1; j < deg; ++j) lower[static_cast<size_t>(j)] = zero(n - 1);
        }
        steps_[static_cast<size_t>(n)] = std::move(lower);

        // Newton's identities: s_0 = deg, and for 1 <= k < deg
        //   s_k = -(sum_{i=1}^{k-1} a_{deg-i} s_{k-i}) - k a_{deg-k}
        const auto& a = steps_[static_cast<size_t>(n)];
        std::vector<TowerElement> s(static_cast<size_t>(deg));
        s[0] = from_scalar(n - 1, PadicScalar::from_integer(p, static_cast<long>(deg), prec));
        for (int k = 1; k < deg; ++k) {
            TowerElement acc = zero(n - 1);
            for (int i = 1; i < k; ++i)
                acc = t_add(acc, t_mul(a[static_cast<size_t>(deg - i)], s[static_cast<size_t>(k - i)]));
            acc = t_add(acc, scalar_mul(PadicScalar::from_integer(p, k, prec),
                                        a[static_cast<size_t>(deg - k)]));
            s[static_cast<size_t>(k)] = t_neg(acc);
        }
        power_sums_[static_cast<size_t>(n)] = std::move(s);
    }
}

int TowerContext::step_degree(int n) const {
    if (n < 1 || n > n_max_) throw std::out_of_range("TowerContext::step_degree");
    if (spec_.kind == TowerKind::Kummer) return static_cast<int>(spec_.p);
    return n == 1 ? static_cast<int>(spec_.p) - 1 : static_cast<int>(spec_.p);
}

int TowerContext::base_degree() const { return spec_.ramification_e(); }

long TowerContext::total_degree(int n) const {
    if (n < 0 || n > n_max_) throw std::out_of_range("TowerContext::total_degree");
    long d = base_degree();
    for (int k = 1; k <= n; ++k) d *= step_degree(k);
    return d;
}

Frac TowerContext::pi_valuation(int n) const { return Frac(1, total_degree(n)); }

const std::vector<TowerElement>& TowerContext::step_poly(int n) const {
    if (n < 1 || n > n_max_) throw std::out_of_range("TowerContext::step_poly");
    return steps_[static_cast<size_t>(n)];
}

const std::vector<TowerElement>& TowerContext::step_power_sums(int n) const {
    if (n < 1 || n > n_max_) throw std::out_of_range("TowerContext::step_power_sums");
    return power_sums_[static_cast<size_t>(n)];
}

TowerElement TowerContext::zero(int n) const {
    if (n < 0 || n > n_max_) throw std::out_of_range("TowerContext::zero: bad level");
    TowerElement x;
    x.ctx_ = this;
    x.level_ = n;
    if (n == 0) {
        x.base_.assign(static_cast<size_t>(base_degree()), PadicScalar::zero(spec_.p));
    } else {
        x.up_.assign(static_cast<size_t>(step_degree(n)), zero(n - 1));
    }
    return x;
}

TowerElement TowerContext::from_scalar(int n, const PadicScalar& c) const {
    TowerElement x = zero(n);
    TowerElement* cur = &x;
    while (cur->level_ > 0) cur = &cur->up_[0];
    cur->base_[0] = c;
    return x;
}

TowerElement TowerContext::one(int n) const {
    return from_scalar(n, PadicScalar::from_integer(spec_.p, 1, spec_.prec));
}

TowerElement TowerContext::pi(int n) const {
    if (n == 0) {
        if (spec_.kind == TowerKind::LubinTate) return zero(0);  // pi_0 = 0
        TowerElement x = zero(0);
        if (base_degree() == 1) {
            // degenerate e = 1: pi_0 is the root of g, i.e. -g_0
            x.base_[0] = g_scalar_[0].neg();
        } else {
            x.base_[1] = PadicScalar::from_integer(spec_.p, 1, spec_.prec);
        }
        return x;
    }
    if (step_degree(n) == 1) {
        // degree-1 step (p = 2, level 1): pi_n = -step constant
        return coerce(t_neg(step_poly(n)[0]), n);
    }
    TowerElement x = zero(n);
    x.up_[1] = one(n - 1);
    return x;
}

TowerElement TowerContext::pi_power(int n, long k) const {
    TowerElement x = one(n);
    for (long i = 0; i < k; ++i) x = mul_by_pi(x);
    return x;
}

void TowerContext::check_elem(const TowerElement& x) const {
    if (x.ctx_ != this) throw std::invalid_argument("TowerElement: tower spec mismatch");
}

TowerElement TowerContext::coerce(const TowerElement& x, int n) const {
    check_elem(x);
    if (n < x.level_) throw std::invalid_argument("TowerContext::coerce: cannot lower level");
    TowerElement cur = x;
    while (cur.level_ < n) {
        TowerElement up = zero(cur.level_ + 1);
        up.up_[0] = cur;
        cur = std::move(up);
    }
    return cur;
}

// --- element predicates -----------------------------------------------------

bool TowerElement::indistinguishable_from_zero() const {
    if (!ctx_) throw std::logic_error("TowerElement: empty element");
    if (level_ == 0) {
        for (const auto& c : base_)
            if (!c.indistinguishable_from_zero()) return false;
        return true;
    }
    for (const auto& c : up_)
        if (!c.indistinguishable_from_zero()) return false;
    return true;
}

bool TowerElement::is_exact_zero() const {
    if (!ctx_) throw std::logic_error("TowerElement: empty element");
    if (level_ == 0) {
        for (const auto& c : base_)
            if (!c.is_exact_zero()) return false;
        return true;
    }
    for (const auto& c : up_)
        if (!c.is_exact_zero()) return false;
    return true;
}

std::optional<PadicScalar> TowerElement::as_scalar() const {
    if (!ctx_) return std::nullopt;
    if (level_ == 0) {
        for (size_t j = 1; j < base_.size(); ++j)
            if (!base_[j].is_exact_zero()) return std::nullopt;
        return base_[0];
    }
    for (size_t j = 1; j < up_.size(); ++j)
        if (!up_[j].is_exact_zero()) return std::nullopt;
    return up_[0].as_scalar();
}

ValBound TowerElement::valuation_bound() const {
    if (!ctx_) throw std::logic_error("TowerElement: empty element");
    ValBound best = ValBound::inf();
    if (level_ == 0) {
        Frac piv = ctx_->spec().kind == TowerKind::Kummer ? ctx_->pi_valuation(0) : Frac(0);
        for (size_t j = 0; j < base_.size(); ++j) {
            ValBound v = base_[j].valuation();
            if (v.infinite) continue;
            v.v = v.v + piv * Frac(static_cast<long long>(j));
            best = vmin(best, v);
        }
        return best;
    }
    Frac piv = ctx_->pi_valuation(level_);
    for (size_t j = 0; j < up_.size(); ++j) {
        ValBound v = up_[j].valuation_bound();
        if (v.infinite) continue;
        v.v = v.v + piv * Frac(static_cast<long long>(j));
        best = vmin(best, v);
    }
    return best;
}

// --- arithmetic --------------------------------------------------------------

namespace {
void align(const TowerElement*& a, const TowerElement*& b, TowerElement& store_a,
           TowerElement& store_b) {
    if (a->context() != b->context())
        throw std::invalid_argument("TowerElement: tower spec mismatch");
    if (a->level() < b->level()) {
        store_a = a->context()->coerce(*a, b->level());
        a = &store_a;
    } else if (b->level() < a->level()) {
        store_b = b->context()->coerce(*b, a->level());
        b = &store_b;
    }
}
}  // namespace

TowerElement t_add(const TowerElement& a0, const TowerElement& b0) {
    const TowerElement* a = &a0;
    const TowerElement* b = &b0;
    TowerElement sa, sb;
    align(a, b, sa, sb);
    TowerElement r = *a;
    if (r.level_ == 0) {
        for (size_t j = 0; j < r.base_.size(); ++j) r.base_[j] = add(r.base_[j], b->base_[j]);
    } else {
        for (size_t j = 0; j < r.up_.size(); ++j) r.up_[j] = t_add(r.up_[j], b->up_[j]);
    }
    return r;
}

TowerElement t_neg(const TowerElement& a) {
    TowerElement r = a;
    if (r.level_ == 0)
        for (auto& c : r.base_) c = c.neg();
    else
        for (auto& c : r.up_) c = t_neg(c);
    return r;
}

TowerElement t_sub(const TowerElement& a, const TowerElement& b) { return t_add(a, t_neg(b)); }

TowerElement scalar_mul(const PadicScalar& c, const TowerElement& a) {
    TowerElement r = a;
    if (r.level_ == 0)
        for (auto& x : r.base_) x = mul(c, x);
    else
        for (auto& x : r.up_) x = scalar_mul(c, x);
    return r;
}

TowerElement TowerContext::reduce_mod_g(std::vector<PadicScalar> coeffs) const {
    const size_t e = static_cast<size_t>(base_degree());
    while (coeffs.size() > e) {
        PadicScalar lead = coeffs.back();
        coeffs.pop_back();
        size_t shift = coeffs.size() - e;
        if (!lead.is_exact_zero())
            for (size_t j = 0; j < e; ++j)
                coeffs[shift + j] = sub(coeffs[shift + j], mul(lead, g_scalar_[j]));
    }
    coeffs.resize(e, PadicScalar::zero(spec_.p));
    TowerElement x;
    x.ctx_ = this;
    x.level_ = 0;
    x.base_ = std::move(coeffs);
    return x;
}

TowerElement t_mul(const TowerElement& a0, const TowerElement& b0) {
    const TowerElement* a = &a0;
    const TowerElement* b = &b0;
    TowerElement sa, sb;
    align(a, b, sa, sb);
    const TowerContext* ctx = a->context();

    // scalar fast paths (step coefficients, traces, series coefficients)
    if (auto s = b->as_scalar()) return scalar_mul(*s, *a);
    if (auto s = a->as_scalar()) return scalar_mul(*s, *b);

    if (a->level_ == 0) {
        if (ctx->spec().kind == TowerKind::LubinTate) {
            TowerElement r = *a;
            r.base_[0] = mul(a->base_[0], b->base_[0]);
            return r;
        }
        const size_t e = a->base_.size();
        std::vector<PadicScalar> conv(2 * e - 1, PadicScalar::zero(ctx->prime()));
        for (size_t i = 0; i < e; ++i)
            for (size_t j = 0; j < e; ++j)
                conv[i + j] = add(conv[i + j], mul(a->base_[i], b->base_[j]));
        return ctx->reduce_mod_g(std::move(conv));
    }

    const int lvl = a->level_;
    const size_t d = a->up_.size();
    std::vector<TowerElement> conv(2 * d - 1, ctx->zero(lvl - 1));
    const bool par = kernels::parallel_enabled() && lvl >= 2;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (par)
#endif
    for (long k = 0; k < static_cast<long>(2 * d - 1); ++k) {
        size_t uk = static_cast<size_t>(k);
        size_t ilo = uk >= d ? uk - (d - 1) : 0;
        size_t ihi = std::min(d - 1, uk);
        TowerElement acc = ctx->zero(lvl - 1);
        for (size_t i = ilo; i <= ihi; ++i)
            acc = t_add(acc, t_mul(a->up_[i], b->up_[uk - i]));
        conv[uk] = std::move(acc);
    }

    // reduce by the monic step polynomial
    const auto& step = ctx->step_poly(lvl);
    for (size_t k = conv.size(); k-- > d;) {
        TowerElement lead = std::move(conv[k]);
        conv.pop_back();
        size_t shift = conv.size() - d;
        if (lead.is_exact_zero()) continue;
        for (size_t j = 0; j < d; ++j) {
            if (step[j].is_exact_zero()) continue;
            conv[shift + j] = t_sub(conv[shift + j], t_mul(lead, step[j]));
        }
    }
    TowerElement r;
    r.ctx_ = ctx;
    r.level_ = lvl;
    r.up_ = std::move(conv);
    return r;
}

TowerElement mul_by_pi(const TowerElement& a) {
    const TowerContext* ctx = a.context();
    if (!ctx) throw std::logic_error("mul_by_pi: empty element");
    if (a.level_ == 0) {
        if (ctx->spec().kind == TowerKind::LubinTate) return ctx->zero(0);  // pi_0 = 0
        // shift within the Kummer base, reduce by g
        std::vector<PadicScalar> coeffs(a.base_.size() + 1, PadicScalar::zero(ctx->prime()));
        for (size_t j = 0; j < a.base_.size(); ++j) coeffs[j + 1] = a.base_[j];
        return ctx->reduce_mod_g(std::move(coeffs));
    }
    const size_t d = a.up_.size();
    const auto& step = ctx->step_poly(a.level_);
    const TowerElement& top = a.up_[d - 1];
    TowerElement r = ctx->zero(a.level_);
    for (size_t j = d - 1; j >= 1; --j) r.up_[j] = a.up_[j - 1];
    if (!top.is_exact_zero()) {
        for (size_t j = 0; j < d; ++j) {
            if (step[j].is_exact_zero()) continue;
            // step[0] = -pi_{n-1} for upper Lubin-Tate / Kummer steps: recurse cheaply
            if (j == 0 && ctx->step0_is_minus_pi(a.level_)) {
                r.up_[0] = t_add(r.up_[0], mul_by_pi(top));
            } else if (auto s = step[j].as_scalar()) {
                r.up_[j] = t_sub(r.up_[j], scalar_mul(*s, top));
            } else {
                r.up_[j] = t_sub(r.up_[j], t_mul(top, step[j]));
            }
        }
    }
    return r;
}

TowerElement cap_abs_precision(const TowerElement& a, const Frac& A) {
    const TowerContext* ctx = a.context();
    if (!ctx) throw std::logic_error("cap_abs_precision: empty element");
    TowerElement r = a;
    if (r.level_ == 0) {
        Frac piv = ctx->spec().kind == TowerKind::Kummer ? ctx->pi_valuation(0) : Frac(0);
        for (size_t j = 0; j < r.base_.size(); ++j) {
            Frac cutoff = A - piv * Frac(static_cast<long long>(j));
            r.base_[j] = r.base_[j].cap_abs_precision(cutoff.ceil());
        }
        return r;
    }
    Frac piv = ctx->pi_valuation(r.level_);
    for (size_t j = 0; j < r.up_.size(); ++j)
        r.up_[j] = cap_abs_precision(r.up_[j], A - piv * Frac(static_cast<long long>(j)));
    return r;
}

// --- traces and norms --------------------------------------------------------

TowerElement TowerContext::trace_step(const TowerElement& x) const {
    check_elem(x);
    if (x.level_ < 1) throw std::invalid_argument("trace_step: element is at the base level");
    const auto& s = step_power_sums(x.level_);
    TowerElement acc = zero(x.level_ - 1);
    for (size_t j = 0; j < x.up_.size(); ++j) {
        if (x.up_[j].is_exact_zero()) continue;
        acc = t_add(acc, t_mul(x.up_[j], s[j]));
    }
    return acc;
}

TowerElement TowerContext::trace_down(const TowerElement& x, int m) const {
    check_elem(x);
    if (m > x.level_) throw std::invalid_argument("trace_down: target level above element");
    TowerElement cur = x;
    while (cur.level_ > m) cur = trace_step(cur);
    return cur;
}

namespace {
TowerElement det_rec(const TowerContext* ctx, int lvl, std::vector<std::vector<TowerElement>>& m,
                     std::vector<size_t>& cols, size_t row) {
    const size_t n = m.size();
    if (row == n - 1) return m[row][cols[0]];
    TowerElement acc = ctx->zero(lvl);
    for (size_t k = 0; k < cols.size(); ++k) {
        size_t c = cols[k];
        if (!m[row][c].is_exact_zero()) {
            std::vector<size_t> rest;
            rest.reserve(cols.size() - 1);
            for (size_t t = 0; t < cols.size(); ++t)
                if (t != k) rest.push_back(cols[t]);
            TowerElement minor = det_rec(ctx, lvl, m, rest, row + 1);
            TowerElement term = t_mul(m[row][c], minor);
            acc = (k % 2 == 0) ? t_add(acc, term) : t_sub(acc, term);
        }
    }
    return acc;
}

PadicScalar det_scalar(std::vector<std::vector<PadicScalar>>& m, std::vector<size_t>& cols,
                       size_t row, long p) {
    const size_t n = m.size();
    if (row == n - 1) return m[row][cols[0]];
    PadicScalar acc = PadicScalar::zero(p);
    for (size_t k = 0; k < cols.size(); ++k) {
        size_t c = cols[k];
        if (!m[row][c].is_exact_zero()) {
            std::vector<size_t> rest;
            rest.reserve(cols.size() - 1);
            for (size_t t = 0; t < cols.size(); ++t)
                if (t != k) rest.push_back(cols[t]);
            PadicScalar minor = det_scalar(m, rest, row + 1, p);
            PadicScalar term = mul(m[row][c], minor);
            acc = (k % 2 == 0) ? add(acc, term) : sub(acc, term);
        }
    }
    return acc;
}
}  // namespace

TowerElement TowerContext::norm_step(const TowerElement& x) const {
    check_elem(x);
    if (x.level_ < 1) throw std::invalid_argument("norm_step: element is at the base level");
    const size_t d = x.up_.size();
    // multiplication matrix: column j = coordinates of x * pi^j
    std::vector<std::vector<TowerElement>> m(d, std::vector<TowerElement>(d));
    TowerElement cur = x;
    for (size_t j = 0; j < d; ++j) {
        for (size_t i = 0; i < d; ++i) m[i][j] = cur.up_[i];
        if (j + 1 < d) cur = mul_by_pi(cur);
    }
    std::vector<size_t> cols(d);
    for (size_t i = 0; i < d; ++i) cols[i] = i;
    return det_rec(this, x.level_ - 1, m, cols, 0);
}

PadicScalar TowerContext::norm_to_qp(const TowerElement& x) const {
    check_elem(x);
    TowerElement cur = x;
    while (cur.level_ > 0) cur = norm_step(cur);
    if (spec_.kind == TowerKind::LubinTate) return cur.base_[0];
    const size_t e = cur.base_.size();
    if (e == 1) return cur.base_[0];
    std::vector<std::vector<PadicScalar>> m(e, std::vector<PadicScalar>(e));
    TowerElement c2 = cur;
    for (size_t j = 0; j < e; ++j) {
        for (size_t i = 0; i < e; ++i) m[i][j] = c2.base_[i];
        if (j + 1 < e) c2 = mul_by_pi(c2);
    }
    std::vector<size_t> cols(e);
    for (size_t i = 0; i < e; ++i) cols[i] = i;
    return det_scalar(m, cols, 0, spec_.p);
}

bool t_indistinguishable(const TowerElement& a, const TowerElement& b) {
    return t_sub(a, b).indistinguishable_from_zero();
}

namespace {
ValBound abs_prec_rec(const TowerElement& x) {
    const TowerContext* ctx = x.context();
    ValBound best = ValBound::inf();
    if (x.level() == 0) {
        Frac piv = ctx->spec().kind == TowerKind::Kummer ? ctx->pi_valuation(0) : Frac(0);
        for (size_t j = 0; j < x.base().size(); ++j) {
            ValBound v = x.base()[j].abs_precision();
            if (v.infinite) continue;
            v.v = v.v + piv * Frac(static_cast<long long>(j));
            best = vmin(best, v);
        }
        return best;
    }
    Frac piv = ctx->pi_valuation(x.level());
    for (size_t j = 0; j < x.up().size(); ++j) {
        ValBound v = abs_prec_rec(x.up()[j]);
        if (v.infinite) continue;
        v.v = v.v + piv * Frac(static_cast<long long>(j));
        best = vmin(best, v);
    }
    return best;
}
}  // namespace

ValBound t_abs_precision(const TowerElement& a) {
    if (!a.context()) throw std::logic_error("t_abs_precision: empty element");
    return abs_prec_rec(a);
}

}  // namespace ptower
