#include "ptower/kernels.hpp"

#include <atomic>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ptower::kernels {

namespace {
std::atomic<bool> g_parallel{false};
}

void set_parallel(bool on) { g_parallel.store(on); }
bool parallel_enabled() { return g_parallel.load(); }

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

static inline void accumulate_coeff(mpz_class& acc, const ZVec& a, const ZVec& b, size_t k,
                                    const mpz_class& m) {
    const size_t na = a.size(), nb = b.size();
    size_t ilo = k >= nb ? k - (nb - 1) : 0;
    size_t ihi = std::min(na - 1, k);
    acc = 0;
    for (size_t i = ilo; i <= ihi; ++i) mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[k - i].get_mpz_t());
    if (m != 0) {
        acc %= m;
        if (acc < 0) acc += m;
    }
}

ZVec conv_trunc_serial(const ZVec& a, const ZVec& b, size_t limit, const mpz_class& m) {
    if (a.empty() || b.empty()) return {};
    size_t n = std::min(limit, a.size() + b.size() - 1);
    ZVec c(n);
    for (size_t k = 0; k < n; ++k) accumulate_coeff(c[k], a, b, k, m);
    return c;
}

ZVec conv_trunc_omp(const ZVec& a, const ZVec& b, size_t limit, const mpz_class& m) {
    if (a.empty() || b.empty()) return {};
    size_t n = std::min(limit, a.size() + b.size() - 1);
    ZVec c(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long k = 0; k < static_cast<long>(n); ++k)
        accumulate_coeff(c[static_cast<size_t>(k)], a, b, static_cast<size_t>(k), m);
#else
    for (size_t k = 0; k < n; ++k) accumulate_coeff(c[k], a, b, k, m);
#endif
    return c;
}

ZVec conv_trunc(const ZVec& a, const ZVec& b, size_t limit, const mpz_class& m) {
    return parallel_enabled() ? conv_trunc_omp(a, b, limit, m) : conv_trunc_serial(a, b, limit, m);
}

ZVec conv_serial(const ZVec& a, const ZVec& b, const mpz_class& m) {
    if (a.empty() || b.empty()) return {};
    return conv_trunc_serial(a, b, a.size() + b.size() - 1, m);
}

ZVec conv_omp(const ZVec& a, const ZVec& b, const mpz_class& m) {
    if (a.empty() || b.empty()) return {};
    return conv_trunc_omp(a, b, a.size() + b.size() - 1, m);
}

ZVec conv(const ZVec& a, const ZVec& b, const mpz_class& m) {
    return parallel_enabled() ? conv_omp(a, b, m) : conv_serial(a, b, m);
}

}  // namespace ptower::kernels
