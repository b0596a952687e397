#pragma once

#include <gmpxx.h>

#include <vector>

namespace ptower::kernels {

// Exact-integer inner loops. Each kernel has a serial reference and an
// OpenMP variant; outputs are bitwise identical because every output
// coefficient is an independent accumulation in a fixed order.
// The global switch selects which variant the library routines call.

void set_parallel(bool on);
bool parallel_enabled();
int thread_count();

using ZVec = std::vector<mpz_class>;

// c = a * b (full convolution), coefficients reduced mod m when m != 0.
ZVec conv_serial(const ZVec& a, const ZVec& b, const mpz_class& m);
ZVec conv_omp(const ZVec& a, const ZVec& b, const mpz_class& m);
ZVec conv(const ZVec& a, const ZVec& b, const mpz_class& m);

// c = (a * b) truncated to degree < limit, reduced mod m when m != 0.
ZVec conv_trunc_serial(const ZVec& a, const ZVec& b, size_t limit, const mpz_class& m);
ZVec conv_trunc_omp(const ZVec& a, const ZVec& b, size_t limit, const mpz_class& m);
ZVec conv_trunc(const ZVec& a, const ZVec& b, size_t limit, const mpz_class& m);

}  // namespace ptower::kernels
