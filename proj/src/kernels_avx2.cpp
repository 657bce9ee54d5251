// Copyright 2026 The qcompare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2 -mfma. Nothing in here may run before the dispatcher
// has confirmed CPU support.
#include "qcompare/kernels.hpp"

#include <immintrin.h>

namespace qcompare::kernels {
namespace {

// Two complex<double> per __m256d: [r0, i0, r1, i1].

inline __m256d load2(const cplx *p) { return _mm256_loadu_pd(reinterpret_cast<const double *>(p)); }

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Accumulates prod = a*b lane-wise and cross = a*swap(b) so that
//   sum(ar*br), sum(ai*bi) sit in prod and sum(ar*bi), sum(ai*br) in cross.
inline void accumulate(const cplx *a, const cplx *b, std::size_t n, __m256d &prod, __m256d &cross,
                       std::size_t &i) {
    __m256d prod1 = _mm256_setzero_pd();
    __m256d cross1 = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        const __m256d a0 = load2(a + i), b0 = load2(b + i);
        const __m256d a1 = load2(a + i + 2), b1 = load2(b + i + 2);
        prod = _mm256_fmadd_pd(a0, b0, prod);
        cross = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), cross);
        prod1 = _mm256_fmadd_pd(a1, b1, prod1);
        cross1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), cross1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d a0 = load2(a + i), b0 = load2(b + i);
        prod = _mm256_fmadd_pd(a0, b0, prod);
        cross = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), cross);
    }
    prod = _mm256_add_pd(prod, prod1);
    cross = _mm256_add_pd(cross, cross1);
}

// Lane sums: even lanes hold real-part products, odd lanes imaginary.
inline void split_sum(__m256d v, double &even, double &odd) {
    alignas(32) double buf[4];
    _mm256_store_pd(buf, v);
    even = buf[0] + buf[2];
    odd = buf[1] + buf[3];
}

cplx cdot_avx2(const cplx *a, const cplx *b, std::size_t n) {
    __m256d prod = _mm256_setzero_pd();
    __m256d cross = _mm256_setzero_pd();
    std::size_t i = 0;
    accumulate(a, b, n, prod, cross, i);
    double rr, ii, ri, ir;
    split_sum(prod, rr, ii);  // ar*br, ai*bi
    split_sum(cross, ri, ir); // ar*bi, ai*br
    double re = rr + ii;
    double im = ri - ir;
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

cplx udot_avx2(const cplx *a, const cplx *b, std::size_t n) {
    __m256d prod = _mm256_setzero_pd();
    __m256d cross = _mm256_setzero_pd();
    std::size_t i = 0;
    accumulate(a, b, n, prod, cross, i);
    double rr, ii, ri, ir;
    split_sum(prod, rr, ii);
    split_sum(cross, ri, ir);
    double re = rr - ii;
    double im = ri + ir;
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

double norm2_avx2(const cplx *a, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = load2(a + i);
        const __m256d v1 = load2(a + i + 2);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d v0 = load2(a + i);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
    return acc;
}

void axpy_avx2(cplx alpha, const cplx *x, cplx *y, std::size_t n) {
    // y += (wr + i wi)(xr + i xi) = wr*[xr, xi] + wi*[-xi, xr]
    const __m256d wr = _mm256_set1_pd(alpha.real());
    const __m256d wi = _mm256_set_pd(alpha.imag(), -alpha.imag(), alpha.imag(), -alpha.imag());
    auto *yd = reinterpret_cast<double *>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = load2(x + i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        yv = _mm256_fmadd_pd(wr, xv, yv);
        yv = _mm256_fmadd_pd(wi, _mm256_permute_pd(xv, 0b0101), yv);
        _mm256_storeu_pd(yd + 2 * i, yv);
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cplx(y[i].real() + alpha.real() * xr - alpha.imag() * xi,
                    y[i].imag() + alpha.real() * xi + alpha.imag() * xr);
    }
}

constexpr Table kAvx2{Isa::avx2, cdot_avx2, udot_avx2, norm2_avx2, axpy_avx2};

} // namespace

namespace detail {
const Table *avx2_table() noexcept { return &kAvx2; }
} // namespace detail

} // namespace qcompare::kernels
