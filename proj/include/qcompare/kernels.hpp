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

/**
 * @file
 * Complex inner-loop kernels with a scalar reference implementation and
 * SIMD variants chosen at runtime.
 *
 * All amplitudes are stored interleaved as std::complex<double>. Every
 * variant must agree with the scalar reference to within rounding; the
 * scalar path is the definition.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qcompare {

using cplx = std::complex<double>;

namespace kernels {

enum class Isa { scalar, avx2 };

struct Table {
    Isa isa;
    /// sum_i conj(a_i) * b_i
    cplx (*cdot)(const cplx *a, const cplx *b, std::size_t n);
    /// sum_i a_i * b_i
    cplx (*udot)(const cplx *a, const cplx *b, std::size_t n);
    /// sum_i |a_i|^2
    double (*norm2)(const cplx *a, std::size_t n);
    /// y += alpha * x
    void (*axpy)(cplx alpha, const cplx *x, cplx *y, std::size_t n);
};

const Table &scalar_table() noexcept;

/// nullptr when the binary was built without the variant or the CPU lacks it.
const Table *table_for(Isa isa) noexcept;

bool isa_supported(Isa isa) noexcept;

std::string_view isa_name(Isa isa) noexcept;

/// Table used by the library. Picks the widest supported variant unless the
/// QCOMPARE_ISA environment variable names another one ("scalar", "avx2").
const Table &active() noexcept;

inline cplx cdot(std::span<const cplx> a, std::span<const cplx> b) noexcept {
    return active().cdot(a.data(), b.data(), a.size());
}

inline cplx udot(std::span<const cplx> a, std::span<const cplx> b) noexcept {
    return active().udot(a.data(), b.data(), a.size());
}

inline double norm2(std::span<const cplx> a) noexcept {
    return active().norm2(a.data(), a.size());
}

inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) noexcept {
    active().axpy(alpha, x.data(), y.data(), x.size());
}

namespace detail {
const Table *avx2_table() noexcept;
} // namespace detail

} // namespace kernels
} // namespace qcompare
