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

#include "qcompare/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace qcompare::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(QCOMPARE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Table &select() noexcept {
    const char *forced = std::getenv("QCOMPARE_ISA");
    if (forced != nullptr) {
        const std::string_view name(forced);
        if (name == "scalar") {
            return scalar_table();
        }
        if (name == "avx2" && isa_supported(Isa::avx2)) {
            return *table_for(Isa::avx2);
        }
    }
    if (isa_supported(Isa::avx2)) {
        return *table_for(Isa::avx2);
    }
    return scalar_table();
}

} // namespace

#if !defined(QCOMPARE_HAVE_AVX2)
namespace detail {
const Table *avx2_table() noexcept { return nullptr; }
} // namespace detail
#endif

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2: {
        static const bool supported = cpu_has_avx2();
        return supported;
    }
    }
    return false;
}

const Table *table_for(Isa isa) noexcept {
    if (!isa_supported(isa)) {
        return nullptr;
    }
    switch (isa) {
    case Isa::scalar:
        return &scalar_table();
    case Isa::avx2:
        return detail::avx2_table();
    }
    return nullptr;
}

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    }
    return "unknown";
}

const Table &active() noexcept {
    static const Table &table = select();
    return table;
}

} // namespace qcompare::kernels
