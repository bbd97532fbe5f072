// Copyright 2026 The CQCS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace cqcs {

namespace {

#ifdef CQCS_HAVE_AVX2_KERNELS
bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable &select_kernels() {
    const auto available = available_kernels();
    if (const char *env = std::getenv("CQCS_KERNELS"); env != nullptr && *env != '\0') {
        for (const KernelTable *t : available) {
            if (t->name == std::string_view(env)) {
                return *t;
            }
        }
        return scalar_kernels();
    }
    return *available.back();
}

}  // namespace

std::vector<const KernelTable *> available_kernels() {
    std::vector<const KernelTable *> tables{&scalar_kernels()};
#ifdef CQCS_HAVE_AVX2_KERNELS
    if (cpu_has_avx2()) {
        tables.push_back(&detail::avx2_kernels());
    }
#endif
#ifdef CQCS_HAVE_NEON_KERNELS
    tables.push_back(&detail::neon_kernels());
#endif
    return tables;
}

const KernelTable &active_kernels() {
    static const KernelTable &table = select_kernels();
    return table;
}

}  // namespace cqcs
