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

#pragma once

#include <cstddef>
#include <cstdint>

#include "cqcs/kernels.hpp"

namespace cqcs::detail {

/// Spreads k so that zero bits appear at positions lo < hi.
inline size_t insert_two_zero_bits(size_t k, unsigned lo, unsigned hi) {
    const size_t lo_mask = (size_t{1} << lo) - 1;
    k = (k & lo_mask) | ((k & ~lo_mask) << 1);
    const size_t hi_mask = (size_t{1} << hi) - 1;
    return (k & hi_mask) | ((k & ~hi_mask) << 1);
}

#ifdef CQCS_HAVE_AVX2_KERNELS
const KernelTable &avx2_kernels();
#endif
#ifdef CQCS_HAVE_NEON_KERNELS
const KernelTable &neon_kernels();
#endif

}  // namespace cqcs::detail
