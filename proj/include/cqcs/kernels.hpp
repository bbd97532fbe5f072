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

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace cqcs {

using Amplitude = std::complex<double>;

/// Statevector inner loops. Index bit q of an amplitude is qubit q. Every
/// table computes the same results as the scalar reference up to rounding;
/// the SIMD tables only change instruction selection.
struct KernelTable {
    std::string_view name;
    /// 2x2 matrix, row-major m[0..3], on qubit q.
    void (*apply_matrix)(Amplitude *amps, size_t dim, unsigned q, const Amplitude *m);
    /// diag(d0, d1) on qubit q.
    void (*apply_diagonal)(Amplitude *amps, size_t dim, unsigned q, Amplitude d0, Amplitude d1);
    void (*apply_cnot)(Amplitude *amps, size_t dim, unsigned control, unsigned target);
    void (*apply_swap)(Amplitude *amps, size_t dim, unsigned a, unsigned b);
    /// out[i] = |amps[i]|^2; returns the sum.
    double (*probabilities)(const Amplitude *amps, size_t dim, double *out);
    /// Probability mass with bit q set.
    double (*excited_probability)(const Amplitude *amps, size_t dim, unsigned q);
    void (*scale)(Amplitude *amps, size_t dim, double factor);
};

const KernelTable &scalar_kernels();

/// Every table compiled in and supported by this CPU, scalar first.
std::vector<const KernelTable *> available_kernels();

/// Widest supported table. CQCS_KERNELS=scalar|avx2|neon overrides the
/// choice (falling back to scalar when the request is unsupported).
const KernelTable &active_kernels();

}  // namespace cqcs
