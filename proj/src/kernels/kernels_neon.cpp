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

// One complex double per 128-bit register.

#include <arm_neon.h>

#include "kernels_internal.hpp"

namespace cqcs {

namespace {

inline float64x2_t cmul(float64x2_t x, double c_re, double c_im) {
    const float64x2_t swapped = vextq_f64(x, x, 1);  // [im, re]
    const float64x2_t signed_im = {-c_im, c_im};
    return vfmaq_f64(vmulq_n_f64(x, c_re), swapped, signed_im);
}

void apply_matrix(Amplitude *amps, size_t dim, unsigned q, const Amplitude *m) {
    auto *a = reinterpret_cast<double *>(amps);
    const size_t stride = size_t{1} << q;
    for (size_t base = 0; base < dim; base += 2 * stride) {
        for (size_t i = base; i < base + stride; ++i) {
            const float64x2_t x = vld1q_f64(a + 2 * i);
            const float64x2_t y = vld1q_f64(a + 2 * (i + stride));
            vst1q_f64(a + 2 * i, vaddq_f64(cmul(x, m[0].real(), m[0].imag()), cmul(y, m[1].real(), m[1].imag())));
            vst1q_f64(a + 2 * (i + stride),
                      vaddq_f64(cmul(x, m[2].real(), m[2].imag()), cmul(y, m[3].real(), m[3].imag())));
        }
    }
}

void apply_diagonal(Amplitude *amps, size_t dim, unsigned q, Amplitude d0, Amplitude d1) {
    auto *a = reinterpret_cast<double *>(amps);
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < dim; ++i) {
        const Amplitude &d = (i & bit) ? d1 : d0;
        vst1q_f64(a + 2 * i, cmul(vld1q_f64(a + 2 * i), d.real(), d.imag()));
    }
}

double probabilities(const Amplitude *amps, size_t dim, double *out) {
    const auto *a = reinterpret_cast<const double *>(amps);
    double total = 0.0;
    for (size_t i = 0; i < dim; ++i) {
        const float64x2_t x = vld1q_f64(a + 2 * i);
        out[i] = vaddvq_f64(vmulq_f64(x, x));
        total += out[i];
    }
    return total;
}

double excited_probability(const Amplitude *amps, size_t dim, unsigned q) {
    const auto *a = reinterpret_cast<const double *>(amps);
    const size_t stride = size_t{1} << q;
    float64x2_t acc = vdupq_n_f64(0.0);
    for (size_t base = stride; base < dim; base += 2 * stride) {
        for (size_t i = base; i < base + stride; ++i) {
            const float64x2_t x = vld1q_f64(a + 2 * i);
            acc = vfmaq_f64(acc, x, x);
        }
    }
    return vaddvq_f64(acc);
}

void scale(Amplitude *amps, size_t dim, double factor) {
    auto *a = reinterpret_cast<double *>(amps);
    for (size_t i = 0; i < dim; ++i) {
        vst1q_f64(a + 2 * i, vmulq_n_f64(vld1q_f64(a + 2 * i), factor));
    }
}

}  // namespace

namespace detail {

const KernelTable &neon_kernels() {
    // Permutations are pure data movement; the scalar loops already compile
    // to 128-bit moves.
    static const KernelTable table{
        "neon",
        apply_matrix,
        apply_diagonal,
        scalar_kernels().apply_cnot,
        scalar_kernels().apply_swap,
        probabilities,
        excited_probability,
        scale,
    };
    return table;
}

}  // namespace detail

}  // namespace cqcs
