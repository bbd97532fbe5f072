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

// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernels_internal.hpp"

namespace cqcs {

namespace {

using detail::insert_two_zero_bits;

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d cmul(__m256d x, __m256d c_re, __m256d c_im) {
    const __m256d swapped = _mm256_permute_pd(x, 0b0101);
    return _mm256_fmaddsub_pd(x, c_re, _mm256_mul_pd(swapped, c_im));
}

inline __m256d broadcast_re(Amplitude a) { return _mm256_set1_pd(a.real()); }
inline __m256d broadcast_im(Amplitude a) { return _mm256_set1_pd(a.imag()); }
// [lo, lo, hi, hi] for the per-lane coefficient of two adjacent amplitudes.
inline __m256d lanes_re(Amplitude lo, Amplitude hi) { return _mm256_setr_pd(lo.real(), lo.real(), hi.real(), hi.real()); }
inline __m256d lanes_im(Amplitude lo, Amplitude hi) { return _mm256_setr_pd(lo.imag(), lo.imag(), hi.imag(), hi.imag()); }

void apply_matrix(Amplitude *amps, size_t dim, unsigned q, const Amplitude *m) {
    auto *a = reinterpret_cast<double *>(amps);
    if (q == 0) {
        // Pair (i, i+1) lives in one register.
        const __m256d diag_re = lanes_re(m[0], m[3]), diag_im = lanes_im(m[0], m[3]);
        const __m256d off_re = lanes_re(m[1], m[2]), off_im = lanes_im(m[1], m[2]);
        for (size_t i = 0; i < dim; i += 2) {
            const __m256d x = _mm256_loadu_pd(a + 2 * i);
            const __m256d flipped = _mm256_permute2f128_pd(x, x, 0x01);
            const __m256d y = _mm256_add_pd(cmul(x, diag_re, diag_im), cmul(flipped, off_re, off_im));
            _mm256_storeu_pd(a + 2 * i, y);
        }
        return;
    }
    const __m256d m0r = broadcast_re(m[0]), m0i = broadcast_im(m[0]);
    const __m256d m1r = broadcast_re(m[1]), m1i = broadcast_im(m[1]);
    const __m256d m2r = broadcast_re(m[2]), m2i = broadcast_im(m[2]);
    const __m256d m3r = broadcast_re(m[3]), m3i = broadcast_im(m[3]);
    const size_t stride = size_t{1} << q;
    for (size_t base = 0; base < dim; base += 2 * stride) {
        for (size_t i = base; i < base + stride; i += 2) {
            double *px = a + 2 * i;
            double *py = a + 2 * (i + stride);
            const __m256d x = _mm256_loadu_pd(px);
            const __m256d y = _mm256_loadu_pd(py);
            _mm256_storeu_pd(px, _mm256_add_pd(cmul(x, m0r, m0i), cmul(y, m1r, m1i)));
            _mm256_storeu_pd(py, _mm256_add_pd(cmul(x, m2r, m2i), cmul(y, m3r, m3i)));
        }
    }
}

void apply_diagonal(Amplitude *amps, size_t dim, unsigned q, Amplitude d0, Amplitude d1) {
    auto *a = reinterpret_cast<double *>(amps);
    if (q == 0) {
        const __m256d dr = lanes_re(d0, d1), di = lanes_im(d0, d1);
        for (size_t i = 0; i < dim; i += 2) {
            _mm256_storeu_pd(a + 2 * i, cmul(_mm256_loadu_pd(a + 2 * i), dr, di));
        }
        return;
    }
    const __m256d d0r = broadcast_re(d0), d0i = broadcast_im(d0);
    const __m256d d1r = broadcast_re(d1), d1i = broadcast_im(d1);
    const size_t stride = size_t{1} << q;
    for (size_t base = 0; base < dim; base += 2 * stride) {
        for (size_t i = base; i < base + stride; i += 2) {
            double *px = a + 2 * i;
            double *py = a + 2 * (i + stride);
            _mm256_storeu_pd(px, cmul(_mm256_loadu_pd(px), d0r, d0i));
            _mm256_storeu_pd(py, cmul(_mm256_loadu_pd(py), d1r, d1i));
        }
    }
}

// Exchanges amps[i | from] and amps[i | to] for every i with zero bits at lo
// and hi. With lo >= 1 consecutive k map to consecutive i, so two amplitudes
// move per register.
inline void exchange(Amplitude *amps, size_t dim, unsigned lo, unsigned hi, size_t from, size_t to) {
    auto *a = reinterpret_cast<double *>(amps);
    const size_t count = dim / 4;
    if (lo == 0 || count < 2) {
        for (size_t k = 0; k < count; ++k) {
            const size_t i = insert_two_zero_bits(k, lo, hi);
            std::swap(amps[i | from], amps[i | to]);
        }
        return;
    }
    for (size_t k = 0; k < count; k += 2) {
        const size_t i = insert_two_zero_bits(k, lo, hi);
        double *px = a + 2 * (i | from);
        double *py = a + 2 * (i | to);
        const __m256d x = _mm256_loadu_pd(px);
        const __m256d y = _mm256_loadu_pd(py);
        _mm256_storeu_pd(px, y);
        _mm256_storeu_pd(py, x);
    }
}

void apply_cnot(Amplitude *amps, size_t dim, unsigned control, unsigned target) {
    const unsigned lo = control < target ? control : target;
    const unsigned hi = control < target ? target : control;
    const size_t cbit = size_t{1} << control;
    exchange(amps, dim, lo, hi, cbit, cbit | (size_t{1} << target));
}

void apply_swap(Amplitude *amps, size_t dim, unsigned qa, unsigned qb) {
    const unsigned lo = qa < qb ? qa : qb;
    const unsigned hi = qa < qb ? qb : qa;
    exchange(amps, dim, lo, hi, size_t{1} << qa, size_t{1} << qb);
}

inline double horizontal_sum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double probabilities(const Amplitude *amps, size_t dim, double *out) {
    const auto *a = reinterpret_cast<const double *>(amps);
    if (dim < 4) {
        return scalar_kernels().probabilities(amps, dim, out);
    }
    __m256d acc = _mm256_setzero_pd();
    for (size_t i = 0; i < dim; i += 4) {
        const __m256d x = _mm256_loadu_pd(a + 2 * i);
        const __m256d y = _mm256_loadu_pd(a + 2 * i + 4);
        // hadd gives [p0, p2, p1, p3]; restore index order.
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y));
        const __m256d p = _mm256_permute4x64_pd(h, 0b11011000);
        _mm256_storeu_pd(out + i, p);
        acc = _mm256_add_pd(acc, p);
    }
    return horizontal_sum(acc);
}

double excited_probability(const Amplitude *amps, size_t dim, unsigned q) {
    const auto *a = reinterpret_cast<const double *>(amps);
    if (q == 0) {
        return scalar_kernels().excited_probability(amps, dim, q);
    }
    const size_t stride = size_t{1} << q;
    __m256d acc = _mm256_setzero_pd();
    for (size_t base = stride; base < dim; base += 2 * stride) {
        for (size_t i = base; i < base + stride; i += 2) {
            const __m256d x = _mm256_loadu_pd(a + 2 * i);
            acc = _mm256_fmadd_pd(x, x, acc);
        }
    }
    return horizontal_sum(acc);
}

void scale(Amplitude *amps, size_t dim, double factor) {
    auto *a = reinterpret_cast<double *>(amps);
    const __m256d f = _mm256_set1_pd(factor);
    size_t i = 0;
    for (; i + 4 <= 2 * dim; i += 4) {
        _mm256_storeu_pd(a + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), f));
    }
    for (; i < 2 * dim; ++i) {
        a[i] *= factor;
    }
}

}  // namespace

namespace detail {

const KernelTable &avx2_kernels() {
    static const KernelTable table{
        "avx2", apply_matrix, apply_diagonal, apply_cnot, apply_swap, probabilities, excited_probability, scale,
    };
    return table;
}

}  // namespace detail

}  // namespace cqcs
