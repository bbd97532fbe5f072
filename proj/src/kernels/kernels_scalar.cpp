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

#include "kernels_internal.hpp"

namespace cqcs {

namespace {

using detail::insert_two_zero_bits;

void apply_matrix(Amplitude *amps, size_t dim, unsigned q, const Amplitude *m) {
    auto *a = reinterpret_cast<double *>(amps);
    const double m0r = m[0].real(), m0i = m[0].imag(), m1r = m[1].real(), m1i = m[1].imag();
    const double m2r = m[2].real(), m2i = m[2].imag(), m3r = m[3].real(), m3i = m[3].imag();
    const size_t stride = size_t{1} << q;
    for (size_t base = 0; base < dim; base += 2 * stride) {
        for (size_t i = base; i < base + stride; ++i) {
            double *x = a + 2 * i;
            double *y = a + 2 * (i + stride);
            const double xr = x[0], xi = x[1], yr = y[0], yi = y[1];
            x[0] = m0r * xr - m0i * xi + m1r * yr - m1i * yi;
            x[1] = m0r * xi + m0i * xr + m1r * yi + m1i * yr;
            y[0] = m2r * xr - m2i * xi + m3r * yr - m3i * yi;
            y[1] = m2r * xi + m2i * xr + m3r * yi + m3i * yr;
        }
    }
}

void apply_diagonal(Amplitude *amps, size_t dim, unsigned q, Amplitude d0, Amplitude d1) {
    auto *a = reinterpret_cast<double *>(amps);
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < dim; ++i) {
        const Amplitude &d = (i & bit) ? d1 : d0;
        const double dr = d.real(), di = d.imag();
        double *x = a + 2 * i;
        const double xr = x[0], xi = x[1];
        x[0] = dr * xr - di * xi;
        x[1] = dr * xi + di * xr;
    }
}

void apply_cnot(Amplitude *amps, size_t dim, unsigned control, unsigned target) {
    const unsigned lo = control < target ? control : target;
    const unsigned hi = control < target ? target : control;
    const size_t cbit = size_t{1} << control, tbit = size_t{1} << target;
    for (size_t k = 0; k < dim / 4; ++k) {
        const size_t i = insert_two_zero_bits(k, lo, hi) | cbit;
        std::swap(amps[i], amps[i | tbit]);
    }
}

void apply_swap(Amplitude *amps, size_t dim, unsigned qa, unsigned qb) {
    const unsigned lo = qa < qb ? qa : qb;
    const unsigned hi = qa < qb ? qb : qa;
    const size_t abit = size_t{1} << qa, bbit = size_t{1} << qb;
    for (size_t k = 0; k < dim / 4; ++k) {
        const size_t i = insert_two_zero_bits(k, lo, hi);
        std::swap(amps[i | abit], amps[i | bbit]);
    }
}

double probabilities(const Amplitude *amps, size_t dim, double *out) {
    double total = 0.0;
    for (size_t i = 0; i < dim; ++i) {
        out[i] = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
        total += out[i];
    }
    return total;
}

double excited_probability(const Amplitude *amps, size_t dim, unsigned q) {
    const size_t stride = size_t{1} << q;
    double total = 0.0;
    for (size_t base = stride; base < dim; base += 2 * stride) {
        for (size_t i = base; i < base + stride; ++i) {
            total += amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
        }
    }
    return total;
}

void scale(Amplitude *amps, size_t dim, double factor) {
    auto *a = reinterpret_cast<double *>(amps);
    for (size_t i = 0; i < 2 * dim; ++i) {
        a[i] *= factor;
    }
}

}  // namespace

const KernelTable &scalar_kernels() {
    static const KernelTable table{
        "scalar", apply_matrix, apply_diagonal, apply_cnot, apply_swap, probabilities, excited_probability, scale,
    };
    return table;
}

}  // namespace cqcs
