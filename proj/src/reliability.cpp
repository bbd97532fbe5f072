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

#include "cqcs/reliability.hpp"

#include <algorithm>
#include <stdexcept>

namespace cqcs {

PathMatrices floyd_warshall(const CouplingGraph &graph, const NoiseProfile &profile) {
    const size_t n = graph.num_qubits();
    if (profile.num_qubits() != n) {
        throw std::invalid_argument("noise profile does not match topology size");
    }
    PathMatrices m;
    m.n = n;
    m.hops.assign(n * n, kUnreachable);
    m.fidelity.assign(n * n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        m.hops[i * n + i] = 0;
        m.fidelity[i * n + i] = 1.0;
    }
    for (const Edge &e : graph.edges()) {
        const double f = 1.0 - profile.two_qubit(e.u, e.v);
        m.hops[e.u * n + e.v] = m.hops[e.v * n + e.u] = 1;
        m.fidelity[e.u * n + e.v] = m.fidelity[e.v * n + e.u] = f;
    }

    for (size_t k = 0; k < n; ++k) {
        const uint32_t *hk = &m.hops[k * n];
        const double *fk = &m.fidelity[k * n];
        for (size_t i = 0; i < n; ++i) {
            const uint32_t hik = m.hops[i * n + k];
            const double fik = m.fidelity[i * n + k];
            uint32_t *hi = &m.hops[i * n];
            double *fi = &m.fidelity[i * n];
            if (hik != kUnreachable) {
                for (size_t j = 0; j < n; ++j) {
                    // kUnreachable + hik would wrap, so compare in 64 bits.
                    const uint64_t via = static_cast<uint64_t>(hik) + hk[j];
                    if (via < hi[j]) {
                        hi[j] = static_cast<uint32_t>(via);
                    }
                }
            }
            if (fik > 0.0) {
                for (size_t j = 0; j < n; ++j) {
                    fi[j] = std::max(fi[j], fik * fk[j]);
                }
            }
        }
    }
    return m;
}

}  // namespace cqcs
