// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eeopa {

/// Caps the number of OpenMP workers used by the parallel kernels. Zero keeps
/// the runtime default.
void set_worker_count(int workers);
int worker_count();

/// Runs body(i) for i in [0, n) across OpenMP workers. Each index must be
/// independent; callers merge per-index results in index order.
template <typename Body>
void parallel_for(std::int64_t n, Body &&body)
{
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i)
        body(i);
#else
    for (std::int64_t i = 0; i < n; ++i)
        body(i);
#endif
}

} // namespace eeopa
