// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/parallel.hpp"
#include "eeopa/error.hpp"

namespace eeopa {

const char *to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::unsupported_config: return "unsupported-config";
    case ErrorKind::closed_form_mismatch: return "closed-form-mismatch";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::infeasible_budget: return "infeasible-budget";
    case ErrorKind::parse: return "parse";
    }
    return "unknown";
}

void set_worker_count(int workers)
{
#ifdef _OPENMP
    if (workers > 0)
        omp_set_num_threads(workers);
#else
    (void)workers;
#endif
}

int worker_count()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace eeopa
