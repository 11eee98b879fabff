#pragma once

#include <cstddef>

namespace lqso {

enum class Execution { serial, parallel };

/// Thread count used by Execution::parallel kernels (OpenMP).
void set_thread_count(int threads);
int thread_count();

namespace detail {

template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body)
{
    const long count = long(n);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (long i = 0; i < count; ++i)
        body(std::size_t(i));
}

} // namespace detail

} // namespace lqso
