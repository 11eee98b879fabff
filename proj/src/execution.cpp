#include "lqso/execution.hpp"

#include <omp.h>
#include <stdexcept>

namespace lqso {

void set_thread_count(int threads)
{
    if (threads < 1)
        throw std::invalid_argument("thread count must be >= 1");
    omp_set_num_threads(threads);
}

int thread_count()
{
    return omp_get_max_threads();
}

} // namespace lqso
