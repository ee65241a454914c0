#include "tqf/parallel.hpp"

#include <omp.h>

namespace tqf {

namespace {
int default_threads = omp_get_max_threads();
}

void set_thread_count(int k) { omp_set_num_threads(k > 0 ? k : default_threads); }

int thread_count() { return omp_get_max_threads(); }

}  // namespace tqf
