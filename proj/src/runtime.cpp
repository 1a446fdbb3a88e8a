#include "sff/runtime.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sff {

void configure_threads_from_env() {
#ifdef _OPENMP
    const char* raw = std::getenv("SFF_THREADS");
    if (raw == nullptr || *raw == '\0')
        return;
    char* end = nullptr;
    long n = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || n < 1)
        return;
    omp_set_num_threads(static_cast<int>(n));
#endif
}

} // namespace sff
