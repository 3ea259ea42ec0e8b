#include "vofde/threads.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vofde {

namespace {

int detect_max_threads() {
    if (const char* env = std::getenv("VOFDE_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n > 0) return n;
        } catch (...) {
            // fall through to the runtime default
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace

int max_threads() {
    static const int n = detect_max_threads();
    return n;
}

}  // namespace vofde
