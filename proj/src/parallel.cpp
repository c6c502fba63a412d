#include "gsbq/parallel.hpp"

#include <atomic>

namespace gsbq::par {

namespace {
std::atomic<Backend> g_backend{
#ifdef _OPENMP
    Backend::OpenMP
#else
    Backend::Serial
#endif
};
std::atomic<int> g_workers{1};
}  // namespace

Backend backend() noexcept { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) noexcept {
#ifndef _OPENMP
    b = Backend::Serial;
#endif
    g_backend.store(b, std::memory_order_relaxed);
}

int workers() noexcept { return g_workers.load(std::memory_order_relaxed); }

void set_workers(int n) noexcept { g_workers.store(n < 1 ? 1 : n, std::memory_order_relaxed); }

bool openmp_compiled() noexcept {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

}  // namespace gsbq::par
