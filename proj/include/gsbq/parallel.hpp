#pragma once

namespace gsbq::par {

// Map kernels run either as plain loops or with OpenMP; the serial path is the
// reference implementation the parallel one is tested against.
enum class Backend { Serial, OpenMP };

Backend backend() noexcept;
void set_backend(Backend b) noexcept;

// Thread budget for point-level parallelism (sweep/atlas). 1 = serial.
int workers() noexcept;
void set_workers(int n) noexcept;

bool openmp_compiled() noexcept;

}  // namespace gsbq::par
