#include "gsbq/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace gsbq::fft {

namespace {

struct PlanSet {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    fftw_plan c2c = nullptr;
};

std::mutex g_planner_mutex;

std::unordered_map<std::size_t, PlanSet>& plan_cache() {
    static std::unordered_map<std::size_t, PlanSet> cache;
    return cache;
}

// The planner is not thread safe; plan once per size under the lock using
// scratch buffers, then execute on caller arrays.
PlanSet& plans_for(std::size_t n) {
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    PlanSet& p = plan_cache()[n];
    if (!p.r2c) {
        std::vector<double> re(n);
        std::vector<std::complex<double>> hc(n / 2 + 1);
        std::vector<std::complex<double>> za(n), zb(n);
        p.r2c = fftw_plan_dft_r2c_1d(static_cast<int>(n), re.data(),
                                     reinterpret_cast<fftw_complex*>(hc.data()),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
        p.c2r = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                     reinterpret_cast<fftw_complex*>(hc.data()), re.data(),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
        p.c2c = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(za.data()),
                                 reinterpret_cast<fftw_complex*>(zb.data()), FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p.r2c || !p.c2r || !p.c2c) throw std::runtime_error("fftw planning failed");
    }
    return p;
}

}  // namespace

void forward(std::span<const double> in, std::span<std::complex<double>> out) {
    const std::size_t n = in.size();
    if (out.size() != n / 2 + 1) throw std::logic_error("fft::forward size mismatch");
    PlanSet& p = plans_for(n);
    thread_local std::vector<double> scratch;
    scratch.assign(in.begin(), in.end());
    fftw_execute_dft_r2c(p.r2c, scratch.data(), reinterpret_cast<fftw_complex*>(out.data()));
}

void inverse(std::span<const std::complex<double>> in, std::span<double> out) {
    const std::size_t n = out.size();
    if (in.size() != n / 2 + 1) throw std::logic_error("fft::inverse size mismatch");
    PlanSet& p = plans_for(n);
    // c2r may clobber its input, so run from a copy.
    thread_local std::vector<std::complex<double>> scratch;
    scratch.assign(in.begin(), in.end());
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
    const double inv_n = 1.0 / static_cast<double>(n);
    for (double& x : out) x *= inv_n;
}

void complex_forward(std::span<const std::complex<double>> in,
                     std::span<std::complex<double>> out) {
    const std::size_t n = in.size();
    if (out.size() != n) throw std::logic_error("fft::complex_forward size mismatch");
    PlanSet& p = plans_for(n);
    thread_local std::vector<std::complex<double>> scratch;
    scratch.assign(in.begin(), in.end());
    fftw_execute_dft(p.c2c, reinterpret_cast<fftw_complex*>(scratch.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace gsbq::fft
