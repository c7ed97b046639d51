#include "spex/fft.hpp"

#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace spex::detail {

namespace {
std::mutex planner_mutex; // FFTW planner is not thread-safe
}

std::vector<std::complex<double>> dft2_plus(int n, const std::vector<std::complex<double>>& in) {
    if (n < 1 || in.size() != static_cast<std::size_t>(n) * n) {
        throw std::invalid_argument("dft2_plus: input size mismatch");
    }
    std::vector<std::complex<double>> out(in.size());
    // FFTW_BACKWARD is the unnormalized e^{+i...} transform.
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_2d(
            n, n,
            reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
            reinterpret_cast<fftw_complex*>(out.data()),
            FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

} // namespace spex::detail
