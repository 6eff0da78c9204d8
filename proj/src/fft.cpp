#include "fft.hpp"

#include <mutex>
#include <utility>

#include "echolab/errors.hpp"

namespace echolab::detail {

namespace {

std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n)
{
    if (n == 0)
        throw InputError("FFT length must be positive");
    ComplexVector scratch(n);
    std::lock_guard lock(planner_mutex());
    const int len = static_cast<int>(n);
    forward_ = fftw_plan_dft_1d(len, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(len, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
    if (forward_ == nullptr || backward_ == nullptr)
        throw std::runtime_error("FFTW failed to create a plan");
}

FftPlan::~FftPlan()
{
    std::lock_guard lock(planner_mutex());
    if (forward_ != nullptr)
        fftw_destroy_plan(forward_);
    if (backward_ != nullptr)
        fftw_destroy_plan(backward_);
}

FftPlan::FftPlan(FftPlan&& other) noexcept
    : n_(other.n_), forward_(std::exchange(other.forward_, nullptr)), backward_(std::exchange(other.backward_, nullptr))
{
}

void FftPlan::forward(cplx* data) const { fftw_execute_dft(forward_, as_fftw(data), as_fftw(data)); }

void FftPlan::backward(cplx* data) const { fftw_execute_dft(backward_, as_fftw(data), as_fftw(data)); }

}  // namespace echolab::detail
