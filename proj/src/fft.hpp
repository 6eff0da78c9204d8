#pragma once

#include <cstddef>

#include <fftw3.h>

#include "echolab/quantum_state.hpp"

namespace echolab::detail {

/// In-place unnormalized complex DFT of fixed length, backed by FFTW.
///
/// Plans are built with FFTW_ESTIMATE so the chosen algorithm (and hence
/// every rounding) is the same on every run. Execution is thread-safe; plan
/// construction is serialized internally.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);
    ~FftPlan();
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
    FftPlan(FftPlan&& other) noexcept;
    FftPlan& operator=(FftPlan&&) = delete;

    std::size_t size() const { return n_; }

    /// out_b = sum_j in_j exp(-2 pi i j b / n)
    void forward(cplx* data) const;
    /// out_j = sum_b in_b exp(+2 pi i j b / n)
    void backward(cplx* data) const;

private:
    std::size_t n_;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

}  // namespace echolab::detail
