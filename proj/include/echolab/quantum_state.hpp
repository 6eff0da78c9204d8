#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

namespace echolab {

using cplx = std::complex<double>;

/// Allocator returning 64-byte aligned storage so that FFT plans made on one
/// buffer can be executed on any other state vector.
template <typename T>
struct AlignedAllocator {
    using value_type = T;
    static constexpr std::align_val_t alignment{64};

    AlignedAllocator() = default;
    template <typename U>
    AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

    T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), alignment)); }
    void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, alignment); }

    template <typename U>
    bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using ComplexVector = std::vector<cplx, AlignedAllocator<cplx>>;

enum class Representation { Position, Momentum };

/// Length-N amplitude vector on the torus.
///
/// Position grid: theta_j = 2*pi*j/N. Momentum amplitudes are stored in DFT
/// bin order; bin b holds integer quantum m = b for b < N/2 and m = b - N
/// otherwise, so p_m = hbar*m covers [-pi, pi).
class QuantumState {
public:
    QuantumState() = default;
    QuantumState(ComplexVector amplitudes, Representation rep)
        : amplitudes_(std::move(amplitudes)), rep_(rep) {}

    std::size_t dimension() const { return amplitudes_.size(); }
    Representation representation() const { return rep_; }

    const ComplexVector& amplitudes() const { return amplitudes_; }
    ComplexVector& amplitudes() { return amplitudes_; }
    cplx operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm_squared() const;

    /// Relative weight of non-central periodic images for a packet built by
    /// make_gaussian; zero for every other state.
    double periodization_overlap() const { return periodization_overlap_; }
    /// True when the periodization overlap exceeds 1e-6.
    bool wide_packet_warning() const { return periodization_overlap_ > 1e-6; }
    void set_periodization_overlap(double v) { periodization_overlap_ = v; }

    void set_representation(Representation rep) { rep_ = rep; }

private:
    ComplexVector amplitudes_;
    Representation rep_ = Representation::Position;
    double periodization_overlap_ = 0.0;
};

/// Integer momentum quantum held by DFT bin `bin` of an N-dimensional state.
inline long momentum_quantum(std::size_t bin, std::size_t N)
{
    const auto b = static_cast<long>(bin);
    const auto n = static_cast<long>(N);
    return b < n / 2 ? b : b - n;
}

/// Inverse of momentum_quantum; m must lie in [-N/2, N/2).
inline std::size_t momentum_bin(long m, std::size_t N)
{
    const auto n = static_cast<long>(N);
    return static_cast<std::size_t>(m < 0 ? m + n : m);
}

/// <a|b> = sum conj(a_j) b_j. Both states must share dimension and representation.
cplx inner_product(const QuantumState& a, const QuantumState& b);

}  // namespace echolab
