#ifndef TLJ_SPECTRUM_HPP
#define TLJ_SPECTRUM_HPP

#include <complex>
#include <vector>

#include "tlj/errors.hpp"
#include "tlj/flight.hpp"

namespace tlj {

// In-place iterative radix-2 transform; size must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& data, bool inverse = false);

// Windowed transform magnitude at an arbitrary frequency (Hz) of a uniform
// series with sample interval dt.
double dft_magnitude(const std::vector<double>& samples, double dt, double freq_hz);

// Dominant sub-drive line of one position component: Hann-windowed FFT peak
// below 0.45 of the drive frequency, excluding a +-5% band around the drive
// and refined by direct local maximization. Returns Hz.
//
// Throws InsufficientData when the record is too short (fewer than 64
// samples, or under 20 periods of the found line) and NoPeak when nothing
// stands out of the spectral floor.
double measure_secular_frequency(const TrajectoryRecord& traj, int axis, double drive_hz);

}  // namespace tlj

#endif
