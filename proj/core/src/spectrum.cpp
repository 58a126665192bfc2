#include "tlj/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tlj {

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> hann_window(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / (n - 1));
    return w;
}
}  // namespace

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

double dft_magnitude(const std::vector<double>& samples, double dt, double freq_hz) {
    const std::size_t n = samples.size();
    const std::vector<double> w = hann_window(n);
    double re = 0.0, im = 0.0;
    const double dphi = -2.0 * kPi * freq_hz * dt;
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = dphi * static_cast<double>(i);
        const double v = samples[i] * w[i];
        re += v * std::cos(phi);
        im += v * std::sin(phi);
    }
    return std::hypot(re, im);
}

double measure_secular_frequency(const TrajectoryRecord& traj, int axis, double drive_hz) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("measure_secular_frequency: bad axis");
    const std::size_t n = traj.t.size();
    if (n < 64) throw InsufficientData("measure_secular_frequency: record too short");

    const double dt = traj.t[1] - traj.t[0];
    const double duration = traj.t.back() - traj.t.front();

    std::vector<double> x(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += traj.position[i][axis];
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = traj.position[i][axis] - mean;

    // Hann-windowed, zero-padded transform
    std::size_t m = 1;
    while (m < 2 * n) m <<= 1;
    std::vector<std::complex<double>> buf(m, 0.0);
    const std::vector<double> w = hann_window(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = x[i] * w[i];
    fft_pow2(buf);

    const double df = 1.0 / (static_cast<double>(m) * dt);
    const double nyquist = 0.5 / dt;
    const double f_max = std::min(0.45 * drive_hz, 0.98 * nyquist);
    auto excluded = [&](double f) {
        // drive line, its aliases against the sample rate, and a DC guard
        const double fs = 1.0 / dt;
        for (int k = -4; k <= 4; ++k) {
            const double img = std::abs(drive_hz + k * fs);
            if (std::abs(f - img) < 0.05 * drive_hz) return true;
        }
        return f < 2.0 * df;
    };

    std::size_t best = 0;
    double best_mag = 0.0, floor_sum = 0.0;
    std::size_t floor_count = 0;
    const std::size_t hi = std::min(m / 2, static_cast<std::size_t>(f_max / df));
    for (std::size_t i = 1; i < hi; ++i) {
        const double f = i * df;
        const double mag = std::abs(buf[i]);
        floor_sum += mag;
        ++floor_count;
        if (excluded(f)) continue;
        if (mag > best_mag) best_mag = mag, best = i;
    }
    if (best == 0 || floor_count == 0)
        throw NoPeak("measure_secular_frequency: no candidate below the drive");
    const double floor_avg = floor_sum / static_cast<double>(floor_count);
    if (best_mag < 5.0 * floor_avg)
        throw NoPeak("measure_secular_frequency: peak does not stand out of the floor");

    // refine by direct maximization of the windowed transform magnitude
    double lo = (best - 1.0) * df, hi_f = (best + 1.0) * df;
    for (int it = 0; it < 60; ++it) {
        const double f1 = lo + (hi_f - lo) / 3.0;
        const double f2 = hi_f - (hi_f - lo) / 3.0;
        if (dft_magnitude(x, dt, f1) < dft_magnitude(x, dt, f2))
            lo = f1;
        else
            hi_f = f2;
    }
    const double f_peak = 0.5 * (lo + hi_f);

    if (duration * f_peak < 20.0)
        throw InsufficientData("measure_secular_frequency: fewer than 20 periods of the line");
    return f_peak;
}

}  // namespace tlj
