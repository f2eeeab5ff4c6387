#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "phonet/signal_io.hpp"

namespace phonet {

// Interleaved complex data for the radix-2 transform.
struct ComplexBuffer {
    std::vector<double> re;
    std::vector<double> im;
    std::size_t size() const { return re.size(); }
};

// One-sided power spectrum of a 512-sample real block: 257 bins from DC
// through Nyquist, bin_width = rate / 512.
struct PowerSpectrum {
    std::vector<double> bins;
    double bin_width = 0.0; // Hz
};

inline constexpr std::size_t kSpectrumBins = kBlockSize / 2 + 1;

enum class WindowKind { Rectangular, Hanning, Welch, Parzen };

struct NotPowerOfTwo : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MismatchedShape : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Forward DFT X(j) = sum_k x(k) e^{-2πi jk/K}, iterative radix-2.
// Length must be a power of two.
ComplexBuffer fft_radix2(const ComplexBuffer& buf);

// Real-input transform via even/odd packing: packs z(k) = x(2k) + i x(2k+1),
// runs one length-K complex FFT, and unpacks bins 0..K of the length-2K
// spectrum through the conjugate-symmetry relation.
ComplexBuffer real_fft_packed(const std::vector<double>& data);

// Element-wise product with the named 512-point window.
Block apply_window(const Block& block, WindowKind kind);

// The 512 window weights for a kind.
std::array<double, kBlockSize> window_weights(WindowKind kind);

// bins[j] = |X(j)|^2 / 512 with X = real_fft_packed(apply_window(block)).
// rate fixes bin_width.
PowerSpectrum power_spectrum(const Block& block, WindowKind kind, int rate);

// Element-wise arithmetic mean over frames of identical shape.
PowerSpectrum average_spectra(const std::vector<PowerSpectrum>& frames);

const char* window_name(WindowKind kind);
WindowKind parse_window(const std::string& name);

} // namespace phonet
