#include "phonet/spectrum.hpp"

#include <cmath>
#include <numbers>

namespace phonet {

namespace {

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

// In-place iterative Cooley-Tukey, decimation in time.
void fft_in_place(std::vector<double>& re, std::vector<double>& im) {
    const std::size_t n = re.size();

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) {
            std::swap(re[i], re[j]);
            std::swap(im[i], im[j]);
        }
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / double(len);
        const double wr = std::cos(ang), wi = std::sin(ang);
        for (std::size_t i = 0; i < n; i += len) {
            double cr = 1.0, ci = 0.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::size_t a = i + k, b = i + k + len / 2;
                const double tr = re[b] * cr - im[b] * ci;
                const double ti = re[b] * ci + im[b] * cr;
                re[b] = re[a] - tr;
                im[b] = im[a] - ti;
                re[a] += tr;
                im[a] += ti;
                const double ncr = cr * wr - ci * wi;
                ci = cr * wi + ci * wr;
                cr = ncr;
            }
        }
    }
}

} // namespace

ComplexBuffer fft_radix2(const ComplexBuffer& buf) {
    if (buf.re.size() != buf.im.size())
        throw MismatchedShape("re/im length mismatch");
    if (!is_power_of_two(buf.size()))
        throw NotPowerOfTwo("FFT length must be a power of two, got " +
                            std::to_string(buf.size()));
    ComplexBuffer out = buf;
    fft_in_place(out.re, out.im);
    return out;
}

ComplexBuffer real_fft_packed(const std::vector<double>& data) {
    if (!is_power_of_two(data.size()))
        throw NotPowerOfTwo("input length must be a power of two, got " +
                            std::to_string(data.size()));
    const std::size_t half = data.size() / 2;

    ComplexBuffer z;
    z.re.resize(half);
    z.im.resize(half);
    for (std::size_t k = 0; k < half; ++k) {
        z.re[k] = data[2 * k];
        z.im[k] = data[2 * k + 1];
    }
    fft_in_place(z.re, z.im);

    // Unpack: X(j) = E(j) + e^{-iπj/half} O(j), where E and O are the
    // transforms of the even and odd subsequences recovered from Z by
    // conjugate symmetry (Z(half) wraps to Z(0)).
    ComplexBuffer out;
    out.re.resize(half + 1);
    out.im.resize(half + 1);
    for (std::size_t j = 0; j <= half; ++j) {
        const std::size_t jm = j % half;
        const std::size_t jc = (half - jm) % half;
        const double er = 0.5 * (z.re[jm] + z.re[jc]);
        const double ei = 0.5 * (z.im[jm] - z.im[jc]);
        const double or_ = 0.5 * (z.im[jm] + z.im[jc]);
        const double oi = -0.5 * (z.re[jm] - z.re[jc]);
        const double ang = -std::numbers::pi * double(j) / double(half);
        const double tr = std::cos(ang), ti = std::sin(ang);
        out.re[j] = er + or_ * tr - oi * ti;
        out.im[j] = ei + or_ * ti + oi * tr;
    }
    return out;
}

std::array<double, kBlockSize> window_weights(WindowKind kind) {
    std::array<double, kBlockSize> w{};
    constexpr double last = double(kBlockSize - 1);
    switch (kind) {
    case WindowKind::Rectangular:
        w.fill(1.0);
        break;
    case WindowKind::Hanning:
        for (std::size_t n = 0; n < kBlockSize; ++n)
            w[n] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * double(n) /
                                         last));
        break;
    case WindowKind::Welch:
        for (std::size_t n = 0; n < kBlockSize; ++n) {
            const double u = (double(n) - last / 2.0) / (last / 2.0);
            w[n] = 1.0 - u * u;
        }
        break;
    case WindowKind::Parzen:
        // piecewise-cubic de la Vallee Poussin window
        for (std::size_t n = 0; n < kBlockSize; ++n) {
            const double m = std::abs(double(n) - last / 2.0);
            const double u = m / (double(kBlockSize) / 2.0);
            w[n] = (m <= last / 4.0) ? 1.0 - 6.0 * u * u * (1.0 - u)
                                     : 2.0 * std::pow(1.0 - u, 3.0);
        }
        break;
    }
    return w;
}

Block apply_window(const Block& block, WindowKind kind) {
    if (kind == WindowKind::Rectangular) return block;
    const auto w = window_weights(kind);
    Block out = block;
    for (std::size_t n = 0; n < kBlockSize; ++n) out.data[n] *= w[n];
    return out;
}

PowerSpectrum power_spectrum(const Block& block, WindowKind kind, int rate) {
    const Block windowed = apply_window(block, kind);
    const ComplexBuffer spec = real_fft_packed(
        std::vector<double>(windowed.data.begin(), windowed.data.end()));

    PowerSpectrum ps;
    ps.bin_width = double(rate) / double(kBlockSize);
    ps.bins.resize(kSpectrumBins);
    for (std::size_t j = 0; j < kSpectrumBins; ++j)
        ps.bins[j] =
            (spec.re[j] * spec.re[j] + spec.im[j] * spec.im[j]) /
            double(kBlockSize);
    return ps;
}

PowerSpectrum average_spectra(const std::vector<PowerSpectrum>& frames) {
    if (frames.empty()) throw EmptyInput("no spectra to average");
    const std::size_t n_bins = frames.front().bins.size();
    const double bw = frames.front().bin_width;
    for (const auto& f : frames)
        if (f.bins.size() != n_bins || f.bin_width != bw)
            throw MismatchedShape("spectra differ in bin count or bin width");

    PowerSpectrum out;
    out.bin_width = bw;
    out.bins.assign(n_bins, 0.0);
    for (const auto& f : frames)
        for (std::size_t j = 0; j < n_bins; ++j) out.bins[j] += f.bins[j];
    for (double& b : out.bins) b /= double(frames.size());
    return out;
}

const char* window_name(WindowKind kind) {
    switch (kind) {
    case WindowKind::Rectangular: return "rect";
    case WindowKind::Hanning: return "hanning";
    case WindowKind::Welch: return "welch";
    case WindowKind::Parzen: return "parzen";
    }
    return "?";
}

WindowKind parse_window(const std::string& name) {
    if (name == "rect") return WindowKind::Rectangular;
    if (name == "hanning") return WindowKind::Hanning;
    if (name == "welch") return WindowKind::Welch;
    if (name == "parzen") return WindowKind::Parzen;
    throw std::invalid_argument("unknown window: " + name);
}

} // namespace phonet
