#include "phonet/features.hpp"

#include <cmath>

namespace phonet {

BandPlan default_band_plan() {
    BandPlan plan;
    for (int i = 0; i <= 12; ++i)
        plan.edges[std::size_t(i)] = 200.0 + double(i) * (2800.0 / 12.0);
    for (int j = 1; j <= 3; ++j)
        plan.edges[std::size_t(12 + j)] = 3000.0 + double(j) * (2000.0 / 3.0);
    return plan;
}

Vec15 band_energies(const PowerSpectrum& spectrum, const BandPlan& plan) {
    if (spectrum.bin_width <= 0.0)
        throw std::invalid_argument("bin_width must be positive");
    const double nyquist =
        double(spectrum.bins.size() - 1) * spectrum.bin_width;
    if (nyquist < plan.edges.back())
        throw SpectrumTooNarrow("spectrum tops out at " +
                                std::to_string(nyquist) + " Hz, need " +
                                std::to_string(plan.edges.back()));

    Vec15 sums{};
    std::array<std::size_t, kPatternDim> counts{};
    for (std::size_t j = 0; j < spectrum.bins.size(); ++j) {
        const double f = double(j) * spectrum.bin_width;
        if (f < plan.edges.front() || f >= plan.edges.back()) continue;
        std::size_t ch = 0;
        while (f >= plan.edges[ch + 1]) ++ch;
        sums[ch] += spectrum.bins[j];
        counts[ch] += 1;
    }
    for (std::size_t ch = 0; ch < kPatternDim; ++ch) {
        if (counts[ch] == 0)
            throw EmptyChannel("no bin falls in channel " +
                               std::to_string(ch));
        sums[ch] /= double(counts[ch]);
    }
    return sums;
}

PatternVector normalize_unit(const Vec15& v) {
    const double n = norm(v);
    if (n == 0.0) throw ZeroVector("cannot normalize the zero vector");
    PatternVector p;
    for (std::size_t i = 0; i < kPatternDim; ++i) p.c[i] = v[i] / n;
    return p;
}

bool gamma_floor(const PatternVector& pattern, double gamma) {
    for (double c : pattern.c)
        if (c < gamma) return false;
    return true;
}

PatternVector extract_pattern(const Signal& signal, SampleRange segment,
                              WindowKind window, std::size_t stride) {
    if (segment.end > signal.samples.size() || segment.begin >= segment.end)
        throw std::invalid_argument("segment out of range");
    Signal cut;
    cut.rate = signal.rate;
    cut.samples.assign(signal.samples.begin() + std::ptrdiff_t(segment.begin),
                       signal.samples.begin() + std::ptrdiff_t(segment.end));

    const auto blocks = block_stream(cut, stride);
    std::vector<PowerSpectrum> frames;
    frames.reserve(blocks.size());
    for (const auto& b : blocks)
        frames.push_back(power_spectrum(b, window, signal.rate));

    const PowerSpectrum avg = average_spectra(frames);
    return normalize_unit(band_energies(avg, default_band_plan()));
}

} // namespace phonet
