#pragma once

#include <stdexcept>

#include "phonet/spectrum.hpp"
#include "phonet/vec.hpp"

namespace phonet {

// 16 ascending band edges defining the 15 analysis channels.
struct BandPlan {
    std::array<double, kPatternDim + 1> edges{}; // Hz
};

// Unit-Euclidean-norm, nonnegative 15-component feature vector.
struct PatternVector {
    Vec15 c{};
};

struct SpectrumTooNarrow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyChannel : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroVector : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Half-open sample range [begin, end) into a Signal.
struct SampleRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};

// 12 equal channels tiling 200-3000 Hz followed by 3 equal channels
// tiling 3000-5000 Hz. Exact tiling, no gaps.
BandPlan default_band_plan();

// Mean power per channel; a bin belongs to the channel whose half-open
// interval [lo, hi) contains its center frequency j * bin_width.
Vec15 band_energies(const PowerSpectrum& spectrum, const BandPlan& plan);

// v / ||v||_2. Throws ZeroVector on all-zero input.
PatternVector normalize_unit(const Vec15& v);

// True iff every component is >= gamma (inclusive).
bool gamma_floor(const PatternVector& pattern, double gamma);

// Full extraction pipeline over one segment:
// block_stream -> power_spectrum (windowed) -> average -> band_energies
// -> normalize_unit.
PatternVector extract_pattern(const Signal& signal, SampleRange segment,
                              WindowKind window, std::size_t stride);

} // namespace phonet
