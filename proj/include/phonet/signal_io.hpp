#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "phonet/vec.hpp"

namespace phonet {

// Sampled acoustic waveform. Samples are dimensionless in [-1, 1].
struct Signal {
    std::vector<double> samples;
    int rate = 0; // Hz
};

// Additive-harmonic vowel description: per-harmonic amplitudes on
// multiples of f0, plus a broadband noise floor.
struct VowelSpec {
    double f0 = 0.0;                    // Hz
    std::vector<double> harmonic_amps;  // amplitude of harmonic h+1
    double noise_floor = 0.0;
    double duration = 0.0;              // seconds
};

// One 512-sample analysis window cut from a signal.
struct Block {
    std::array<double, kBlockSize> data{};
    std::size_t start_index = 0;
};

struct MalformedHeader : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedFormat : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RateTooLow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidSpec : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SignalTooShort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Minimum sampling rate accepted anywhere in the pipeline: the analysis
// band tops out at 5000 Hz, so Nyquist must reach it.
inline constexpr int kMinRate = 10000;

// Reads a mono 16-bit PCM RIFF/WAVE file. Samples come back scaled by
// 1/32768. Throws MalformedHeader, UnsupportedFormat, or RateTooLow.
Signal read_wav(const std::string& path);

// Writes a Signal as mono 16-bit PCM. Samples are clamped to [-1, 1]
// and quantized with scale 32767.
void write_wav(const std::string& path, const Signal& signal);

// Builds an additive-harmonic vowel: sum of sinusoids at multiples of
// f0 with seeded phases, plus seeded uniform white noise, peak-normalized
// to 0.9 (unless identically zero). Deterministic in (spec, rate, seed).
Signal synth_vowel(const VowelSpec& spec, int rate, std::uint64_t seed);

// Cuts overlapping 512-sample blocks at offsets 0, stride, 2*stride, ...
// while a full window fits. A trailing partial window is discarded.
std::vector<Block> block_stream(const Signal& signal, std::size_t stride);

} // namespace phonet
