#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "phonet/features.hpp"
#include "phonet/signal_io.hpp"

namespace phonet {

// One line of a synthesis manifest:
// {label, f0, harmonic_amps, noise_floor, duration, seed}
struct ManifestEntry {
    std::string label;
    VowelSpec spec;
    std::uint64_t seed = 0;
};

struct ManifestError : std::runtime_error {
    std::size_t line;
    ManifestError(std::size_t line_, const std::string& what_)
        : std::runtime_error("manifest line " + std::to_string(line_) + ": " +
                             what_),
          line(line_) {}
};

std::vector<ManifestEntry> parse_manifest(const std::string& text);
std::string manifest_to_jsonl(const std::vector<ManifestEntry>& entries);

// Canonical WAV filename for a manifest entry.
std::string wav_name(const ManifestEntry& entry);

// Pattern file: one JSON object per line, {label, components:[15]},
// plus an optional "below_gamma" marker.
struct LabeledPattern {
    std::string label;
    PatternVector pattern;
    bool below_gamma = false;
};

std::vector<LabeledPattern> parse_patterns(const std::string& text);
std::string patterns_to_jsonl(const std::vector<LabeledPattern>& patterns);

// Default sampling rate for synthesis: 512-point bin width is exactly
// 20 Hz, so the default corpus harmonics land on FFT bins.
inline constexpr int kCorpusRate = 10240;

// The default 4-class synthetic vowel corpus: well-separated harmonic
// profiles at f0 = 200, 280, 380, 520 Hz, `per_class` takes per label,
// seeds starting from seed_base.
std::vector<ManifestEntry> default_corpus(std::size_t per_class = 8,
                                          std::uint64_t seed_base = 1);

} // namespace phonet
