#include "phonet/corpus.hpp"

#include <sstream>

#include <json.hpp>

namespace phonet {

std::vector<ManifestEntry> parse_manifest(const std::string& text) {
    std::vector<ManifestEntry> entries;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ManifestError(line_no, e.what());
        }
        try {
            ManifestEntry entry;
            entry.label = j.at("label").get<std::string>();
            entry.spec.f0 = j.at("f0").get<double>();
            entry.spec.harmonic_amps =
                j.at("harmonic_amps").get<std::vector<double>>();
            entry.spec.noise_floor = j.at("noise_floor").get<double>();
            entry.spec.duration = j.at("duration").get<double>();
            entry.seed = j.at("seed").get<std::uint64_t>();
            entries.push_back(std::move(entry));
        } catch (const nlohmann::json::exception& e) {
            throw ManifestError(line_no, e.what());
        }
    }
    return entries;
}

std::string manifest_to_jsonl(const std::vector<ManifestEntry>& entries) {
    std::ostringstream out;
    for (const auto& e : entries) {
        nlohmann::json j = {{"label", e.label},
                            {"f0", e.spec.f0},
                            {"harmonic_amps", e.spec.harmonic_amps},
                            {"noise_floor", e.spec.noise_floor},
                            {"duration", e.spec.duration},
                            {"seed", e.seed}};
        out << j.dump() << '\n';
    }
    return out.str();
}

std::string wav_name(const ManifestEntry& entry) {
    return entry.label + "_" + std::to_string(entry.seed) + ".wav";
}

std::vector<LabeledPattern> parse_patterns(const std::string& text) {
    std::vector<LabeledPattern> patterns;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            LabeledPattern p;
            p.label = j.at("label").get<std::string>();
            const auto& arr = j.at("components");
            if (arr.size() != kPatternDim)
                throw std::runtime_error("components is not 15-d");
            for (std::size_t i = 0; i < kPatternDim; ++i)
                p.pattern.c[i] = arr[i].get<double>();
            if (j.contains("below_gamma"))
                p.below_gamma = j["below_gamma"].get<bool>();
            patterns.push_back(std::move(p));
        } catch (const std::exception& e) {
            throw ManifestError(line_no, e.what());
        }
    }
    return patterns;
}

std::string patterns_to_jsonl(const std::vector<LabeledPattern>& patterns) {
    std::ostringstream out;
    for (const auto& p : patterns) {
        nlohmann::json j = {{"label", p.label}, {"components", p.pattern.c}};
        if (p.below_gamma) j["below_gamma"] = true;
        out << j.dump() << '\n';
    }
    return out.str();
}

std::vector<ManifestEntry> default_corpus(std::size_t per_class,
                                          std::uint64_t seed_base) {
    struct ClassSpec {
        const char* label;
        double f0;
        std::vector<double> amps;
    };
    // Each class occupies its own disjoint set of analysis channels:
    // a -> {0,2,3,4}, e -> {6,7,8,11}, i -> {5,10,13}, o -> {1,12,14}.
    // At the 10240 Hz corpus rate every active harmonic lands exactly on
    // an FFT bin and sits at least 20 Hz clear of every channel edge, so
    // the Hanning mainlobe never straddles a channel boundary. The 1.7
    // amplitudes compensate the wider (667 Hz) high channels whose means
    // average over roughly 2.8x more bins.
    const std::vector<ClassSpec> classes = {
        {"a", 200.0, {0.0, 1.0, 0.0, 1.0, 1.0, 1.0}},
        {"e", 280.0, {0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0}},
        {"i", 380.0, {0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.7}},
        {"o", 520.0, {1.0, 0.0, 0.0, 0.0, 0.0, 1.7, 0.0, 0.0, 1.7}},
    };
    std::vector<ManifestEntry> entries;
    std::uint64_t seed = seed_base;
    for (const auto& cls : classes)
        for (std::size_t k = 0; k < per_class; ++k) {
            ManifestEntry e;
            e.label = cls.label;
            e.spec.f0 = cls.f0;
            e.spec.harmonic_amps = cls.amps;
            e.spec.noise_floor = 0.12;
            e.spec.duration = 0.5;
            e.seed = seed++;
            entries.push_back(std::move(e));
        }
    return entries;
}

} // namespace phonet
