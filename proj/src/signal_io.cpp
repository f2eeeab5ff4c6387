#include "phonet/signal_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>

namespace phonet {

namespace {

uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 |
           uint32_t(b[3]) << 24;
}

uint16_t read_u16(std::istream& in) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    return uint16_t(b[0]) | uint16_t(b[1]) << 8;
}

void write_u32(std::ostream& out, uint32_t v) {
    char b[4] = {char(v & 0xff), char(v >> 8 & 0xff), char(v >> 16 & 0xff),
                 char(v >> 24 & 0xff)};
    out.write(b, 4);
}

void write_u16(std::ostream& out, uint16_t v) {
    char b[2] = {char(v & 0xff), char(v >> 8 & 0xff)};
    out.write(b, 2);
}

} // namespace

Signal read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedHeader("cannot open file: " + path);

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "RIFF", 4) != 0)
        throw MalformedHeader("not a RIFF file: " + path);
    read_u32(in); // overall size, unchecked beyond stream validity
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "WAVE", 4) != 0)
        throw MalformedHeader("not a WAVE file: " + path);

    bool have_fmt = false;
    uint16_t channels = 0, bits = 0, format = 0;
    uint32_t rate = 0;
    std::vector<int16_t> pcm;

    while (in.read(magic, 4)) {
        const uint32_t chunk_size = read_u32(in);
        if (!in) throw MalformedHeader("truncated chunk header: " + path);
        if (std::memcmp(magic, "fmt ", 4) == 0) {
            if (chunk_size < 16)
                throw MalformedHeader("fmt chunk too small: " + path);
            format = read_u16(in);
            channels = read_u16(in);
            rate = read_u32(in);
            read_u32(in); // byte rate
            read_u16(in); // block align
            bits = read_u16(in);
            in.ignore(chunk_size - 16);
            have_fmt = true;
        } else if (std::memcmp(magic, "data", 4) == 0) {
            if (!have_fmt)
                throw MalformedHeader("data chunk before fmt: " + path);
            if (format != 1) throw UnsupportedFormat("not PCM: " + path);
            if (channels != 1)
                throw UnsupportedFormat("not mono: " + path);
            if (bits != 16)
                throw UnsupportedFormat("not 16-bit: " + path);
            pcm.resize(chunk_size / 2);
            in.read(reinterpret_cast<char*>(pcm.data()), chunk_size & ~1u);
            if (!in) throw MalformedHeader("truncated data chunk: " + path);
            break;
        } else {
            in.ignore(chunk_size + (chunk_size & 1));
        }
    }
    if (!have_fmt) throw MalformedHeader("missing fmt chunk: " + path);
    if (rate < uint32_t(kMinRate))
        throw RateTooLow("sample rate " + std::to_string(rate) +
                         " below minimum " + std::to_string(kMinRate));

    Signal sig;
    sig.rate = int(rate);
    sig.samples.resize(pcm.size());
    for (std::size_t i = 0; i < pcm.size(); ++i)
        sig.samples[i] = double(pcm[i]) / 32768.0;
    return sig;
}

void write_wav(const std::string& path, const Signal& signal) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for write: " + path);

    const uint32_t data_size = uint32_t(signal.samples.size() * 2);
    out.write("RIFF", 4);
    write_u32(out, 36 + data_size);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    write_u32(out, 16);
    write_u16(out, 1); // PCM
    write_u16(out, 1); // mono
    write_u32(out, uint32_t(signal.rate));
    write_u32(out, uint32_t(signal.rate) * 2);
    write_u16(out, 2);
    write_u16(out, 16);
    out.write("data", 4);
    write_u32(out, data_size);

    for (double s : signal.samples) {
        const double clamped = std::clamp(s, -1.0, 1.0);
        const auto q = int16_t(std::lround(clamped * 32767.0));
        write_u16(out, uint16_t(q));
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

Signal synth_vowel(const VowelSpec& spec, int rate, std::uint64_t seed) {
    if (spec.f0 <= 0.0) throw InvalidSpec("f0 must be positive");
    if (spec.duration <= 0.0) throw InvalidSpec("duration must be positive");
    if (spec.noise_floor < 0.0) throw InvalidSpec("negative noise_floor");
    if (rate < kMinRate) throw InvalidSpec("rate below minimum");
    bool any_positive = false;
    for (double a : spec.harmonic_amps) {
        if (a < 0.0) throw InvalidSpec("negative harmonic amplitude");
        if (a > 0.0) any_positive = true;
    }
    if (!any_positive && spec.noise_floor == 0.0 && spec.harmonic_amps.empty())
        throw InvalidSpec("no harmonics given");
    if (spec.f0 * double(spec.harmonic_amps.size()) >= rate / 2.0)
        throw InvalidSpec("highest harmonic exceeds Nyquist");

    const std::size_t n = std::size_t(std::llround(spec.duration * rate));
    Signal sig;
    sig.rate = rate;
    sig.samples.assign(n, 0.0);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase_dist(0.0,
                                                      2.0 * std::numbers::pi);
    std::vector<double> phases(spec.harmonic_amps.size());
    for (double& p : phases) p = phase_dist(rng);

    std::uniform_real_distribution<double> noise_dist(-1.0, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = double(k) / rate;
        double s = 0.0;
        for (std::size_t h = 0; h < spec.harmonic_amps.size(); ++h) {
            s += spec.harmonic_amps[h] *
                 std::sin(2.0 * std::numbers::pi * double(h + 1) * spec.f0 * t +
                          phases[h]);
        }
        if (spec.noise_floor > 0.0) s += spec.noise_floor * noise_dist(rng);
        sig.samples[k] = s;
    }

    double peak = 0.0;
    for (double s : sig.samples) peak = std::max(peak, std::abs(s));
    if (peak > 0.0) {
        const double scale = 0.9 / peak;
        for (double& s : sig.samples) s *= scale;
    }
    return sig;
}

std::vector<Block> block_stream(const Signal& signal, std::size_t stride) {
    if (signal.samples.size() < kBlockSize)
        throw SignalTooShort("signal shorter than one 512-sample block");
    if (stride < 1) throw std::invalid_argument("stride must be >= 1");

    std::vector<Block> blocks;
    for (std::size_t off = 0; off + kBlockSize <= signal.samples.size();
         off += stride) {
        Block b;
        b.start_index = off;
        std::copy_n(signal.samples.begin() + std::ptrdiff_t(off), kBlockSize,
                    b.data.begin());
        blocks.push_back(b);
    }
    return blocks;
}

} // namespace phonet
