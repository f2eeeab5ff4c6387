#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace phonet {

inline constexpr std::size_t kPatternDim = 15;
inline constexpr std::size_t kBlockSize = 512;

using Vec15 = std::array<double, kPatternDim>;

inline double dot(const Vec15& a, const Vec15& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < kPatternDim; ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec15& a) { return std::sqrt(dot(a, a)); }

inline double distance(const Vec15& a, const Vec15& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < kPatternDim; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace phonet
