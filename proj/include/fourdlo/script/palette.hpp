#pragma once

// Linear RGB colours, named cyclic palettes and the byte quantizer.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fourdlo::script {

struct Rgb {
    double r = 0, g = 0, b = 0;

    friend Rgb operator*(Rgb c, double s) { return {c.r * s, c.g * s, c.b * s}; }
    friend Rgb operator+(Rgb a, Rgb b) { return {a.r + b.r, a.g + b.g, a.b + b.b}; }
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline std::optional<Rgb> parse_hex(std::string_view six) {
    if (six.size() != 6) return std::nullopt;
    std::array<int, 3> v{};
    for (int k = 0; k < 3; ++k) {
        int byte = 0;
        for (int d = 0; d < 2; ++d) {
            const char c = six[static_cast<std::size_t>(2 * k + d)];
            int x;
            if (c >= '0' && c <= '9') x = c - '0';
            else if (c >= 'a' && c <= 'f') x = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') x = c - 'A' + 10;
            else return std::nullopt;
            byte = byte * 16 + x;
        }
        v[static_cast<std::size_t>(k)] = byte;
    }
    return Rgb{v[0] / 255.0, v[1] / 255.0, v[2] / 255.0};
}

struct Palette {
    std::string name;
    std::vector<Rgb> stops;  ///< evenly spaced around the cycle, stop i at i/N

    /// Cyclic linear interpolation between stops.
    Rgb sample(double u) const {
        const double n = static_cast<double>(stops.size());
        double x = (u - std::floor(u)) * n;
        std::size_t i = static_cast<std::size_t>(x);
        if (i >= stops.size()) i = 0;
        const double f = x - static_cast<double>(i);
        const Rgb& a = stops[i];
        const Rgb& b = stops[(i + 1) % stops.size()];
        return a * (1 - f) + b * f;
    }
};

inline const std::vector<Palette>& palettes() {
    static const std::vector<Palette> all = {
        {"rainbow", {{1, 0, 0}, {1, 0.5, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0.4, 1}, {0.55, 0, 1}}},
        {"axes4", {{1, 0, 0}, {0, 1, 0}, {0, 0.3, 1}, {1, 0.85, 0}}},
        {"fire", {{1, 0.1, 0}, {1, 0.55, 0}, {1, 0.9, 0.3}}},
        {"ice", {{0, 0.3, 1}, {0, 0.9, 1}, {0.8, 0.95, 1}}},
        {"mono", {{1, 1, 1}}},
    };
    return all;
}

inline const Palette* find_palette(std::string_view name) {
    for (const auto& p : palettes())
        if (p.name == name) return &p;
    return nullptr;
}

/// Rotates the hue by `turns` of a full turn, keeping saturation and value.
inline Rgb hue_shift(Rgb c, double turns) {
    const double mx = std::max({c.r, c.g, c.b}), mn = std::min({c.r, c.g, c.b});
    const double delta = mx - mn;
    if (delta <= 0) return c;
    double h;
    if (mx == c.r) h = std::fmod((c.g - c.b) / delta, 6.0);
    else if (mx == c.g) h = (c.b - c.r) / delta + 2;
    else h = (c.r - c.g) / delta + 4;
    h = h / 6 + turns;
    h -= std::floor(h);
    const double hh = h * 6;
    const double x = delta * (1 - std::abs(std::fmod(hh, 2.0) - 1));
    Rgb out;
    switch (static_cast<int>(hh) % 6) {
        case 0: out = {delta, x, 0}; break;
        case 1: out = {x, delta, 0}; break;
        case 2: out = {0, delta, x}; break;
        case 3: out = {0, x, delta}; break;
        case 4: out = {x, 0, delta}; break;
        default: out = {delta, 0, x}; break;
    }
    return out + Rgb{mn, mn, mn};
}

inline std::uint8_t to_byte(double v) {
    v = std::clamp(v, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::lround(255.0 * std::pow(v, 2.2)));
}

}  // namespace fourdlo::script
