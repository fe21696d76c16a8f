#pragma once

// Frame file: "4DLO", then little-endian u32 version, u32 LED count,
// u32 frame count, f32 fps, then each frame as LED-count x 3 bytes (R, G, B).

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourdlo/script/sequencer.hpp"

namespace fourdlo::io {

inline constexpr std::uint32_t kFrameFileVersion = 1;
inline constexpr std::size_t kFrameHeaderSize = 20;

struct FrameFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FrameHeader {
    std::uint32_t version = kFrameFileVersion;
    std::uint32_t led_count = 0;
    std::uint32_t frame_count = 0;
    float fps = 0;
    friend bool operator==(const FrameHeader&, const FrameHeader&) = default;
};

namespace detail {

inline void put_u32(std::ostream& out, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff), static_cast<char>((v >> 16) & 0xff),
                       static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

inline std::uint32_t get_u32(const unsigned char* b) {
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 | static_cast<std::uint32_t>(b[2]) << 16 |
           static_cast<std::uint32_t>(b[3]) << 24;
}

}  // namespace detail

inline void write_frame_header(std::ostream& out, const FrameHeader& h) {
    out.write("4DLO", 4);
    detail::put_u32(out, h.version);
    detail::put_u32(out, h.led_count);
    detail::put_u32(out, h.frame_count);
    detail::put_u32(out, std::bit_cast<std::uint32_t>(h.fps));
}

inline FrameHeader read_frame_header(std::istream& in) {
    unsigned char b[kFrameHeaderSize];
    if (!in.read(reinterpret_cast<char*>(b), kFrameHeaderSize)) throw FrameFormatError("frame file: truncated header");
    if (std::memcmp(b, "4DLO", 4) != 0) throw FrameFormatError("frame file: bad magic");
    FrameHeader h;
    h.version = detail::get_u32(b + 4);
    if (h.version != kFrameFileVersion) throw FrameFormatError("frame file: unsupported version " + std::to_string(h.version));
    h.led_count = detail::get_u32(b + 8);
    h.frame_count = detail::get_u32(b + 12);
    h.fps = std::bit_cast<float>(detail::get_u32(b + 16));
    return h;
}

/// Streams frames after the header, checking size and count.
class FrameWriter {
public:
    FrameWriter(std::ostream& out, const FrameHeader& h) : out_(out), header_(h) { write_frame_header(out_, header_); }

    void write(const script::Frame& f) {
        if (written_ >= header_.frame_count) throw std::logic_error("FrameWriter: more frames than the header declares");
        if (f.rgb.size() != std::size_t{header_.led_count} * 3) throw std::invalid_argument("FrameWriter: frame size mismatch");
        out_.write(reinterpret_cast<const char*>(f.rgb.data()), static_cast<std::streamsize>(f.rgb.size()));
        ++written_;
    }

    bool complete() const { return written_ == header_.frame_count; }

private:
    std::ostream& out_;
    FrameHeader header_;
    std::uint32_t written_ = 0;
};

struct FrameFile {
    FrameHeader header;
    std::vector<std::vector<std::uint8_t>> frames;
};

inline FrameFile read_frame_file(std::istream& in) {
    FrameFile f;
    f.header = read_frame_header(in);
    const std::size_t size = std::size_t{f.header.led_count} * 3;
    for (std::uint32_t k = 0; k < f.header.frame_count; ++k) {
        std::vector<std::uint8_t> rgb(size);
        if (!in.read(reinterpret_cast<char*>(rgb.data()), static_cast<std::streamsize>(size)))
            throw FrameFormatError("frame file: truncated at frame " + std::to_string(k));
        f.frames.push_back(std::move(rgb));
    }
    if (in.peek() != std::char_traits<char>::eof()) throw FrameFormatError("frame file: trailing bytes");
    return f;
}

}  // namespace fourdlo::io
