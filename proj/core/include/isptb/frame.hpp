#pragma once

#include <cstdint>
#include <vector>

namespace isptb {

// 8-bit grayscale image payload, row-major.
struct Frame {
    unsigned width = 0;
    unsigned height = 0;
    std::vector<std::uint8_t> pixels; // size == width * height

    static Frame filled(unsigned width, unsigned height, std::uint8_t value) {
        Frame f;
        f.width = width;
        f.height = height;
        f.pixels.assign(static_cast<std::size_t>(width) * height, value);
        return f;
    }

    std::uint8_t at(unsigned x, unsigned y) const { return pixels[std::size_t(y) * width + x]; }
    std::uint8_t& at(unsigned x, unsigned y) { return pixels[std::size_t(y) * width + x]; }

    bool operator==(const Frame&) const = default;
};

// One stream-clock cycle's worth of image data. Exactly one sof and one eof
// per frame; a 1x1 frame carries both on its single beat.
struct StreamBeat {
    std::uint8_t data = 0;
    bool sof = false;
    bool eof = false;
};

} // namespace isptb
