#include "isptb/uvc/stimulus.hpp"

namespace isptb::uvc {

Frame random_frame(SplitMix64& stream, unsigned width, unsigned height) {
    Frame f;
    f.width = width;
    f.height = height;
    f.pixels.resize(static_cast<std::size_t>(width) * height);
    for (auto& p : f.pixels) p = static_cast<std::uint8_t>(stream.next() & 0xFF);
    return f;
}

} // namespace isptb::uvc
