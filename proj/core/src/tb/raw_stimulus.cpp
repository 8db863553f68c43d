#include "isptb/tb/raw_stimulus.hpp"

#include <fstream>

namespace isptb::tb {

RawResult read_raw_frames(const std::string& path, unsigned width, unsigned height) {
    RawResult result;
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) {
        result.error = "cannot open raw stimulus file '" + path + "'";
        return result;
    }
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>()};

    const std::size_t frame_size = static_cast<std::size_t>(width) * height;
    if (frame_size == 0) {
        result.error = "frame size is zero";
        return result;
    }
    if (bytes.size() % frame_size != 0) {
        result.error = "SIZE_NOT_MULTIPLE: file length " + std::to_string(bytes.size()) +
                       " is not a multiple of the " + std::to_string(frame_size) +
                       "-byte frame size";
        return result;
    }

    RawStimulus stim;
    for (std::size_t at = 0; at < bytes.size(); at += frame_size) {
        Frame f;
        f.width = width;
        f.height = height;
        f.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(at),
                        bytes.begin() + static_cast<std::ptrdiff_t>(at + frame_size));
        stim.frames.push_back(std::move(f));
    }
    result.stimulus = std::move(stim);
    return result;
}

} // namespace isptb::tb
