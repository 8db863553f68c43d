#pragma once

#include "isptb/frame.hpp"

#include <optional>
#include <string>
#include <vector>

namespace isptb::tb {

// Frames decoded from a headerless raw byte file: consecutive W*H-byte
// chunks in file order.
struct RawStimulus {
    std::vector<Frame> frames;
};

struct RawResult {
    std::optional<RawStimulus> stimulus; // present iff error is empty
    std::string error;

    bool ok() const { return stimulus.has_value(); }
};

RawResult read_raw_frames(const std::string& path, unsigned width, unsigned height);

} // namespace isptb::tb
