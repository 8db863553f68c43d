#pragma once

#include "isptb/frame.hpp"

#include <cstdint>

namespace isptb::uvc {

// splitmix64: trivially portable across languages, so generated stimulus is
// independently recomputable.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        ++steps_;
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state() const { return state_; }
    std::uint64_t steps() const { return steps_; }

private:
    std::uint64_t state_;
    std::uint64_t steps_ = 0;
};

// Row-major frame whose pixels are the low bytes of successive splitmix64
// outputs; advances the stream by exactly width*height steps.
Frame random_frame(SplitMix64& stream, unsigned width, unsigned height);

} // namespace isptb::uvc
