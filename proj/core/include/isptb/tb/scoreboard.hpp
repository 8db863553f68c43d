#pragma once

#include "isptb/frame.hpp"
#include "isptb/tb/component.hpp"

#include <deque>
#include <vector>

namespace isptb::tb {

struct MismatchRecord {
    int frame = 0;
    int x = 0; // -1/-1 marks a structural (dimension) mismatch
    int y = 0;
    int expected = 0;
    int actual = 0;

    bool operator==(const MismatchRecord&) const = default;
};

struct FrameVerdict {
    bool match = false;
    bool structural = false;
    std::vector<MismatchRecord> records;
};

// Byte-wise comparison; on mismatch records up to `cap` pixel records in
// scan order. A dimension mismatch is a single structural record.
FrameVerdict scoreboard_compare(const Frame& expected, const Frame& observed, int frame_index,
                                std::size_t cap = 16);

// In-order frame comparator: expected frames come from the reference model
// tee, observed frames from the DUT output monitor. Frame i is always
// compared against frame i; a frame-count imbalance at end of test is
// itself a failure.
class Scoreboard : public Component {
public:
    Scoreboard(std::string name, Component& parent, std::size_t mismatch_cap = 16);

    void push_expected(Frame frame);
    void push_observed(Frame frame);

    int frames_compared() const { return frames_compared_; }
    const std::vector<MismatchRecord>& mismatches() const { return mismatches_; }

    void check_phase() override;

private:
    void compare_ready();

    std::size_t cap_;
    std::deque<Frame> expected_;
    std::deque<Frame> observed_;
    int frames_compared_ = 0;
    int frames_mismatched_ = 0;
    std::vector<MismatchRecord> mismatches_;
};

} // namespace isptb::tb
