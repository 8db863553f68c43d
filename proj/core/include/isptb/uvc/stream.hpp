#pragma once

#include "isptb/frame.hpp"
#include "isptb/tb/analysis.hpp"
#include "isptb/tb/component.hpp"
#include "isptb/tb/sequence.hpp"
#include "isptb/uvc/stimulus.hpp"

#include <cstdint>
#include <optional>

namespace isptb::uvc {

// Idle cycles inserted between beats of one frame (never before sof or after
// eof).
struct GapPolicy {
    unsigned min_gap = 0;
    unsigned max_gap = 0;

    static GapPolicy none() { return {0, 0}; }
    static GapPolicy random(unsigned min_gap, unsigned max_gap) { return {min_gap, max_gap}; }
};

// Pulls frames from a sequencer and emits them beat by beat, one pixel per
// stream clock cycle. The driven frame is published on frames_out at sof
// time (the stimulus tee toward the reference model); raw beats go to
// beats_out.
class StreamDriver : public tb::Component {
public:
    StreamDriver(std::string name, tb::Component& parent, tb::Sequencer<Frame>& sequencer,
                 sim::SimTime clock_period = 10, GapPolicy gaps = GapPolicy::none(),
                 std::uint64_t gap_seed = 1);

    tb::AnalysisPort<StreamBeat>& beats_out() { return beats_out_; }
    tb::AnalysisPort<Frame>& frames_out() { return frames_out_; }

    void run_phase() override;

private:
    sim::Job drive_loop();

    tb::Sequencer<Frame>& sequencer_;
    sim::SimTime period_;
    GapPolicy gaps_;
    SplitMix64 gap_rng_;
    tb::AnalysisPort<StreamBeat> beats_out_;
    tb::AnalysisPort<Frame> frames_out_;
};

// Passive monitor: snoops a beat stream, reassembles frames of the expected
// dimensions and publishes each on eof. Framing violations are recorded as
// component errors.
class StreamMonitor : public tb::Component {
public:
    StreamMonitor(std::string name, tb::Component& parent, unsigned expected_width,
                  unsigned expected_height);

    void connect(tb::AnalysisPort<StreamBeat>& source);
    tb::AnalysisPort<Frame>& frames_out() { return frames_out_; }

    unsigned frames_collected() const { return frames_collected_; }

private:
    void on_beat(const StreamBeat& beat);

    unsigned width_;
    unsigned height_;
    bool in_frame_ = false;
    bool resyncing_ = false;
    std::vector<std::uint8_t> buffer_;
    unsigned frames_collected_ = 0;
    tb::AnalysisPort<Frame> frames_out_;
};

} // namespace isptb::uvc
