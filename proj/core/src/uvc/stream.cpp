#include "isptb/uvc/stream.hpp"

#include "isptb/fatal.hpp"

namespace isptb::uvc {

StreamDriver::StreamDriver(std::string name, tb::Component& parent,
                           tb::Sequencer<Frame>& sequencer, sim::SimTime clock_period,
                           GapPolicy gaps, std::uint64_t gap_seed)
    : Component(std::move(name), parent), sequencer_(sequencer), period_(clock_period),
      gaps_(gaps), gap_rng_(gap_seed) {
    if (gaps_.min_gap > gaps_.max_gap) {
        throw FatalError("gap policy: min_gap exceeds max_gap");
    }
}

void StreamDriver::run_phase() {
    kernel().spawn(full_name(), [this] { return drive_loop(); });
}

sim::Job StreamDriver::drive_loop() {
    for (;;) {
        const Frame frame = co_await sequencer_.next_item();
        raise_objection();
        frames_out_.publish(frame);

        const std::size_t last = frame.pixels.size() - 1;
        for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
            StreamBeat beat;
            beat.data = frame.pixels[i];
            beat.sof = (i == 0);
            beat.eof = (i == last);
            beats_out_.publish(beat);
            if (i != last) {
                unsigned gap = gaps_.min_gap;
                if (gaps_.max_gap > gaps_.min_gap) {
                    gap += static_cast<unsigned>(gap_rng_.next() %
                                                 (gaps_.max_gap - gaps_.min_gap + 1));
                }
                co_await kernel().wait(period_ * (1 + gap));
            }
        }
        drop_objection();
    }
}

StreamMonitor::StreamMonitor(std::string name, tb::Component& parent, unsigned expected_width,
                             unsigned expected_height)
    : Component(std::move(name), parent), width_(expected_width), height_(expected_height) {}

void StreamMonitor::connect(tb::AnalysisPort<StreamBeat>& source) {
    source.subscribe([this](const StreamBeat& beat) { on_beat(beat); });
}

void StreamMonitor::on_beat(const StreamBeat& beat) {
    const std::size_t expected = static_cast<std::size_t>(width_) * height_;

    if (!in_frame_) {
        if (!beat.sof) {
            // Report the first stray beat, then stay quiet until resync.
            if (!resyncing_) {
                report_error("MISSING_SOF: first beat of a frame lacks sof");
                resyncing_ = true;
            }
            return;
        }
        resyncing_ = false;
        in_frame_ = true;
        buffer_.clear();
    } else if (beat.sof) {
        report_error("unexpected sof mid-frame after " + std::to_string(buffer_.size()) +
                     " beats; resynchronizing");
        buffer_.clear();
    }

    buffer_.push_back(beat.data);

    if (buffer_.size() > expected) {
        report_error("LONG_FRAME: beat count exceeds " + std::to_string(expected) +
                     " without eof");
        in_frame_ = false;
        resyncing_ = true;
        return;
    }

    if (beat.eof) {
        in_frame_ = false;
        if (buffer_.size() < expected) {
            report_error("SHORT_FRAME: eof after " + std::to_string(buffer_.size()) + " of " +
                         std::to_string(expected) + " beats");
            return;
        }
        Frame frame;
        frame.width = width_;
        frame.height = height_;
        frame.pixels = buffer_;
        ++frames_collected_;
        frames_out_.publish(frame);
    }
}

} // namespace isptb::uvc
