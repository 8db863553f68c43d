#include "isptb/tb/scoreboard.hpp"

namespace isptb::tb {

FrameVerdict scoreboard_compare(const Frame& expected, const Frame& observed, int frame_index,
                                std::size_t cap) {
    FrameVerdict verdict;
    if (expected.width != observed.width || expected.height != observed.height) {
        verdict.structural = true;
        verdict.records.push_back(MismatchRecord{frame_index, -1, -1, 0, 0});
        return verdict;
    }
    for (unsigned y = 0; y < expected.height; ++y) {
        for (unsigned x = 0; x < expected.width; ++x) {
            if (expected.at(x, y) == observed.at(x, y)) continue;
            if (verdict.records.size() < cap) {
                verdict.records.push_back(MismatchRecord{frame_index, static_cast<int>(x),
                                                         static_cast<int>(y), expected.at(x, y),
                                                         observed.at(x, y)});
            } else {
                // Cap reached; the frame is already known bad.
                verdict.match = false;
                return verdict;
            }
        }
    }
    verdict.match = verdict.records.empty();
    return verdict;
}

Scoreboard::Scoreboard(std::string name, Component& parent, std::size_t mismatch_cap)
    : Component(std::move(name), parent), cap_(mismatch_cap) {}

void Scoreboard::push_expected(Frame frame) {
    expected_.push_back(std::move(frame));
    compare_ready();
}

void Scoreboard::push_observed(Frame frame) {
    observed_.push_back(std::move(frame));
    compare_ready();
}

void Scoreboard::compare_ready() {
    while (!expected_.empty() && !observed_.empty()) {
        const Frame exp = std::move(expected_.front());
        const Frame obs = std::move(observed_.front());
        expected_.pop_front();
        observed_.pop_front();

        const FrameVerdict verdict = scoreboard_compare(exp, obs, frames_compared_, cap_);
        if (!verdict.match) {
            ++frames_mismatched_;
            mismatches_.insert(mismatches_.end(), verdict.records.begin(),
                               verdict.records.end());
            if (verdict.structural) {
                report_error("frame " + std::to_string(frames_compared_) +
                             ": dimension mismatch, expected " + std::to_string(exp.width) + "x" +
                             std::to_string(exp.height) + " observed " +
                             std::to_string(obs.width) + "x" + std::to_string(obs.height));
            } else {
                report_error("frame " + std::to_string(frames_compared_) + ": " +
                             std::to_string(verdict.records.size()) + " pixel mismatch(es)");
            }
        }
        ++frames_compared_;
    }
}

void Scoreboard::check_phase() {
    if (!expected_.empty() || !observed_.empty()) {
        report_error("frame count imbalance at end of test: " +
                     std::to_string(expected_.size()) + " expected vs " +
                     std::to_string(observed_.size()) + " observed frames unconsumed");
    }
}

} // namespace isptb::tb
