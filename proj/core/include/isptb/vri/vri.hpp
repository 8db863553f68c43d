#pragma once

#include "isptb/frame.hpp"
#include "isptb/tb/component.hpp"
#include "isptb/tb/sequence.hpp"
#include "isptb/tlm/socket.hpp"
#include "isptb/uvc/stimulus.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace isptb::vri {

// Per-instance register window at base + 0x40*i.
namespace regs {
inline constexpr std::uint64_t kCmd = 0x00;
inline constexpr std::uint64_t kStatus = 0x04;
inline constexpr std::uint64_t kParam0 = 0x10;
inline constexpr std::uint64_t kParam3 = 0x1C;
inline constexpr std::uint64_t kStride = 0x40;
} // namespace regs

enum class VriStatus : std::uint32_t { Idle = 0, Busy = 1, Done = 2, Error = 3 };

enum : std::uint32_t {
    kCmdSendRandomFrame = 1, // PARAM1:PARAM0 = 64-bit seed
    kCmdSendStimulusFrame = 2, // PARAM0 = frame index
    kCmdQueryFramesSent = 3, // result to PARAM3, rejections to PARAM2
};

// Memory-mapped command layer over the frame UVC: lets test programs on the
// CPU path start stimulus sequences by writing registers. One block per UVC
// instance, 64 instances in the 4 KiB window.
class VriBlock : public tb::Component {
public:
    static constexpr std::size_t kMaxInstances = 64;

    VriBlock(std::string name, tb::Component& parent, unsigned frame_width,
             unsigned frame_height);

    tlm::TargetSocket& target() { return target_; }

    // Commands written to instance `index` start sequences on `sequencer`.
    // `stimulus` backs SEND_STIMULUS_FRAME and may be null.
    void bind_service(std::size_t index, tb::Sequencer<Frame>& sequencer,
                      const std::vector<Frame>* stimulus);

    VriStatus status(std::size_t index) const { return blocks_[index].status; }
    std::uint32_t frames_sent(std::size_t index) const { return blocks_[index].frames_sent; }
    std::uint32_t rejections(std::size_t index) const { return blocks_[index].rejections; }

    // Status values in transition order, per instance (property-test hook).
    const std::vector<VriStatus>& status_trace(std::size_t index) const {
        return blocks_[index].trace;
    }

private:
    struct Block {
        VriStatus status = VriStatus::Idle;
        std::uint32_t cmd = 0;
        std::array<std::uint32_t, 4> params{};
        std::uint32_t frames_sent = 0;
        std::uint32_t rejections = 0;
        tb::Sequencer<Frame>* sequencer = nullptr;
        const std::vector<Frame>* stimulus = nullptr;
        std::vector<VriStatus> trace{VriStatus::Idle};
    };

    void handle(tlm::GenericPayload& payload);
    void dispatch(std::size_t index, std::uint32_t code);
    void set_status(std::size_t index, VriStatus status);

    tlm::TargetSocket target_;
    unsigned frame_width_;
    unsigned frame_height_;
    std::array<Block, kMaxInstances> blocks_;
};

} // namespace isptb::vri
