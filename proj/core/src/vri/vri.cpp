#include "isptb/vri/vri.hpp"

#include "isptb/fatal.hpp"

namespace isptb::vri {

VriBlock::VriBlock(std::string name, tb::Component& parent, unsigned frame_width,
                   unsigned frame_height)
    : Component(std::move(name), parent), target_(full_name() + ".target"),
      frame_width_(frame_width), frame_height_(frame_height) {
    target_.set_handler(
        [this](tlm::GenericPayload& payload, sim::SimTime&) { handle(payload); });
}

void VriBlock::bind_service(std::size_t index, tb::Sequencer<Frame>& sequencer,
                            const std::vector<Frame>* stimulus) {
    if (index >= kMaxInstances) throw FatalError("vri: instance index out of range");
    if (blocks_[index].sequencer) {
        throw FatalError("vri: instance " + std::to_string(index) + " is already bound");
    }
    blocks_[index].sequencer = &sequencer;
    blocks_[index].stimulus = stimulus;
}

void VriBlock::set_status(std::size_t index, VriStatus status) {
    blocks_[index].status = status;
    blocks_[index].trace.push_back(status);
}

void VriBlock::handle(tlm::GenericPayload& payload) {
    const std::uint64_t offset = payload.address;
    const std::size_t index = offset / regs::kStride;
    const std::uint64_t reg = offset % regs::kStride;
    if (index >= kMaxInstances || offset % 4 != 0) {
        payload.status = tlm::Status::AddressError;
        return;
    }
    Block& block = blocks_[index];

    const bool is_param = reg >= regs::kParam0 && reg <= regs::kParam3;
    if (reg != regs::kCmd && reg != regs::kStatus && !is_param) {
        payload.status = tlm::Status::AddressError;
        return;
    }

    if (payload.command == tlm::Command::Read) {
        std::uint32_t value = 0;
        if (reg == regs::kCmd) value = block.cmd;
        else if (reg == regs::kStatus) value = static_cast<std::uint32_t>(block.status);
        else value = block.params[(reg - regs::kParam0) / 4];
        payload.set_value32(value);
        payload.status = tlm::Status::Ok;
        return;
    }

    // Write.
    if (reg == regs::kStatus) {
        // Status is hardware-owned; writes are accepted and ignored.
        payload.status = tlm::Status::Ok;
        return;
    }
    if (is_param) {
        block.params[(reg - regs::kParam0) / 4] = payload.value32();
        payload.status = tlm::Status::Ok;
        return;
    }
    dispatch(index, payload.value32());
    payload.status = tlm::Status::Ok;
}

void VriBlock::dispatch(std::size_t index, std::uint32_t code) {
    Block& block = blocks_[index];
    if (block.status == VriStatus::Busy) {
        // Dropped, not queued; the CPU is expected to poll.
        ++block.rejections;
        return;
    }
    block.cmd = code;

    if (code == kCmdQueryFramesSent) {
        // Completes in zero sequence time.
        block.params[3] = block.frames_sent;
        block.params[2] = block.rejections;
        set_status(index, VriStatus::Busy);
        set_status(index, VriStatus::Done);
        return;
    }

    if (code != kCmdSendRandomFrame && code != kCmdSendStimulusFrame) {
        set_status(index, VriStatus::Busy);
        set_status(index, VriStatus::Error);
        return;
    }
    if (!block.sequencer) {
        set_status(index, VriStatus::Busy);
        set_status(index, VriStatus::Error);
        return;
    }

    Frame frame;
    if (code == kCmdSendRandomFrame) {
        const std::uint64_t seed =
            (static_cast<std::uint64_t>(block.params[1]) << 32) | block.params[0];
        uvc::SplitMix64 stream(seed);
        frame = uvc::random_frame(stream, frame_width_, frame_height_);
    } else {
        const std::uint32_t frame_index = block.params[0];
        if (!block.stimulus || frame_index >= block.stimulus->size()) {
            set_status(index, VriStatus::Busy);
            set_status(index, VriStatus::Error);
            return;
        }
        frame = (*block.stimulus)[frame_index];
    }

    set_status(index, VriStatus::Busy);
    auto handle = block.sequencer->start_sequence(tb::Sequence<Frame>::from_items(
        full_name() + ".inst" + std::to_string(index), {std::move(frame)}));

    kernel().spawn(full_name() + ".inst" + std::to_string(index) + ".cmd",
                   [this, index, handle]() -> sim::Job {
                       if (!handle->complete()) co_await handle->done().wait();
                       ++blocks_[index].frames_sent;
                       set_status(index, VriStatus::Done);
                   });
}

} // namespace isptb::vri
