#include "isptb/isp/dut.hpp"

namespace isptb::isp {

IspDutBase::IspDutBase(std::string name, tb::Component& parent)
    : Component(std::move(name), parent), ctrl_target_(full_name() + ".ctrl") {
    // LUT resets to the identity curve.
    for (std::size_t i = 0; i < 256; ++i) {
        regs_.hw_write_mem(0, i, static_cast<std::uint32_t>(i));
    }
    status_index_ = 0;
    for (std::size_t i = 0; i < regs_.map().registers.size(); ++i) {
        if (regs_.map().registers[i].name == "STATUS") status_index_ = i;
    }

    ctrl_target_.set_handler([this](tlm::GenericPayload& p, sim::SimTime&) {
        if (p.command == tlm::Command::Write) {
            p.status = regs_.bus_write(p.address, p.value32());
        } else {
            const auto [value, st] = regs_.bus_read(p.address);
            p.set_value32(value);
            p.status = st;
        }
    });
}

void IspDutBase::connect_stream_in(tb::AnalysisPort<StreamBeat>& source) {
    source.subscribe([this](const StreamBeat& beat) { on_beat(beat); });
}

reg::BackdoorHook IspDutBase::backdoor() {
    reg::BackdoorHook hook;
    hook.peek = [this](std::uint64_t offset) { return regs_.peek(offset); };
    hook.poke = [this](std::uint64_t offset, std::uint32_t value) {
        return regs_.poke(offset, value);
    };
    return hook;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> IspDutBase::backdoor_dump() const {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> dump;
    for (const auto& r : regs_.map().registers) {
        dump.emplace_back(r.offset, *regs_.peek(r.offset));
    }
    for (const auto& m : regs_.map().memories) {
        for (std::uint64_t off = m.offset; off < m.offset + m.size; off += 4) {
            dump.emplace_back(off, *regs_.peek(off));
        }
    }
    return dump;
}

void IspDutBase::set_busy(bool on) {
    if (on) {
        regs_.hw_set_bits(status_index_, status::kBusy);
    } else {
        regs_.hw_clear_bits(status_index_, status::kBusy);
    }
}

void IspDutBase::set_frame_done() { regs_.hw_set_bits(status_index_, status::kFrameDone); }

void IspDutBase::count_dropped_beat() {
    const std::uint32_t current =
        (regs_.raw(status_index_) & status::kDroppedMask) >> status::kDroppedLsb;
    if (current >= 0xFF) return; // counter saturates
    regs_.hw_clear_bits(status_index_, status::kDroppedMask);
    regs_.hw_set_bits(status_index_, (current + 1) << status::kDroppedLsb);
}

void IspDutBase::on_beat(const StreamBeat& beat) {
    if (!receiving_ && !dropping_frame_) {
        if (!beat.sof) {
            // Stray beat outside any frame; nothing to attribute it to.
            count_dropped_beat();
            return;
        }
        latched_ = decode_isp_config([this](std::uint64_t off) { return regs_.peek(off); });
        if (!latched_.pipe_en) {
            dropping_frame_ = true;
            count_dropped_beat();
            if (beat.eof) dropping_frame_ = false;
            return;
        }
        receiving_ = true;
        buffer_.clear();
        buffer_.push_back(beat.data);
        frame_started();
        if (beat.eof) {
            receiving_ = false;
            finish_frame();
        }
        return;
    }

    if (dropping_frame_) {
        count_dropped_beat();
        if (beat.eof) dropping_frame_ = false;
        return;
    }

    if (beat.sof) {
        report_error("unexpected sof mid-frame");
        buffer_.clear();
    }
    buffer_.push_back(beat.data);
    if (beat.eof) {
        receiving_ = false;
        finish_frame();
    }
}

void IspDutBase::finish_frame() {
    const std::size_t expected =
        static_cast<std::size_t>(latched_.width) * latched_.height;
    if (buffer_.size() != expected) {
        report_error("frame beat count " + std::to_string(buffer_.size()) +
                     " does not match programmed " + std::to_string(latched_.width) + "x" +
                     std::to_string(latched_.height));
        count_dropped_beat();
        frame_aborted();
        return;
    }
    if (latched_.conv_en && (latched_.width < 3 || latched_.height < 3)) {
        report_error("convolution enabled but the programmed frame is smaller than the "
                     "3x3 window");
        count_dropped_beat();
        frame_aborted();
        return;
    }
    Frame frame;
    frame.width = latched_.width;
    frame.height = latched_.height;
    frame.pixels = buffer_;
    frame_complete(latched_, std::move(frame));
}

RefModelWrapper::RefModelWrapper(std::string name, tb::Component& parent)
    : IspDutBase(std::move(name), parent) {}

void RefModelWrapper::frame_complete(const IspConfig& cfg, Frame frame) {
    // Untimed: process and emit at the input eof timestamp.
    const auto out = ref_process_frame(cfg, frame);
    if (out) {
        const std::size_t last = out->pixels.size() - 1;
        for (std::size_t i = 0; i < out->pixels.size(); ++i) {
            beats_out_.publish(StreamBeat{out->pixels[i], i == 0, i == last});
        }
    }
    set_frame_done();
    set_busy(false);
}

IspStandIn::IspStandIn(std::string name, tb::Component& parent, sim::SimTime clock_period,
                       std::optional<FaultSpec> fault)
    : IspDutBase(std::move(name), parent), period_(clock_period),
      output_latency_(2 * clock_period), fault_(std::move(fault)) {
    out_ready_.emplace(kernel());
}

void IspStandIn::run_phase() {
    kernel().spawn(full_name() + ".emit", [this] { return emit_loop(); });
}

void IspStandIn::frame_started() {
    ++active_frames_;
    set_busy(true);
    raise_objection(); // output still owed for this frame
}

void IspStandIn::frame_aborted() {
    if (--active_frames_ == 0) set_busy(false);
    drop_objection();
}

void IspStandIn::frame_complete(const IspConfig& cfg, Frame frame) {
    auto out = staged_process(cfg, frame, fault_);
    if (!out) return; // cannot happen: pipe_en was checked at sof
    out_queue_.push_back(std::move(*out));
    out_ready_->notify();
}

sim::Job IspStandIn::emit_loop() {
    for (;;) {
        while (out_queue_.empty()) co_await out_ready_->wait();
        const Frame frame = std::move(out_queue_.front());
        out_queue_.pop_front();

        co_await kernel().wait(output_latency_);
        const std::size_t last = frame.pixels.size() - 1;
        for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
            beats_out_.publish(StreamBeat{frame.pixels[i], i == 0, i == last});
            if (i != last) co_await kernel().wait(period_);
        }
        set_frame_done();
        if (--active_frames_ == 0) set_busy(false);
        drop_objection();
    }
}

} // namespace isptb::isp
