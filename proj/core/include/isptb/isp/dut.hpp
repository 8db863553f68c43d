#pragma once

#include "isptb/isp/pipeline.hpp"
#include "isptb/isp/reg_layout.hpp"
#include "isptb/reg/reg_file.hpp"
#include "isptb/reg/reg_model.hpp"
#include "isptb/tb/analysis.hpp"
#include "isptb/tb/component.hpp"
#include "isptb/tlm/socket.hpp"

#include <deque>
#include <optional>

namespace isptb::isp {

// Shared DUT plumbing: the policy-applying register file behind a TLM
// target socket, beat intake with sof-latched configuration, the STATUS
// bits and the dropped-beat counter. Frames whose sof arrives with
// pipe_en=0 are dropped beat by beat.
class IspDutBase : public tb::Component {
public:
    IspDutBase(std::string name, tb::Component& parent);

    tlm::TargetSocket& ctrl_target() { return ctrl_target_; }
    tb::AnalysisPort<StreamBeat>& beats_out() { return beats_out_; }
    void connect_stream_in(tb::AnalysisPort<StreamBeat>& source);

    reg::BackdoorHook backdoor();
    const reg::RegFile& regs() const { return regs_; }
    reg::RegFile& regs() { return regs_; }

    // Dump of the full DUT storage: every register plus every LUT word,
    // as (map-local offset, value), offset-ordered.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> backdoor_dump() const;

    const IspConfig& latched_config() const { return latched_; }

protected:
    // Intake lifecycle. frame_started fires at an accepted sof,
    // frame_complete with the full frame and the configuration latched at
    // its sof, frame_aborted when the beat count disagrees with the latched
    // dimensions.
    virtual void frame_started() {}
    virtual void frame_complete(const IspConfig& cfg, Frame frame) = 0;
    virtual void frame_aborted() {}

    void set_busy(bool on);
    void set_frame_done();
    void count_dropped_beat();

    reg::RegFile regs_{dut_address_map()};
    std::size_t status_index_;
    tb::AnalysisPort<StreamBeat> beats_out_;

private:
    void on_beat(const StreamBeat& beat);
    void finish_frame();

    tlm::TargetSocket ctrl_target_;
    IspConfig latched_;
    bool receiving_ = false;
    bool dropping_frame_ = false;
    std::vector<std::uint8_t> buffer_;
};

// The golden reference model wrapped with a register target and stream
// ports: processes each frame in zero time at its input eof.
class RefModelWrapper : public IspDutBase {
public:
    RefModelWrapper(std::string name, tb::Component& parent);

protected:
    void frame_started() override { set_busy(true); }
    void frame_complete(const IspConfig& cfg, Frame frame) override;
    void frame_aborted() override { set_busy(false); }
};

// Timed register-programmed stand-in playing the RTL role: consumes one
// beat per cycle, emits the processed frame one beat per cycle after a
// fixed internal latency, and can inject a stage fault.
class IspStandIn : public IspDutBase {
public:
    IspStandIn(std::string name, tb::Component& parent, sim::SimTime clock_period = 10,
               std::optional<FaultSpec> fault = std::nullopt);

    void run_phase() override;

protected:
    void frame_started() override;
    void frame_complete(const IspConfig& cfg, Frame frame) override;
    void frame_aborted() override;

private:
    sim::Job emit_loop();

    sim::SimTime period_;
    sim::SimTime output_latency_;
    std::optional<FaultSpec> fault_;
    std::deque<Frame> out_queue_;
    std::optional<sim::Notification> out_ready_;
    unsigned active_frames_ = 0;
};

} // namespace isptb::isp
