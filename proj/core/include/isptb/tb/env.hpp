#pragma once

#include "isptb/cfg/tb_config.hpp"
#include "isptb/isp/dut.hpp"
#include "isptb/reg/reg_model.hpp"
#include "isptb/tb/component.hpp"
#include "isptb/tb/report.hpp"
#include "isptb/tb/scoreboard.hpp"
#include "isptb/tb/sequence.hpp"
#include "isptb/uvc/ctrl_bfm.hpp"
#include "isptb/uvc/stream.hpp"
#include "isptb/vp/platform.hpp"
#include "isptb/vri/vri.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace isptb::tb {

// Configuration or wiring problem found before the run phase; the CLI maps
// it to the usage/config exit code.
class BuildError : public std::runtime_error {
public:
    explicit BuildError(const std::string& msg) : std::runtime_error(msg) {}
};

// The assembled verification environment: clock/reset, the selected DUT
// kind behind its register target, the data UVC, the reference-model tee,
// the scoreboard, and either the host programming path (control BFM +
// register model) or the virtual platform (CPU + interconnect + memory +
// VRI). Swapping dut_kind changes nothing else in the bench.
class Testbench {
public:
    // `map` must describe the DUT (the shipped isp_regs.xml or the built-in
    // equivalent). Relative file references in `config` are resolved
    // against `base_dir`.
    Testbench(cfg::TbConfig config, reg::AddressMap map, std::string base_dir = ".");
    ~Testbench();

    TestOutcome run();

    Env& env() { return env_; }
    const cfg::TbConfig& config() const { return cfg_; }
    const Scoreboard& scoreboard() const { return *scoreboard_; }
    isp::IspDutBase& dut() { return *dut_; }
    reg::RegModel* reg_model() { return reg_model_.get(); }
    const vp::CpuModel* cpu() const { return cpu_.get(); }

    // (map-local offset, value) of all DUT registers and LUT words.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> backdoor_dump() const {
        return dut_->backdoor_dump();
    }

    Report make_report(std::string test_name, double wall_ms) const;

private:
    friend class HostSequence;

    std::string resolve(const std::string& path) const;
    void build_host_path();
    void build_cpu_path();
    std::vector<Frame> make_stimulus_frames() const;

    cfg::TbConfig cfg_;
    std::string base_dir_;
    Env env_;

    std::unique_ptr<vp::ClockGen> clock_;
    std::unique_ptr<vp::ResetGen> reset_;
    std::unique_ptr<isp::IspDutBase> dut_;
    std::unique_ptr<Sequencer<Frame>> sequencer_;
    std::unique_ptr<uvc::StreamDriver> driver_;
    std::unique_ptr<uvc::StreamMonitor> monitor_;
    std::unique_ptr<Scoreboard> scoreboard_;

    // Host path.
    std::unique_ptr<uvc::CtrlBfm> bfm_;
    std::unique_ptr<reg::RegModel> reg_model_;
    std::unique_ptr<Component> host_sequence_;
    std::vector<cfg::ParamWrite> params_;

    // CPU path.
    std::unique_ptr<vp::Router> router_;
    std::unique_ptr<vp::MemoryModel> memory_;
    std::unique_ptr<vri::VriBlock> vri_;
    std::unique_ptr<vp::CpuModel> cpu_;

    std::vector<Frame> file_frames_;
    std::optional<TestOutcome> outcome_;
};

} // namespace isptb::tb
