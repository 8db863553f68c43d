#include "isptb/tb/env.hpp"

#include "isptb/tb/raw_stimulus.hpp"
#include "isptb/uvc/stimulus.hpp"
#include "isptb/vp/program.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace isptb::tb {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw BuildError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Route table of the virtual platform: the ISP block, the VRI window, and
// the memory model.
constexpr std::uint64_t kIspBase = 0x0000'0000;
constexpr std::uint64_t kIspSize = 0x1000;
constexpr std::uint64_t kVriBase = 0x0000'1000;
constexpr std::uint64_t kVriSize = 0x1000;
constexpr std::uint64_t kMemBase = 0x1000'0000;
constexpr std::uint64_t kMemSize = 0x1'0000;

} // namespace

// Host programming path: waits for reset release, programs FRAME_SIZE plus
// the parameter writes through the register-model front door (CTRL last via
// the params convention), then streams the configured stimulus frames.
class HostSequence : public Component {
public:
    HostSequence(Component& parent, Testbench& bench)
        : Component("host_seq", parent), bench_(bench) {}

    void run_phase() override {
        kernel().spawn(full_name(), [this] { return body(); });
    }

private:
    sim::Job body() {
        raise_objection();
        co_await bench_.reset_->released();

        const auto& cfg = bench_.cfg_;
        const std::uint32_t frame_size =
            (static_cast<std::uint32_t>(cfg.frame_height) << 16) | cfg.frame_width;
        co_await program(isp::offsets::kFrameSize, frame_size);

        if (bench_.params_.empty()) {
            // No parameter file: identity pipeline, pipe enabled.
            co_await program(isp::offsets::kCtrl, isp::ctrl::kPipeEn);
        } else {
            for (const auto& w : bench_.params_) co_await program(w.offset, w.value);
        }

        auto handle = bench_.sequencer_->start_sequence(
            Sequence<Frame>::from_items("stimulus", bench_.make_stimulus_frames()));
        if (!handle->complete()) co_await handle->done().wait();
        drop_objection();
    }

    // Registers go through the register-model front door so the mirrors
    // track the programming; memory words (the LUT) ride the BFM directly.
    sim::Task<void> program(std::uint64_t offset, std::uint32_t value) {
        if (const auto* spec = bench_.reg_model_->map().register_at(offset)) {
            const auto st = co_await bench_.reg_model_->write_frontdoor(spec->name, value);
            if (st != reg::RegStatus::Ok) {
                report_error("programming write to '" + spec->name +
                             "' failed: " + std::string(reg::to_string(st)));
            }
            co_return;
        }
        const auto st = co_await bench_.bfm_->write(offset, value);
        if (st.status != tlm::Status::Ok) {
            report_error("programming write to offset " + std::to_string(offset) +
                         " failed: " + std::string(tlm::to_string(st.status)));
        }
    }

    Testbench& bench_;
};

Testbench::Testbench(cfg::TbConfig config, reg::AddressMap map, std::string base_dir)
    : cfg_(std::move(config)), base_dir_(std::move(base_dir)), env_("env") {
    env_.set_drain_time(cfg_.drain_time);

    if (map != isp::dut_address_map()) {
        throw BuildError("register map does not describe the DUT (expected the isp_regs.xml "
                         "layout)");
    }
    if (cfg_.fault && cfg_.dut_kind == cfg::DutKind::ReferenceWrapper) {
        throw BuildError("fault injection requires the STAGED_PIPELINE dut kind");
    }

    clock_ = std::make_unique<vp::ClockGen>("clock", env_, 10);
    reset_ = std::make_unique<vp::ResetGen>("reset", env_, 100);

    if (cfg_.dut_kind == cfg::DutKind::StagedPipeline) {
        dut_ = std::make_unique<isp::IspStandIn>("dut", env_, clock_->period(), cfg_.fault);
    } else {
        dut_ = std::make_unique<isp::RefModelWrapper>("dut", env_);
    }

    sequencer_ = std::make_unique<Sequencer<Frame>>("sequencer", env_);
    driver_ = std::make_unique<uvc::StreamDriver>("driver", env_, *sequencer_, clock_->period());
    monitor_ =
        std::make_unique<uvc::StreamMonitor>("monitor", env_, cfg_.frame_width, cfg_.frame_height);
    scoreboard_ = std::make_unique<Scoreboard>("scoreboard", env_);

    // Stimulus tee: the driven frame goes to the DUT beat by beat and, at
    // sof time, through the reference model into the scoreboard.
    dut_->connect_stream_in(driver_->beats_out());
    monitor_->connect(dut_->beats_out());
    monitor_->frames_out().subscribe(
        [this](const Frame& f) { scoreboard_->push_observed(f); });
    driver_->frames_out().subscribe([this](const Frame& f) {
        const isp::IspConfig cfg = isp::decode_isp_config(
            [this](std::uint64_t off) { return dut_->regs().peek(off); });
        if (cfg.width != f.width || cfg.height != f.height) {
            scoreboard_->report_error(
                "stimulus frame is " + std::to_string(f.width) + "x" + std::to_string(f.height) +
                " but FRAME_SIZE is programmed " + std::to_string(cfg.width) + "x" +
                std::to_string(cfg.height));
            return;
        }
        if (auto expected = isp::ref_process_frame(cfg, f)) {
            scoreboard_->push_expected(std::move(*expected));
        }
    });

    if (cfg_.stimulus == cfg::StimulusKind::File) {
        const auto raw =
            read_raw_frames(resolve(cfg_.stimulus_file), cfg_.frame_width, cfg_.frame_height);
        if (!raw.ok()) throw BuildError(raw.error);
        file_frames_ = raw.stimulus->frames;
        if (file_frames_.size() < cfg_.frame_count) {
            throw BuildError("raw stimulus provides " + std::to_string(file_frames_.size()) +
                             " frame(s) but the config asks for " +
                             std::to_string(cfg_.frame_count));
        }
    }

    if (cfg_.path_kind == cfg::PathKind::Host) {
        build_host_path();
    } else {
        build_cpu_path();
    }
}

Testbench::~Testbench() {
    // Coroutine frames reference components; drop them first.
    env_.kernel().clear();
}

std::string Testbench::resolve(const std::string& path) const {
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(base_dir_) / p).string();
}

std::vector<Frame> Testbench::make_stimulus_frames() const {
    std::vector<Frame> frames;
    if (cfg_.stimulus == cfg::StimulusKind::Random) {
        uvc::SplitMix64 stream(cfg_.seed);
        for (unsigned i = 0; i < cfg_.frame_count; ++i) {
            frames.push_back(uvc::random_frame(stream, cfg_.frame_width, cfg_.frame_height));
        }
    } else {
        frames.assign(file_frames_.begin(),
                      file_frames_.begin() + static_cast<std::ptrdiff_t>(cfg_.frame_count));
    }
    return frames;
}

void Testbench::build_host_path() {
    bfm_ = std::make_unique<uvc::CtrlBfm>("ctrl_bfm", env_, clock_->period());
    tlm::bind(bfm_->socket(), dut_->ctrl_target());

    reg_model_ = std::make_unique<reg::RegModel>(isp::dut_address_map(), bfm_.get());
    reg_model_->set_backdoor(dut_->backdoor());

    if (!cfg_.params_path.empty()) {
        const auto params = cfg::parse_params(slurp(resolve(cfg_.params_path)));
        if (!params.ok()) {
            throw BuildError("params file '" + cfg_.params_path + "': " +
                             params.errors.front().detail);
        }
        params_ = params.writes;
        const auto& map = reg_model_->map();
        for (const auto& w : params_) {
            if (!map.register_at(w.offset) && !map.memory_containing(w.offset)) {
                throw BuildError("params write references unmapped offset 0x" +
                                 [](std::uint64_t v) {
                                     std::ostringstream os;
                                     os << std::hex << v;
                                     return os.str();
                                 }(w.offset));
            }
        }
    }

    host_sequence_ = std::make_unique<HostSequence>(env_, *this);
}

void Testbench::build_cpu_path() {
    router_ = std::make_unique<vp::Router>("interconnect", env_);
    memory_ = std::make_unique<vp::MemoryModel>("memory", env_, kMemSize);
    vri_ = std::make_unique<vri::VriBlock>("vri", env_, cfg_.frame_width, cfg_.frame_height);
    vri_->bind_service(0, *sequencer_, &file_frames_);

    tlm::bind(router_->add_range(kIspBase, kIspSize), dut_->ctrl_target());
    auto& vri_out = router_->add_range(kVriBase, kVriSize);
    tlm::bind(vri_out, vri_->target());
    tlm::bind(router_->add_range(kMemBase, kMemSize), memory_->target());

    const auto parsed = vp::parse_program(slurp(resolve(cfg_.program_path)));
    if (!parsed.ok()) {
        std::ostringstream os;
        os << "program '" << cfg_.program_path << "':";
        for (const auto& e : parsed.errors) {
            os << " [" << vp::to_string(e.code) << " line " << e.line << "]";
        }
        throw BuildError(os.str());
    }

    // Every bus-touching command must land on a mapped target.
    const reg::AddressMap isp_map = isp::dut_address_map();
    for (const auto& cmd : parsed.program->commands) {
        using Op = vp::ProgCommand::Op;
        if (cmd.op != Op::Write && cmd.op != Op::Read && cmd.op != Op::Expect &&
            cmd.op != Op::Poll) {
            continue;
        }
        const auto hit = router_->route(cmd.addr);
        if (!hit) {
            throw BuildError("program line " + std::to_string(cmd.line) +
                             " references unrouted address");
        }
        if (hit->first == 0 && !isp_map.register_at(hit->second) &&
            !isp_map.memory_containing(hit->second)) {
            throw BuildError("program line " + std::to_string(cmd.line) +
                             " references an unmapped ISP register");
        }
    }

    cpu_ = std::make_unique<vp::CpuModel>("cpu", env_, *reset_, *clock_,
                                          std::move(*parsed.program));
    tlm::bind(cpu_->socket(), router_->target());
}

TestOutcome Testbench::run() {
    outcome_ = env_.run_phases(cfg_.max_time);
    return *outcome_;
}

Report Testbench::make_report(std::string test_name, double wall_ms) const {
    Report report;
    report.test = std::move(test_name);
    report.seed = cfg_.seed;
    report.outcome = outcome_.value_or(TestOutcome::Fail);
    report.frames_compared = scoreboard_->frames_compared();
    report.mismatches = scoreboard_->mismatches();
    report.component_errors = env_.collect_errors();
    if (env_.saw_fatal()) {
        report.component_errors.push_back("fatal: " + env_.fatal_message());
    }
    report.sim_end_time = env_.kernel().now();
    report.wall_ms = wall_ms;
    return report;
}

} // namespace isptb::tb
