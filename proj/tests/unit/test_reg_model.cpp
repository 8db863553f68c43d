#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isptb/isp/dut.hpp"
#include "isptb/isp/reg_layout.hpp"
#include "isptb/reg/address_map.hpp"
#include "isptb/reg/reg_file.hpp"
#include "isptb/reg/reg_model.hpp"
#include "isptb/tb/component.hpp"
#include "isptb/uvc/ctrl_bfm.hpp"
#include "isptb/uvc/stream.hpp"
#include "isptb/uvc/stimulus.hpp"

#include <vector>

using namespace isptb;
using reg::Access;
using reg::field_update;
using reg::RegStatus;
using sim::Job;

TEST_CASE("field_update truth cases") {
    CHECK(field_update(Access::W1C, 0b1010, 0b0010) == 0b1000);
    CHECK(field_update(Access::RO, 0x5, 0xF) == 0x5);
    CHECK(field_update(Access::RW, 0x3, 0xAB) == 0xAB);
    CHECK(field_update(Access::WO, 0x3, 0x7) == 0x7);
}

TEST_CASE("field_update output always fits the field width") {
    uvc::SplitMix64 rng(0xF1E1D);
    const Access policies[] = {Access::RO, Access::RW, Access::WO, Access::W1C};
    for (int i = 0; i < 10'000; ++i) {
        const unsigned width = 1 + static_cast<unsigned>(rng.next() % 32);
        const std::uint64_t limit = width >= 32 ? 0x1'0000'0000ull : (1ull << width);
        const auto current = static_cast<std::uint32_t>(rng.next() % limit);
        const auto written = static_cast<std::uint32_t>(rng.next() % limit);
        const Access policy = policies[rng.next() % 4];
        const std::uint32_t out = field_update(policy, current, written);
        REQUIRE(static_cast<std::uint64_t>(out) < limit);
    }
}

namespace {

// Environment slice: control BFM wired straight to the DUT's register target.
struct RegEnv {
    tb::Env env;
    isp::IspStandIn dut{"dut", env};
    uvc::CtrlBfm bfm{"bfm", env};
    reg::RegModel model{isp::dut_address_map(), &bfm};

    RegEnv() {
        tlm::bind(bfm.socket(), dut.ctrl_target());
        model.set_backdoor(dut.backdoor());
        env.set_drain_time(0);
    }

    // Runs `body` as the only process and finishes the sim.
    template <typename Fn>
    void run(Fn&& body) {
        struct Runner : tb::Component {
            std::function<Job()> factory;
            Runner(tb::Component& parent, std::function<Job()> f)
                : Component("runner", parent), factory(std::move(f)) {}
            void run_phase() override { kernel().spawn(full_name(), factory); }
        } runner(env, [this, body = std::forward<Fn>(body)]() -> Job {
            env.raise_objection();
            co_await body();
            env.drop_objection();
        });
        env.run_phases();
    }
};

} // namespace

TEST_CASE("frontdoor write updates the bus and the mirror") {
    RegEnv rig;
    rig.run([&]() -> sim::Task<void> {
        auto st = co_await rig.model.write_frontdoor("GAIN", 0x0180);
        CHECK(st == RegStatus::Ok);
        CHECK(rig.model.mirror("GAIN") == 0x0180);
        CHECK(*rig.dut.regs().peek(isp::offsets::kGain) == 0x0180);

        const auto rd = co_await rig.model.read_frontdoor("GAIN");
        CHECK(rd.status == RegStatus::Ok);
        CHECK(rd.value == 0x0180);
    });
}

TEST_CASE("W1C write clears the mirrored bit") {
    RegEnv rig;
    rig.run([&]() -> sim::Task<void> {
        // frame_done is set by hardware; the bus read observes it.
        rig.model.poke("STATUS", 0x2);
        const auto rd = co_await rig.model.read_frontdoor("STATUS");
        CHECK(rd.value == 0x2);
        CHECK((rig.model.mirror("STATUS") & 0x2) == 0x0); // W1C not tracked on read

        // Predictive W1C mirror update on write: mirror 0x2 -> write 0x2 -> 0x0.
        auto st = co_await rig.model.write_frontdoor("STATUS", 0x2);
        CHECK(st == RegStatus::Ok);
        CHECK((rig.model.mirror("STATUS") & 0x2) == 0x0);
        CHECK((*rig.dut.regs().peek(isp::offsets::kStatus) & 0x2) == 0x0);
    });
}

TEST_CASE("mirror tracks the DUT busy flag on read") {
    RegEnv rig;
    rig.run([&]() -> sim::Task<void> {
        rig.model.poke("STATUS", 0x1); // poke busy behind the bus's back
        const auto rd = co_await rig.model.read_frontdoor("STATUS");
        CHECK((rd.value & 0x1) == 0x1);
        CHECK((rig.model.mirror("STATUS") & 0x1) == 0x1);
    });
}

TEST_CASE("frontdoor STATUS read mid-frame observes the live busy flag") {
    // Full stand-in run: program an identity pipe, stream a frame, and read
    // STATUS over the bus while the frame is in flight.
    tb::Env env;
    env.set_drain_time(100);
    isp::IspStandIn dut("dut", env);
    uvc::CtrlBfm bfm("bfm", env);
    reg::RegModel model(isp::dut_address_map(), &bfm);
    model.set_backdoor(dut.backdoor());
    tb::Sequencer<isptb::Frame> seqr("seqr", env);
    uvc::StreamDriver driver("driver", env, seqr);
    tlm::bind(bfm.socket(), dut.ctrl_target());
    dut.connect_stream_in(driver.beats_out());

    bool saw_busy_frontdoor = false;
    bool mirror_tracked = false;
    struct Host : tb::Component {
        std::function<Job()> factory;
        Host(tb::Component& parent, std::function<Job()> f)
            : Component("host", parent), factory(std::move(f)) {}
        void run_phase() override { kernel().spawn(full_name(), factory); }
    } host(env, [&]() -> Job {
        env.raise_objection();
        co_await model.write_frontdoor("FRAME_SIZE", (16u << 16) | 16u);
        co_await model.write_frontdoor("CTRL", isp::ctrl::kPipeEn);
        uvc::SplitMix64 rng(4);
        seqr.start_sequence(
            tb::Sequence<isptb::Frame>::from_items("stim", {uvc::random_frame(rng, 16, 16)}));
        // 256 beats at 10 ns: poll over the bus until busy shows.
        for (int i = 0; i < 200 && !saw_busy_frontdoor; ++i) {
            const auto rd = co_await model.read_frontdoor("STATUS");
            if (rd.value & 0x1) {
                saw_busy_frontdoor = true;
                mirror_tracked = (model.mirror("STATUS") & 0x1) != 0;
            }
        }
        env.drop_objection();
    });
    env.run_phases();
    CHECK(saw_busy_frontdoor);
    CHECK(mirror_tracked);
}

TEST_CASE("unknown register and backdoor errors") {
    RegEnv rig;
    rig.run([&]() -> sim::Task<void> {
        auto st = co_await rig.model.write_frontdoor("NOPE", 1);
        CHECK(st == RegStatus::UnknownRegister);
        co_return;
    });

    reg::RegModel no_hook(isp::dut_address_map());
    CHECK(no_hook.peek("CTRL").status == RegStatus::NoBackdoor);
    CHECK(no_hook.poke("CTRL", 1) == RegStatus::NoBackdoor);
}

TEST_CASE("poke bypasses access policies and neither side touches mirrors") {
    RegEnv rig;
    // STATUS.busy is RO from the bus; poke sets it anyway.
    CHECK(rig.model.poke("STATUS", 0x1) == RegStatus::Ok);
    CHECK(rig.model.peek("STATUS").value == 0x1);
    CHECK(rig.model.mirror("STATUS") == 0x0);
}

TEST_CASE("poke-then-peek is identity for arbitrary 32-bit values on every register") {
    RegEnv rig;
    uvc::SplitMix64 rng(42);
    for (const auto& r : rig.model.map().registers) {
        for (int i = 0; i < 8; ++i) {
            const auto value = static_cast<std::uint32_t>(rng.next());
            REQUIRE(rig.model.poke(r.name, value) == RegStatus::Ok);
            REQUIRE(rig.model.peek(r.name).value == value);
        }
    }
}

TEST_CASE("poke then frontdoor read returns the poked value (same storage)") {
    RegEnv rig;
    rig.run([&]() -> sim::Task<void> {
        rig.model.poke("BLACK_LEVEL", 0x10);
        const auto rd = co_await rig.model.read_frontdoor("BLACK_LEVEL");
        CHECK(rd.status == RegStatus::Ok);
        CHECK(rd.value == 0x10);
    });
}

TEST_CASE("mirror_check passes on an untouched register and names poked fields") {
    RegEnv rig;
    rig.run([&]() -> sim::Task<void> {
        auto clean = co_await rig.model.mirror_check("GAIN");
        CHECK(clean.pass); // mirror == reset == DUT

        rig.model.poke("GAIN", 0x0200);
        auto dirty = co_await rig.model.mirror_check("GAIN");
        CHECK_FALSE(dirty.pass);
        REQUIRE(dirty.mismatches.size() == 1);
        CHECK(dirty.mismatches[0].field == "gain");
        CHECK(dirty.mismatches[0].expected == 0x0100);
        CHECK(dirty.mismatches[0].actual == 0x0200);
    });
}

TEST_CASE("mirror_check ignores WO fields that differ") {
    // Synthetic map with a write-only field next to an RW one.
    reg::AddressMap map;
    map.name = "wo";
    map.registers.push_back(
        reg::RegisterSpec{"MIXED",
                          0x0,
                          {reg::FieldSpec{"cmd", 0, 8, reg::Access::WO, 0},
                           reg::FieldSpec{"cfg", 8, 8, reg::Access::RW, 0x5}}});

    tb::Env env;
    env.set_drain_time(0);
    reg::RegFile file(map);
    reg::BackdoorHook hook;
    hook.peek = [&](std::uint64_t off) { return file.peek(off); };
    hook.poke = [&](std::uint64_t off, std::uint32_t v) { return file.poke(off, v); };

    // Minimal frontdoor straight into the register file.
    struct DirectPort : reg::FrontdoorPort {
        reg::RegFile& file;
        explicit DirectPort(reg::RegFile& f) : file(f) {}
        sim::Task<tlm::Status> bus_write(std::uint64_t a, std::uint32_t v) override {
            co_return file.bus_write(a, v);
        }
        sim::Task<std::pair<std::uint32_t, tlm::Status>> bus_read(std::uint64_t a) override {
            co_return file.bus_read(a);
        }
    } port(file);

    reg::RegModel model(map, &port);
    model.set_backdoor(hook);

    // Change the WO field behind the mirror's back: ignored by the check.
    file.poke(0x0, (0x5u << 8) | 0xAB);
    bool pass = false;
    std::vector<reg::FieldMismatch> mismatches;
    struct Runner : tb::Component {
        std::function<Job()> factory;
        Runner(tb::Component& parent, std::function<Job()> f)
            : Component("runner", parent), factory(std::move(f)) {}
        void run_phase() override { kernel().spawn(full_name(), factory); }
    } runner(env, [&]() -> Job {
        env.raise_objection();
        auto check = co_await model.mirror_check("MIXED");
        pass = check.pass;
        mismatches = check.mismatches;

        // The RW field still participates.
        file.poke(0x0, 0x77u << 8);
        auto dirty = co_await model.mirror_check("MIXED");
        CHECK_FALSE(dirty.pass);
        REQUIRE(dirty.mismatches.size() == 1);
        CHECK(dirty.mismatches[0].field == "cfg");
        env.drop_objection();
    });
    env.run_phases();
    CHECK(pass);
    CHECK(mismatches.empty());
}

TEST_CASE("frontdoor to an unmapped offset propagates ADDRESS_ERROR, mirror unchanged") {
    // A variant map with a register the DUT does not implement.
    auto map = isp::dut_address_map();
    map.registers.push_back(
        reg::RegisterSpec{"GHOST", 0x200, {reg::FieldSpec{"v", 0, 32, Access::RW, 0}}});

    tb::Env env;
    env.set_drain_time(0);
    isp::IspStandIn dut("dut", env);
    uvc::CtrlBfm bfm("bfm", env);
    reg::RegModel model(map, &bfm);
    tlm::bind(bfm.socket(), dut.ctrl_target());

    struct Runner : tb::Component {
        std::function<Job()> factory;
        Runner(tb::Component& parent, std::function<Job()> f)
            : Component("runner", parent), factory(std::move(f)) {}
        void run_phase() override { kernel().spawn(full_name(), factory); }
    } runner(env, [&]() -> Job {
        env.raise_objection();
        auto st = co_await model.write_frontdoor("GHOST", 0xFFFF);
        CHECK(st == RegStatus::AddressError);
        CHECK(model.mirror("GHOST") == 0x0);
        auto rd = co_await model.read_frontdoor("GHOST");
        CHECK(rd.status == RegStatus::AddressError);
        env.drop_objection();
    });
    env.run_phases();
}

TEST_CASE("random frontdoor traffic on RW registers keeps mirror == peek") {
    RegEnv rig;
    rig.run([&]() -> sim::Task<void> {
        // RW-only registers of the DUT map (STATUS excluded).
        const std::vector<std::string> rw_regs = {
            "CTRL",    "FRAME_SIZE", "BLACK_LEVEL", "GAIN",    "CONV_SHIFT",
            "KERNEL0", "KERNEL1",    "KERNEL2",     "KERNEL3", "KERNEL4",
            "KERNEL5", "KERNEL6",    "KERNEL7",     "KERNEL8"};
        uvc::SplitMix64 rng(0xA5A5);
        for (int i = 0; i < 1000; ++i) {
            const auto& name = rw_regs[rng.next() % rw_regs.size()];
            if (rng.next() % 2 == 0) {
                const auto value = static_cast<std::uint32_t>(rng.next());
                REQUIRE(co_await rig.model.write_frontdoor(name, value) == RegStatus::Ok);
            } else {
                REQUIRE((co_await rig.model.read_frontdoor(name)).status == RegStatus::Ok);
            }
            const auto spec = rig.model.map().find_register(name);
            const std::uint32_t covered = spec->access_mask({Access::RW});
            REQUIRE((rig.model.mirror(name) & covered) ==
                    (rig.model.peek(name).value & covered));
        }
    });
}

TEST_CASE("register file applies policies on bus access") {
    reg::RegFile file(isp::dut_address_map());

    // Reset values: GAIN = 0x0100, KERNEL4 = 1.
    CHECK(file.bus_read(isp::offsets::kGain).first == 0x0100);
    CHECK(file.bus_read(isp::offsets::kKernel0 + 16).first == 0x01);

    // RO busy bit ignores bus writes.
    CHECK(file.bus_write(isp::offsets::kStatus, 0x1) == tlm::Status::Ok);
    CHECK(file.bus_read(isp::offsets::kStatus).first == 0x0);

    // Unmapped and misaligned accesses.
    CHECK(file.bus_write(0x200, 1) == tlm::Status::AddressError);
    CHECK(file.bus_read(0x6).second == tlm::Status::AddressError);

    // Memory words store whole 32-bit values.
    CHECK(file.bus_write(isp::offsets::kGammaLut + 8, 0xDEADBEEF) == tlm::Status::Ok);
    CHECK(file.bus_read(isp::offsets::kGammaLut + 8).first == 0xDEADBEEF);

    // Bits not covered by any field read as zero.
    CHECK(file.bus_write(isp::offsets::kCtrl, 0xFFFF'FFFF) == tlm::Status::Ok);
    CHECK(file.bus_read(isp::offsets::kCtrl).first == 0x1F);
}
