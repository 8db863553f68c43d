#pragma once

#include "isptb/sim/kernel.hpp"
#include "isptb/sim/task.hpp"
#include "isptb/tb/component.hpp"
#include "isptb/tlm/socket.hpp"
#include "isptb/vp/program.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace isptb::vp {

// Period source for bus and stream clocks. Passive: processes own their
// waits; this just defines the tick.
class ClockGen : public tb::Component {
public:
    ClockGen(std::string name, tb::Component& parent, sim::SimTime period = 10);

    sim::SimTime period() const { return period_; }

private:
    sim::SimTime period_;
};

// Asserts reset exactly once at t=0 for `duration` ticks.
class ResetGen : public tb::Component {
public:
    ResetGen(std::string name, tb::Component& parent, sim::SimTime duration = 100);

    bool asserted() const { return asserted_; }
    sim::SimTime duration() const { return duration_; }

    // Completes when reset deasserts (immediately if it already has).
    sim::Task<void> released();

    void run_phase() override;

private:
    sim::SimTime duration_;
    bool asserted_ = true;
    std::unique_ptr<sim::Notification> released_note_;
};

// Address-routing interconnect. Disjoint ranges; payloads are rebased to
// target-local offsets on the way through.
class Router : public tb::Component {
public:
    Router(std::string name, tb::Component& parent);

    tlm::TargetSocket& target() { return target_; }

    // Registers [base, base+size) and returns the downstream initiator to
    // bind. Overlapping ranges are a fatal configuration error.
    tlm::InitiatorSocket& add_range(std::uint64_t base, std::uint64_t size);

    // (range index, target-local offset), or nothing for unmapped addresses.
    std::optional<std::pair<std::size_t, std::uint64_t>> route(std::uint64_t addr) const;

private:
    struct Range {
        std::uint64_t base;
        std::uint64_t size;
        std::unique_ptr<tlm::InitiatorSocket> out;
    };

    tlm::TargetSocket target_;
    std::vector<Range> ranges_;
};

// Word-granular memory model: 4-byte aligned accesses only, uninitialized
// words read as zero.
class MemoryModel : public tb::Component {
public:
    MemoryModel(std::string name, tb::Component& parent, std::uint64_t size_bytes);

    tlm::TargetSocket& target() { return target_; }
    std::uint64_t size() const { return 4ull * words_.size(); }

private:
    tlm::TargetSocket target_;
    std::vector<std::uint32_t> words_;
};

struct CpuResult {
    bool passed = true;
    int failed_line = -1;
    enum class FailureKind { None, Mismatch, Timeout, BusError } kind = FailureKind::None;
};

std::string_view to_string(CpuResult::FailureKind kind);

// Generic processor model: waits for reset release, then executes the
// program one bus transaction per W/R/E and one poll read per cycle for P.
// After END it issues nothing further. Holds an objection until done.
class CpuModel : public tb::Component {
public:
    CpuModel(std::string name, tb::Component& parent, ResetGen& reset, ClockGen& clock,
             TestProgram program);

    tlm::InitiatorSocket& socket() { return socket_; }
    const CpuResult& result() const { return result_; }
    bool done() const { return done_; }

    // Completed bus transactions as (time, address) pairs, for passivity and
    // reset-ordering checks.
    const std::vector<std::pair<sim::SimTime, std::uint64_t>>& bus_trace() const {
        return bus_trace_;
    }

    void run_phase() override;

private:
    sim::Job execute();
    sim::Task<std::pair<std::uint32_t, tlm::Status>> access(tlm::Command command,
                                                            std::uint64_t addr,
                                                            std::uint32_t data);

    tlm::InitiatorSocket socket_;
    ResetGen& reset_;
    ClockGen& clock_;
    TestProgram program_;
    CpuResult result_;
    bool done_ = false;
    std::vector<std::pair<sim::SimTime, std::uint64_t>> bus_trace_;
};

} // namespace isptb::vp
