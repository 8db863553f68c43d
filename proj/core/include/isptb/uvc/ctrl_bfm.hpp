#pragma once

#include "isptb/reg/reg_model.hpp"
#include "isptb/sim/kernel.hpp"
#include "isptb/sim/task.hpp"
#include "isptb/tb/component.hpp"
#include "isptb/tlm/socket.hpp"

#include <deque>

namespace isptb::uvc {

struct BusResult {
    std::uint32_t data = 0;
    tlm::Status status = tlm::Status::Incomplete;
};

// Control-bus initiator BFM. Each access occupies one bus clock cycle plus
// any target-annotated latency; accesses from one BFM are strictly
// serialized in call order, whichever processes issue them.
class CtrlBfm : public tb::Component, public reg::FrontdoorPort {
public:
    CtrlBfm(std::string name, tb::Component& parent, sim::SimTime clock_period = 10);

    tlm::InitiatorSocket& socket() { return socket_; }
    sim::SimTime clock_period() const { return period_; }

    sim::Task<BusResult> write(std::uint64_t address, std::uint32_t data);
    sim::Task<BusResult> read(std::uint64_t address);

    // reg::FrontdoorPort
    sim::Task<tlm::Status> bus_write(std::uint64_t address, std::uint32_t value) override;
    sim::Task<std::pair<std::uint32_t, tlm::Status>> bus_read(std::uint64_t address) override;

    // (start, end) simulated-time occupation of every completed access.
    const std::vector<std::pair<sim::SimTime, sim::SimTime>>& occupation_trace() const {
        return trace_;
    }

private:
    sim::Task<BusResult> access(tlm::Command command, std::uint64_t address, std::uint32_t data);

    // FIFO bus grant: ownership passes directly to the first queued waiter.
    auto acquire() {
        struct Awaiter {
            CtrlBfm& bfm;
            bool await_ready() {
                if (!bfm.busy_) {
                    bfm.busy_ = true;
                    return true;
                }
                return false;
            }
            void await_suspend(std::coroutine_handle<> h) { bfm.waiters_.push_back(h); }
            void await_resume() const noexcept {}
        };
        return Awaiter{*this};
    }
    void release();

    tlm::InitiatorSocket socket_;
    sim::SimTime period_;
    bool busy_ = false;
    std::deque<std::coroutine_handle<>> waiters_;
    std::vector<std::pair<sim::SimTime, sim::SimTime>> trace_;
};

} // namespace isptb::uvc
