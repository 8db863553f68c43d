#include "isptb/uvc/ctrl_bfm.hpp"

namespace isptb::uvc {

CtrlBfm::CtrlBfm(std::string name, tb::Component& parent, sim::SimTime clock_period)
    : Component(std::move(name), parent), socket_(full_name() + ".socket"),
      period_(clock_period) {}

void CtrlBfm::release() {
    if (!waiters_.empty()) {
        // Hand the grant straight to the next waiter; busy_ stays set so a
        // late caller cannot barge in between.
        auto h = waiters_.front();
        waiters_.pop_front();
        kernel().schedule(0, [h] { h.resume(); });
    } else {
        busy_ = false;
    }
}

sim::Task<BusResult> CtrlBfm::access(tlm::Command command, std::uint64_t address,
                                     std::uint32_t data) {
    co_await acquire();
    const sim::SimTime start = kernel().now();

    tlm::GenericPayload payload = command == tlm::Command::Write
                                      ? tlm::GenericPayload::write32(address, data)
                                      : tlm::GenericPayload::read32(address);
    const sim::SimTime annotated = socket_.b_transport(payload, 0);
    co_await kernel().wait(period_ + annotated);

    trace_.emplace_back(start, kernel().now());
    release();
    co_return BusResult{payload.value32(), payload.status};
}

sim::Task<BusResult> CtrlBfm::write(std::uint64_t address, std::uint32_t data) {
    co_return co_await access(tlm::Command::Write, address, data);
}

sim::Task<BusResult> CtrlBfm::read(std::uint64_t address) {
    co_return co_await access(tlm::Command::Read, address, 0);
}

sim::Task<tlm::Status> CtrlBfm::bus_write(std::uint64_t address, std::uint32_t value) {
    const BusResult r = co_await write(address, value);
    co_return r.status;
}

sim::Task<std::pair<std::uint32_t, tlm::Status>> CtrlBfm::bus_read(std::uint64_t address) {
    const BusResult r = co_await read(address);
    co_return std::make_pair(r.data, r.status);
}

} // namespace isptb::uvc
