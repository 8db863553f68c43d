#include "isptb/vp/platform.hpp"

#include "isptb/fatal.hpp"

namespace isptb::vp {

ClockGen::ClockGen(std::string name, tb::Component& parent, sim::SimTime period)
    : Component(std::move(name), parent), period_(period) {
    if (period == 0) throw FatalError("clock period must be positive");
}

ResetGen::ResetGen(std::string name, tb::Component& parent, sim::SimTime duration)
    : Component(std::move(name), parent), duration_(duration) {
    released_note_ = std::make_unique<sim::Notification>(kernel());
}

void ResetGen::run_phase() {
    asserted_ = true;
    kernel().schedule(
        duration_,
        [this] {
            asserted_ = false;
            released_note_->notify();
        },
        full_name() + ".deassert");
}

sim::Task<void> ResetGen::released() {
    if (asserted_) co_await released_note_->wait();
}

Router::Router(std::string name, tb::Component& parent)
    : Component(std::move(name), parent), target_(full_name() + ".target") {
    target_.set_handler([this](tlm::GenericPayload& payload, sim::SimTime& delay) {
        const auto hit = route(payload.address);
        if (!hit) {
            payload.status = tlm::Status::AddressError;
            return;
        }
        const std::uint64_t original = payload.address;
        payload.address = hit->second;
        delay = ranges_[hit->first].out->b_transport(payload, delay);
        payload.address = original;
    });
}

tlm::InitiatorSocket& Router::add_range(std::uint64_t base, std::uint64_t size) {
    if (size == 0) throw FatalError("router: empty range");
    for (const auto& r : ranges_) {
        const bool disjoint = base + size <= r.base || r.base + r.size <= base;
        if (!disjoint) throw FatalError("router: overlapping ranges");
    }
    Range range{base, size,
                std::make_unique<tlm::InitiatorSocket>(full_name() + ".out" +
                                                       std::to_string(ranges_.size()))};
    ranges_.push_back(std::move(range));
    return *ranges_.back().out;
}

std::optional<std::pair<std::size_t, std::uint64_t>> Router::route(std::uint64_t addr) const {
    for (std::size_t i = 0; i < ranges_.size(); ++i) {
        if (addr >= ranges_[i].base && addr < ranges_[i].base + ranges_[i].size) {
            return std::make_pair(i, addr - ranges_[i].base);
        }
    }
    return std::nullopt;
}

MemoryModel::MemoryModel(std::string name, tb::Component& parent, std::uint64_t size_bytes)
    : Component(std::move(name), parent), target_(full_name() + ".target"),
      words_(size_bytes / 4, 0) {
    target_.set_handler([this](tlm::GenericPayload& payload, sim::SimTime&) {
        if (payload.address % 4 != 0 || payload.data.size() != 4) {
            payload.status = tlm::Status::GenericError;
            return;
        }
        const std::uint64_t word = payload.address / 4;
        if (word >= words_.size()) {
            payload.status = tlm::Status::AddressError;
            return;
        }
        if (payload.command == tlm::Command::Write) {
            words_[word] = payload.value32();
        } else {
            payload.set_value32(words_[word]);
        }
        payload.status = tlm::Status::Ok;
    });
}

std::string_view to_string(CpuResult::FailureKind kind) {
    switch (kind) {
    case CpuResult::FailureKind::None: return "NONE";
    case CpuResult::FailureKind::Mismatch: return "MISMATCH";
    case CpuResult::FailureKind::Timeout: return "TIMEOUT";
    case CpuResult::FailureKind::BusError: return "BUS_ERROR";
    }
    return "?";
}

CpuModel::CpuModel(std::string name, tb::Component& parent, ResetGen& reset, ClockGen& clock,
                   TestProgram program)
    : Component(std::move(name), parent), socket_(full_name() + ".socket"), reset_(reset),
      clock_(clock), program_(std::move(program)) {}

void CpuModel::run_phase() {
    kernel().spawn(full_name(), [this] { return execute(); });
}

sim::Task<std::pair<std::uint32_t, tlm::Status>> CpuModel::access(tlm::Command command,
                                                                  std::uint64_t addr,
                                                                  std::uint32_t data) {
    tlm::GenericPayload payload = command == tlm::Command::Write
                                      ? tlm::GenericPayload::write32(addr, data)
                                      : tlm::GenericPayload::read32(addr);
    bus_trace_.emplace_back(kernel().now(), addr);
    const sim::SimTime annotated = socket_.b_transport(payload, 0);
    co_await kernel().wait(clock_.period() + annotated);
    co_return std::make_pair(payload.value32(), payload.status);
}

sim::Job CpuModel::execute() {
    raise_objection();
    co_await reset_.released();

    auto fail = [this](int line, CpuResult::FailureKind kind) {
        result_.passed = false;
        result_.failed_line = line;
        result_.kind = kind;
        report_error("program failed at line " + std::to_string(line) + ": " +
                     std::string(to_string(kind)));
    };

    for (const auto& cmd : program_.commands) {
        if (cmd.op == ProgCommand::Op::End) break;

        if (cmd.op == ProgCommand::Op::Delay) {
            co_await kernel().wait(clock_.period() * cmd.cycles);
            continue;
        }
        if (cmd.op == ProgCommand::Op::Write) {
            const auto [value, st] = co_await access(tlm::Command::Write, cmd.addr, cmd.data);
            (void)value;
            if (st != tlm::Status::Ok) {
                fail(cmd.line, CpuResult::FailureKind::BusError);
                break;
            }
            continue;
        }
        if (cmd.op == ProgCommand::Op::Read || cmd.op == ProgCommand::Op::Expect) {
            const auto [value, st] = co_await access(tlm::Command::Read, cmd.addr, 0);
            if (st != tlm::Status::Ok) {
                fail(cmd.line, CpuResult::FailureKind::BusError);
                break;
            }
            if (cmd.op == ProgCommand::Op::Expect && (value & cmd.mask) != cmd.expect) {
                fail(cmd.line, CpuResult::FailureKind::Mismatch);
                break;
            }
            continue;
        }
        // Poll: one read per cycle until match or the cycle budget runs out.
        bool matched = false;
        bool errored = false;
        for (std::uint64_t n = 0; n < cmd.cycles; ++n) {
            const auto [value, st] = co_await access(tlm::Command::Read, cmd.addr, 0);
            if (st != tlm::Status::Ok) {
                fail(cmd.line, CpuResult::FailureKind::BusError);
                errored = true;
                break;
            }
            if ((value & cmd.mask) == cmd.expect) {
                matched = true;
                break;
            }
        }
        if (errored) break;
        if (!matched) {
            fail(cmd.line, CpuResult::FailureKind::Timeout);
            break;
        }
    }

    done_ = true; // passive from here on
    drop_objection();
}

} // namespace isptb::vp
