#pragma once

#include "isptb/sim/kernel.hpp"
#include "isptb/tlm/payload.hpp"

#include <functional>
#include <string>

namespace isptb::tlm {

class InitiatorSocket;

class TargetSocket {
public:
    // Handler runs synchronously at the initiator's current time. It must set
    // a final status and may only increase the annotated delay.
    using Handler = std::function<void(GenericPayload&, sim::SimTime&)>;

    explicit TargetSocket(std::string name = "target") : name_(std::move(name)) {}
    TargetSocket(const TargetSocket&) = delete;
    TargetSocket& operator=(const TargetSocket&) = delete;

    void set_handler(Handler h) { handler_ = std::move(h); }
    bool bound() const { return bound_; }
    const std::string& name() const { return name_; }

private:
    friend class InitiatorSocket;
    friend void bind(InitiatorSocket&, TargetSocket&);

    std::string name_;
    Handler handler_;
    bool bound_ = false;
};

class InitiatorSocket {
public:
    explicit InitiatorSocket(std::string name = "initiator") : name_(std::move(name)) {}
    InitiatorSocket(const InitiatorSocket&) = delete;
    InitiatorSocket& operator=(const InitiatorSocket&) = delete;

    bool bound() const { return target_ != nullptr; }
    const std::string& name() const { return name_; }

    // Blocking transport: runs the bound target's handler in place and
    // returns the annotated delay (>= the delay passed in).
    sim::SimTime b_transport(GenericPayload& payload, sim::SimTime delay);

private:
    friend void bind(InitiatorSocket&, TargetSocket&);

    std::string name_;
    TargetSocket* target_ = nullptr;
};

// One-to-one socket binding; rebinding either side is a fatal DOUBLE_BIND.
void bind(InitiatorSocket& initiator, TargetSocket& target);

} // namespace isptb::tlm
