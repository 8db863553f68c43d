#include "isptb/tlm/socket.hpp"

#include "isptb/fatal.hpp"

namespace isptb::tlm {

void bind(InitiatorSocket& initiator, TargetSocket& target) {
    if (initiator.bound()) {
        throw FatalError("DOUBLE_BIND: initiator socket '" + initiator.name() +
                         "' is already bound");
    }
    if (target.bound()) {
        throw FatalError("DOUBLE_BIND: target socket '" + target.name() + "' is already bound");
    }
    initiator.target_ = &target;
    target.bound_ = true;
}

sim::SimTime InitiatorSocket::b_transport(GenericPayload& payload, sim::SimTime delay) {
    if (!target_) {
        throw FatalError("UNBOUND_SOCKET: transport on unbound initiator '" + name_ + "'");
    }
    if (!target_->handler_) {
        throw FatalError("UNBOUND_SOCKET: target '" + target_->name_ + "' has no handler");
    }
    const sim::SimTime in_delay = delay;
    const std::size_t in_len = payload.data.size();
    target_->handler_(payload, delay);
    if (payload.status == Status::Incomplete) {
        throw FatalError("target '" + target_->name_ + "' left payload status INCOMPLETE");
    }
    if (delay < in_delay) {
        throw FatalError("target '" + target_->name_ + "' decreased the annotated delay");
    }
    if (payload.data.size() != in_len) {
        throw FatalError("target '" + target_->name_ + "' changed the payload data length");
    }
    return delay;
}

} // namespace isptb::tlm
