#pragma once

#include "isptb/sim/kernel.hpp"
#include "isptb/sim/task.hpp"
#include "isptb/tb/component.hpp"

#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace isptb::tb {

// A sequence is a named generator; it completes when the generator is
// exhausted (returns nullopt).
template <typename Item>
struct Sequence {
    std::string name;
    std::function<std::optional<Item>()> next;

    static Sequence from_items(std::string name, std::vector<Item> items) {
        auto state = std::make_shared<std::pair<std::vector<Item>, std::size_t>>(
            std::move(items), 0);
        return Sequence{std::move(name), [state]() -> std::optional<Item> {
                            if (state->second >= state->first.size()) return std::nullopt;
                            return state->first[state->second++];
                        }};
    }
};

class SequenceHandle {
public:
    explicit SequenceHandle(sim::Kernel& kernel) : done_(kernel) {}

    bool complete() const { return complete_; }
    sim::Notification& done() { return done_; }

private:
    template <typename Item>
    friend class Sequencer;

    bool complete_ = false;
    sim::Notification done_;
};

// Arbitrates sequences onto a single driver. Sequences started while another
// is active queue FIFO; an objection is held per sequence from start until
// its generator is exhausted.
template <typename Item>
class Sequencer : public Component {
public:
    Sequencer(std::string name, Component& parent)
        : Component(std::move(name), parent), item_ready_(kernel()) {}

    std::shared_ptr<SequenceHandle> start_sequence(Sequence<Item> seq) {
        auto handle = std::make_shared<SequenceHandle>(kernel());
        raise_objection();
        queue_.push_back(Active{std::move(seq), handle});
        item_ready_.notify();
        return handle;
    }

    // Driver pull; suspends until an item is available. Items of one sequence
    // are delivered in generation order, and all items of an earlier sequence
    // precede those of a later one.
    sim::Task<Item> next_item() {
        for (;;) {
            if (auto item = pop_item()) co_return std::move(*item);
            co_await item_ready_.wait();
        }
    }

    bool idle() const { return queue_.empty(); }

private:
    struct Active {
        Sequence<Item> seq;
        std::shared_ptr<SequenceHandle> handle;
    };

    std::optional<Item> pop_item() {
        while (!queue_.empty()) {
            Active& front = queue_.front();
            if (auto item = front.seq.next()) return item;
            front.handle->complete_ = true;
            front.handle->done().notify();
            queue_.pop_front();
            drop_objection();
        }
        return std::nullopt;
    }

    std::deque<Active> queue_;
    sim::Notification item_ready_;
};

} // namespace isptb::tb
