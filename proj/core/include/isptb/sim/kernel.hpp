#pragma once

#include "isptb/sim/task.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

namespace isptb::sim {

// Simulated time in integer nanosecond ticks.
using SimTime = std::uint64_t;

enum class StopReason {
    Exhausted, // event queue ran dry; now() is the last fired time
    Limit,     // next event lies beyond the limit; now() == limit, event stays queued
    Stopped,   // request_stop() was called from an event action
};

class Kernel;

namespace detail {

enum class EventState { Pending, Fired, Cancelled };

struct EventRecord {
    SimTime time = 0;
    std::uint64_t seq = 0;
    std::function<void()> action;
    std::string label;
    EventState state = EventState::Pending;
};

struct EventRecordLater {
    bool operator()(const std::shared_ptr<EventRecord>& a,
                    const std::shared_ptr<EventRecord>& b) const {
        if (a->time != b->time) return a->time > b->time;
        return a->seq > b->seq;
    }
};

} // namespace detail

class EventHandle {
public:
    EventHandle() = default;
    bool valid() const { return !record_.expired(); }

private:
    friend class Kernel;
    explicit EventHandle(std::weak_ptr<detail::EventRecord> r) : record_(std::move(r)) {}
    std::weak_ptr<detail::EventRecord> record_;
};

// One-shot resumable wakeup: processes suspend on wait() and are resumed,
// in suspension order, at the timestamp of the notify() call.
class Notification {
public:
    explicit Notification(Kernel& kernel) : kernel_(&kernel) {}
    Notification(const Notification&) = delete;
    Notification& operator=(const Notification&) = delete;

    void notify();

    auto wait() {
        struct Awaiter {
            Notification& note;
            bool await_ready() const noexcept { return false; }
            void await_suspend(std::coroutine_handle<> h) { note.waiters_.push_back(h); }
            void await_resume() const noexcept {}
        };
        return Awaiter{*this};
    }

    std::size_t waiter_count() const { return waiters_.size(); }

private:
    Kernel* kernel_;
    std::vector<std::coroutine_handle<>> waiters_;
};

class ProcessHandle {
public:
    ProcessHandle() = default;
    const std::string& name() const;
    bool done() const;

private:
    friend class Kernel;
    struct Process;
    explicit ProcessHandle(Process* p) : process_(p) {}
    Process* process_ = nullptr;
};

// Deterministic single-threaded discrete-event kernel. Events fire in strict
// (fire_time, insertion_seq) order; equal-time events run FIFO. All processes
// execute cooperatively on the caller's thread.
class Kernel {
public:
    using TraceSink = std::function<void(SimTime, std::uint64_t, std::string_view)>;

    Kernel();
    Kernel(const Kernel&) = delete;
    Kernel& operator=(const Kernel&) = delete;
    ~Kernel();

    SimTime now() const { return now_; }

    // Runs `action` at now()+delay. Delay 0 is legal: the action runs after
    // the current one completes, at the same timestamp. An empty label
    // inherits the label of the currently firing event.
    EventHandle schedule(SimTime delay, std::function<void()> action, std::string label = {});

    // True if the event was still pending and is now removed.
    bool cancel(const EventHandle& handle);

    StopReason run(std::optional<SimTime> limit = std::nullopt);

    // Makes the current run() return Stopped once the active action finishes.
    void request_stop() { stop_requested_ = true; }

    // Jumps idle time forward (no events fire). Time never decreases.
    void advance_to(SimTime t) {
        if (t > now_) now_ = t;
    }

    // Starts a detached process at the current timestamp. The factory is kept
    // alive for the lifetime of the coroutine frame, so capturing lambdas are
    // safe to pass.
    ProcessHandle spawn(std::string name, std::function<Job()> factory);

    // Suspends the awaiting process for `delay` ticks. wait(0) yields behind
    // already-scheduled same-time events.
    auto wait(SimTime delay) {
        struct Awaiter {
            Kernel& kernel;
            SimTime delay;
            bool await_ready() const noexcept { return false; }
            void await_suspend(std::coroutine_handle<> h) {
                kernel.schedule(delay, [h] { h.resume(); });
            }
            void await_resume() const noexcept {}
        };
        return Awaiter{*this, delay};
    }

    void set_trace_sink(TraceSink sink) { trace_ = std::move(sink); }

    std::size_t pending_events() const { return queue_.size(); }

    // Drops all pending events and destroys every process frame. Used for
    // explicit teardown when components must outlive their coroutines.
    void clear();

private:
    friend class Notification;

    void resume_waiters(std::vector<std::coroutine_handle<>> waiters);

    SimTime now_ = 0;
    std::uint64_t next_seq_ = 0;
    bool stop_requested_ = false;
    bool running_ = false;
    std::string current_label_;
    TraceSink trace_;

    std::vector<std::unique_ptr<ProcessHandle::Process>> processes_;
    // Declared after processes_ so pending actions are dropped before
    // coroutine frames are destroyed.
    std::priority_queue<std::shared_ptr<detail::EventRecord>,
                        std::vector<std::shared_ptr<detail::EventRecord>>,
                        detail::EventRecordLater>
        queue_;
};

} // namespace isptb::sim
