#include "isptb/sim/kernel.hpp"

#include "isptb/fatal.hpp"

namespace isptb::sim {

struct ProcessHandle::Process {
    std::string name;
    std::function<Job()> factory; // outlives the frame; holds lambda captures
    Job job;
};

const std::string& ProcessHandle::name() const { return process_->name; }

bool ProcessHandle::done() const { return process_ == nullptr || process_->job.done(); }

void Notification::notify() {
    kernel_->resume_waiters(std::move(waiters_));
    waiters_.clear();
}

void Kernel::resume_waiters(std::vector<std::coroutine_handle<>> waiters) {
    // Waiters registered after this point belong to the next notify().
    for (auto h : waiters) {
        schedule(0, [h] { h.resume(); });
    }
}

Kernel::Kernel() = default;

Kernel::~Kernel() = default;

EventHandle Kernel::schedule(SimTime delay, std::function<void()> action, std::string label) {
    auto rec = std::make_shared<detail::EventRecord>();
    rec->time = now_ + delay;
    rec->seq = next_seq_++;
    rec->action = std::move(action);
    rec->label = label.empty() ? current_label_ : std::move(label);
    queue_.push(rec);
    return EventHandle{rec};
}

bool Kernel::cancel(const EventHandle& handle) {
    auto rec = handle.record_.lock();
    if (!rec || rec->state != detail::EventState::Pending) return false;
    rec->state = detail::EventState::Cancelled;
    rec->action = nullptr;
    return true;
}

StopReason Kernel::run(std::optional<SimTime> limit) {
    if (running_) throw FatalError("kernel: run() is not re-entrant");
    running_ = true;
    stop_requested_ = false;

    StopReason reason = StopReason::Exhausted;
    while (!queue_.empty()) {
        auto rec = queue_.top();
        if (rec->state == detail::EventState::Cancelled) {
            queue_.pop();
            continue;
        }
        if (limit && rec->time > *limit) {
            if (*limit > now_) now_ = *limit;
            reason = StopReason::Limit;
            break;
        }
        queue_.pop();
        now_ = rec->time;
        rec->state = detail::EventState::Fired;
        current_label_ = rec->label;
        if (trace_) trace_(rec->time, rec->seq, rec->label);

        auto action = std::move(rec->action);
        try {
            action();
        } catch (...) {
            current_label_.clear();
            running_ = false;
            throw;
        }
        current_label_.clear();

        if (stop_requested_) {
            reason = StopReason::Stopped;
            break;
        }
    }
    stop_requested_ = false;
    running_ = false;
    return reason;
}

ProcessHandle Kernel::spawn(std::string name, std::function<Job()> factory) {
    auto proc = std::make_unique<ProcessHandle::Process>();
    proc->name = std::move(name);
    proc->factory = std::move(factory);
    proc->job = proc->factory();
    ProcessHandle handle{proc.get()};
    schedule(
        0, [h = proc->job.handle()] { h.resume(); }, proc->name);
    processes_.push_back(std::move(proc));
    return handle;
}

void Kernel::clear() {
    while (!queue_.empty()) queue_.pop();
    processes_.clear();
}

} // namespace isptb::sim
