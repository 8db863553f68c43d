#include "isptb/tb/component.hpp"

#include "isptb/fatal.hpp"

#include <algorithm>
#include <functional>

namespace isptb::tb {

std::string_view to_string(Phase p) {
    switch (p) {
    case Phase::Build: return "BUILD";
    case Phase::Connect: return "CONNECT";
    case Phase::Run: return "RUN";
    case Phase::Extract: return "EXTRACT";
    case Phase::Check: return "CHECK";
    case Phase::Report: return "REPORT";
    }
    return "?";
}

std::string_view to_string(TestOutcome o) {
    switch (o) {
    case TestOutcome::Pass: return "PASS";
    case TestOutcome::Fail: return "FAIL";
    case TestOutcome::Timeout: return "TIMEOUT";
    }
    return "?";
}

Component::Component(std::string name) : name_(std::move(name)) {}

Component::Component(std::string name, Component& parent)
    : name_(std::move(name)), parent_(&parent), env_(parent.env_) {
    parent.children_.push_back(this);
    env_->register_component(*this);
}

Component::~Component() {
    if (parent_) {
        auto& siblings = parent_->children_;
        siblings.erase(std::remove(siblings.begin(), siblings.end(), this), siblings.end());
        env_->unregister_component(*this);
    }
}

std::string Component::full_name() const {
    if (!parent_) return name_;
    return parent_->full_name() + "." + name_;
}

sim::Kernel& Component::kernel() { return env_->kernel(); }

void Component::report_error(std::string message) { errors_.push_back(std::move(message)); }

void Component::raise_objection() { env_->objection_raised(); }

void Component::drop_objection() { env_->objection_dropped(); }

Env::Env(std::string name) : Component(std::move(name)) {
    env_ = this;
    all_names_.push_back(name_);
}

Env::~Env() {
    // Coroutine frames may reference components owned by the caller; tear
    // them down while everything is still alive.
    kernel_.clear();
}

const std::string& Env::fatal_message() const {
    static const std::string empty;
    return fatal_ ? *fatal_ : empty;
}

void Env::register_component(Component& child) {
    const std::string full = child.full_name();
    if (std::find(all_names_.begin(), all_names_.end(), full) != all_names_.end()) {
        throw FatalError("duplicate component name '" + full + "'");
    }
    all_names_.push_back(full);
}

void Env::unregister_component(Component& child) {
    const std::string full = child.full_name();
    all_names_.erase(std::remove(all_names_.begin(), all_names_.end(), full), all_names_.end());
}

void Env::objection_raised() {
    ++objections_;
    if (in_run_phase_) kernel_.cancel(stop_event_);
}

void Env::objection_dropped() {
    if (objections_ == 0) {
        throw FatalError("objection drop without a matching raise");
    }
    --objections_;
    if (objections_ == 0 && in_run_phase_) arm_stop_event();
}

void Env::arm_stop_event() {
    kernel_.cancel(stop_event_);
    stop_event_ = kernel_.schedule(
        drain_time_, [this] { kernel_.request_stop(); }, "end_of_run");
}

std::vector<std::string> Env::collect_errors() const {
    std::vector<std::string> out;
    std::function<void(const Component&)> visit = [&](const Component& c) {
        for (const auto& e : c.errors()) out.push_back(c.full_name() + ": " + e);
        for (const Component* child : c.children()) visit(*child);
    };
    visit(*this);
    return out;
}

TestOutcome Env::run_phases(std::optional<sim::SimTime> max_time) {
    bool timeout = false;

    std::function<void(Component&, void (Component::*)())> visit =
        [&](Component& c, void (Component::*fn)()) {
            (c.*fn)();
            for (Component* child : c.children_) visit(*child, fn);
        };

    auto guarded = [&](Phase phase, auto&& body) {
        if (fatal_) return;
        phase_trace_.push_back(phase);
        try {
            body();
        } catch (const FatalError& e) {
            fatal_ = e.what();
        } catch (const std::exception& e) {
            fatal_ = std::string("unhandled exception: ") + e.what();
        }
    };

    guarded(Phase::Build, [&] { visit(*this, &Component::build_phase); });
    guarded(Phase::Connect, [&] { visit(*this, &Component::connect_phase); });
    guarded(Phase::Run, [&] {
        in_run_phase_ = true;
        visit(*this, &Component::run_phase);
        if (objections_ == 0) arm_stop_event();
        const sim::StopReason reason = kernel_.run(max_time);
        in_run_phase_ = false;
        if (reason == sim::StopReason::Limit && objections_ > 0) {
            timeout = true;
        } else if (reason == sim::StopReason::Exhausted && objections_ > 0) {
            // Deadlock: objections held but nothing left to run. Give the
            // test its full time budget before declaring the timeout.
            timeout = true;
            if (max_time) kernel_.advance_to(*max_time);
            report_error("run phase exhausted with " + std::to_string(objections_) +
                         " objection(s) pending");
        }
    });
    in_run_phase_ = false;
    guarded(Phase::Extract, [&] { visit(*this, &Component::extract_phase); });
    guarded(Phase::Check, [&] { visit(*this, &Component::check_phase); });

    // Report always runs, even after a fatal error.
    phase_trace_.push_back(Phase::Report);
    try {
        visit(*this, &Component::report_phase);
    } catch (const std::exception& e) {
        if (!fatal_) fatal_ = e.what();
    }

    if (timeout) return TestOutcome::Timeout;
    if (fatal_ || !collect_errors().empty()) return TestOutcome::Fail;
    return TestOutcome::Pass;
}

} // namespace isptb::tb
