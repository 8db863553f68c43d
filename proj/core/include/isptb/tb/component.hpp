#pragma once

#include "isptb/sim/kernel.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace isptb::tb {

enum class Phase { Build, Connect, Run, Extract, Check, Report };

enum class TestOutcome { Pass, Fail, Timeout };

std::string_view to_string(Phase p);
std::string_view to_string(TestOutcome o);

class Env;

// Node in the testbench hierarchy. Dot-joined full names are unique per
// environment. Errors reported here are aggregated by the env and promoted
// to a test FAIL during the check phase.
class Component {
public:
    Component(std::string name, Component& parent);
    virtual ~Component();
    Component(const Component&) = delete;
    Component& operator=(const Component&) = delete;

    const std::string& name() const { return name_; }
    std::string full_name() const;
    Component* parent() const { return parent_; }
    const std::vector<Component*>& children() const { return children_; }

    Env& env() { return *env_; }
    sim::Kernel& kernel();

    void report_error(std::string message);
    const std::vector<std::string>& errors() const { return errors_; }

    void raise_objection();
    void drop_objection();

    virtual void build_phase() {}
    virtual void connect_phase() {}
    // Called at the start of the run phase (t=0); spawn processes here.
    virtual void run_phase() {}
    virtual void extract_phase() {}
    virtual void check_phase() {}
    virtual void report_phase() {}

protected:
    // Root constructor, used by Env only.
    explicit Component(std::string name);

private:
    friend class Env;

    std::string name_;
    Component* parent_ = nullptr;
    Env* env_ = nullptr;
    std::vector<Component*> children_;
    std::vector<std::string> errors_;
};

// Hierarchy root: owns the kernel, the objection count, and the phase
// machinery. The run phase ends `drain_time` after the objection count
// returns to zero, or at `max_time`, whichever comes first.
class Env : public Component {
public:
    explicit Env(std::string name = "env");
    ~Env() override;

    sim::Kernel& kernel() { return kernel_; }
    const sim::Kernel& kernel() const { return kernel_; }

    void set_drain_time(sim::SimTime drain) { drain_time_ = drain; }
    sim::SimTime drain_time() const { return drain_time_; }

    TestOutcome run_phases(std::optional<sim::SimTime> max_time = std::nullopt);

    const std::vector<Phase>& phase_trace() const { return phase_trace_; }
    int objection_count() const { return objections_; }

    // All component errors in hierarchy order, prefixed with full names.
    std::vector<std::string> collect_errors() const;
    bool saw_fatal() const { return fatal_.has_value(); }
    const std::string& fatal_message() const;

private:
    friend class Component;

    void register_component(Component& child);
    void unregister_component(Component& child);
    void objection_raised();
    void objection_dropped();
    void arm_stop_event();

    sim::Kernel kernel_;
    sim::SimTime drain_time_ = 1000;
    int objections_ = 0;
    bool in_run_phase_ = false;
    sim::EventHandle stop_event_;
    std::vector<Phase> phase_trace_;
    std::optional<std::string> fatal_;
    std::vector<std::string> all_names_;
};

} // namespace isptb::tb
