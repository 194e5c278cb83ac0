#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dpcp/cp/propagators.hpp"
#include "dpcp/index_set.hpp"
#include "dpcp/model.hpp"
#include "dpcp/search/propagation.hpp"

/// Resource-constrained project scheduling, minimising makespan. Tasks are
/// placed one at a time at the earliest resource- and precedence-feasible
/// time no earlier than the current time.
namespace dpcp::rcpsp {

struct Task {
    std::int64_t p = 1;
    std::vector<std::int64_t> usage;  // per resource
    friend bool operator==(const Task&, const Task&) = default;
};

struct Instance {
    std::vector<Task> tasks;
    std::vector<std::int64_t> capacities;
    std::vector<std::pair<std::size_t, std::size_t>> precedences;  // (i, j): i finishes before j starts

    std::size_t size() const { return tasks.size(); }
    std::size_t resources() const { return capacities.size(); }
    std::int64_t horizon() const;
    void validate() const;
    friend bool operator==(const Instance&, const Instance&) = default;
};

struct State {
    std::vector<std::int64_t> start;  // -1 while unscheduled
    std::int64_t time = 0;

    bool scheduled(std::size_t i) const { return start[i] >= 0; }
    friend bool operator==(const State&, const State&) = default;
};

class Model {
public:
    using State = rcpsp::State;
    using Signature = IndexSet;

    explicit Model(Instance instance, bool left_shift = true);

    const Instance& instance() const { return instance_; }
    const std::vector<std::size_t>& predecessors(std::size_t i) const { return preds_[i]; }
    std::int64_t horizon() const { return horizon_; }

    State target() const;
    bool is_base(const State& s) const;
    Cost base_cost(const State&) const { return Cost(0); }
    /// Makespan estimate of the target, so that path cost equals makespan.
    Cost root_cost() const { return Cost(makespan(target())); }
    std::vector<Transition<State>> successors(const State& s) const;
    bool dominates(const State& a, const State& b) const;
    Cost dual(const State& s) const;
    Signature signature(const State& s) const;

    /// max{ max over scheduled of finish, max over unscheduled of t + p }.
    std::int64_t makespan(const State& s) const;

    /// Earliest h in [t, H] where `task` fits every resource and all of its
    /// predecessors have finished; nullopt when none exists.
    std::optional<std::int64_t> earliest_time(const State& s, std::size_t task) const;

    /// Remaining-cost forms of the critical-path and energy bounds.
    Cost critical_path_bound(const State& s) const;
    Cost energy_bound(const State& s) const;

private:
    Instance instance_;
    bool left_shift_;
    std::vector<std::vector<std::size_t>> preds_;
    std::vector<std::size_t> topo_;
    std::int64_t horizon_ = 0;
};

/// CP view of a state. Start of task i is variable i, the makespan variable is n.
class Adapter {
public:
    explicit Adapter(const Model& model) : model_(model) {}

    cp::CpModel build(const State& s, search::BuildContext ctx) const;
    bool is_infeasible(const State&, const cp::DomainStore& store) const { return store.infeasible(); }
    Cost dual_cp(const State& s, const cp::DomainStore& store) const;
    bool is_succ_infeasible(TransitionLabel task, const State& s, const cp::DomainStore& store) const;

    /// Earliest-completion envelope bound over the unscheduled tasks.
    Cost ect_bound(const State& s, const cp::DomainStore& store) const;
    /// Latest lower-bounded finish among unscheduled tasks.
    Cost finish_bound(const State& s, const cp::DomainStore& store) const;

    cp::VarId objective_var() const { return model_.instance().size(); }

private:
    const Model& model_;
};

}  // namespace dpcp::rcpsp

template <>
struct std::hash<dpcp::rcpsp::State> {
    std::size_t operator()(const dpcp::rcpsp::State& s) const noexcept {
        std::size_t h = std::hash<std::int64_t>{}(s.time);
        for (auto v : s.start) h = dpcp::hash_combine(h, std::hash<std::int64_t>{}(v));
        return h;
    }
};
