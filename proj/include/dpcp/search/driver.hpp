#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dpcp/bench/gap.hpp"
#include "dpcp/search/propagation.hpp"
#include "dpcp/search/registry.hpp"

namespace dpcp::search::detail {

using Clock = std::chrono::steady_clock;

template <class State>
struct Node {
    State state;
    Cost g;
    Cost h;
    Cost f;
    std::optional<NodeId> parent;
    TransitionLabel label = -1;
    bool dead = false;
};

// Rough per-node storage charge used for the memory limit.
template <class State>
constexpr std::uint64_t node_bytes() {
    return 2 * (sizeof(Node<State>) + 64);
}

struct Expansion {
    bool pruned = false;
};

/// State shared by the A* and CABS drivers: limits, metrics, incumbent and
/// the successor generator (plain or propagated).
template <DpModel M, class A>
class Driver {
public:
    using State = typename M::State;

    Driver(const M& model, const A* adapter, const SolveLimits& limits, PropagationMode mode)
        : model_(model), adapter_(adapter), limits_(limits), mode_(mode), started_(Clock::now()) {
        limits.validate();
        if (mode != PropagationMode::Off && adapter == nullptr) {
            throw std::invalid_argument("propagation requested without an adapter");
        }
    }

    const M& model() const { return model_; }
    RunMetrics& metrics() { return result_.metrics; }
    Cost primal() const { return result_.incumbent ? result_.incumbent->cost : Cost::infinity(); }

    double elapsed() const { return std::chrono::duration<double>(Clock::now() - started_).count(); }

    /// Limit hit before the next expansion, if any.
    std::optional<SolveStatus> limit_reached(std::uint64_t stored_nodes) const {
        if (limits_.expansion_cap && result_.metrics.expansions >= *limits_.expansion_cap) {
            return SolveStatus::ExpansionLimit;
        }
        if (limits_.time_limit && elapsed() >= *limits_.time_limit) return SolveStatus::TimeLimit;
        if (limits_.memory_limit && stored_nodes * node_bytes<State>() > *limits_.memory_limit) {
            return SolveStatus::MemoryLimit;
        }
        return std::nullopt;
    }

    bool cap_is_zero() const { return limits_.expansion_cap && *limits_.expansion_cap == 0; }

    struct Generated {
        PruneReason pruned = PruneReason::None;
        Cost cp_dual;
        std::vector<Transition<State>> successors;
        std::vector<Cost> successor_cp_dual;
    };

    Generated generate(const State& state, Cost g) {
        Generated out;
        if (mode_ == PropagationMode::Off) {
            out.successors = model_.successors(state);
            return out;
        }
        if constexpr (PropagationAdapter<A, M>) {
            const auto t0 = Clock::now();
            auto p = gen_succ_propagation(model_, *adapter_, state, g, primal(), mode_);
            auto& m = result_.metrics;
            m.propagation_time += std::chrono::duration<double>(Clock::now() - t0).count();
            ++m.propagation_calls;
            m.pruned_by_cp += p.filtered + (p.pruned != PruneReason::None ? 1 : 0);
            out.pruned = p.pruned;
            out.cp_dual = p.cp_dual;
            out.successors = std::move(p.successors);
            out.successor_cp_dual = std::move(p.successor_cp_dual);
        } else {
            throw std::logic_error("adapter type does not satisfy PropagationAdapter");
        }
        return out;
    }

    /// h of a freshly generated state: exact for base states, otherwise the
    /// larger of the model dual and the CP dual under the parent's domains.
    Cost heuristic(const State& s, std::optional<Cost> cp_dual) const {
        if (model_.is_base(s)) return model_.base_cost(s);
        Cost h = model_.dual(s);
        if (cp_dual) h = max(h, *cp_dual);
        return h;
    }

    void improve(Cost cost, std::vector<TransitionLabel> labels) {
        result_.incumbent = Incumbent{cost, std::move(labels)};
        result_.metrics.incumbent_trace.push_back({elapsed(), cost});
    }

    void raise_dual(Cost bound) {
        bound = min(bound, primal());
        if (bound.is_infinite() || (dual_ && bound <= *dual_)) return;
        dual_ = bound;
        result_.metrics.dual_trace.push_back({elapsed(), bound});
    }

    void set_root_dual(Cost h) {
        result_.root_dual = h;
        raise_dual(h);
    }

    SolveResult finish(SolveStatus status) {
        result_.status = status;
        auto& m = result_.metrics;
        m.wall_time = elapsed();
        if (status == SolveStatus::Optimal) {
            raise_dual(primal());
            result_.final_dual = primal();
            m.final_gap = 0.0;
        } else if (status == SolveStatus::Infeasible) {
            result_.incumbent.reset();
            result_.final_dual = Cost::infinity();
            m.final_gap = 0.0;
        } else {
            result_.final_dual = dual_.value_or(Cost(0));
            m.final_gap = result_.incumbent ? bench::optimality_gap(primal(), result_.final_dual) : 1.0;
        }
        return std::move(result_);
    }

private:
    const M& model_;
    const A* adapter_;
    SolveLimits limits_;
    PropagationMode mode_;
    Clock::time_point started_;
    SolveResult result_;
    std::optional<Cost> dual_;
};

/// Labels on the path from the root to `id`.
template <class State>
std::vector<TransitionLabel> path_to(const std::vector<Node<State>>& arena, NodeId id) {
    std::vector<TransitionLabel> out;
    for (std::optional<NodeId> at = id; at && arena[*at].parent; at = arena[*at].parent) {
        out.push_back(arena[*at].label);
    }
    return {out.rbegin(), out.rend()};
}

}  // namespace dpcp::search::detail
