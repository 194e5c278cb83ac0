#pragma once

#include <chrono>
#include <concepts>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpcp/cp/propagators.hpp"
#include "dpcp/model.hpp"

namespace dpcp::search {

enum class PropagationMode { Off, Once, FixPoint };

inline std::string to_string(PropagationMode m) {
    switch (m) {
        case PropagationMode::Off: return "off";
        case PropagationMode::Once: return "once";
        case PropagationMode::FixPoint: return "fixpoint";
    }
    return "unknown";
}

/// Search context handed to the CP model builder.
struct BuildContext {
    Cost g;       // path cost of the state, root cost included
    Cost primal;  // best solution cost so far, infinity if none
};

template <class A, class M>
concept PropagationAdapter = DpModel<M> && requires(const A& a, const typename M::State& s, const cp::DomainStore& d,
                                                    TransitionLabel label, BuildContext ctx) {
    { a.build(s, ctx) } -> std::same_as<cp::CpModel>;
    { a.is_infeasible(s, d) } -> std::convertible_to<bool>;
    { a.dual_cp(s, d) } -> std::same_as<Cost>;
    { a.is_succ_infeasible(label, s, d) } -> std::convertible_to<bool>;
};

/// Placeholder adapter for propagation-free solves.
struct NoAdapter {};

class AdapterFailure : public std::logic_error {
public:
    explicit AdapterFailure(const std::string& what) : std::logic_error("propagation adapter: " + what) {}
};

enum class PruneReason { None, Infeasible, Bound };

template <class State>
struct PropagatedSuccessors {
    PruneReason pruned = PruneReason::None;
    Cost cp_dual;  // DualCP(S, D') of the expanded state
    std::vector<Transition<State>> successors;
    std::vector<Cost> successor_cp_dual;  // DualCP(S_tau, D') per survivor
    std::uint64_t filtered = 0;           // successors rejected by IsSuccInfeasible
    cp::DomainStore store;                // D'
};

/// Successor generation with constraint propagation: build the CP model of
/// `state`, propagate, drop the state when infeasible or when g + DualCP
/// reaches `primal`, otherwise filter the model's successors against D'.
template <DpModel M, PropagationAdapter<M> A>
PropagatedSuccessors<typename M::State> gen_succ_propagation(const M& model, const A& adapter,
                                                            const typename M::State& state, Cost g, Cost primal,
                                                            PropagationMode mode) {
    if (mode == PropagationMode::Off) throw std::invalid_argument("gen_succ_propagation requires propagation");
    auto cp_model = adapter.build(state, BuildContext{g, primal});
    for (const auto& p : cp_model.propagators) {
        auto top = cp::max_var(p);
        if (top && *top >= cp_model.store.size()) {
            throw AdapterFailure("propagator references variable " + std::to_string(*top) + " of " +
                                 std::to_string(cp_model.store.size()));
        }
    }
    if (mode == PropagationMode::Once) {
        cp::propagate_once(cp_model.store, cp_model.propagators);
    } else {
        cp::propagate_fixpoint(cp_model.store, cp_model.propagators);
    }

    PropagatedSuccessors<typename M::State> out;
    out.store = std::move(cp_model.store);
    if (out.store.infeasible() || adapter.is_infeasible(state, out.store)) {
        out.pruned = PruneReason::Infeasible;
        out.cp_dual = Cost::infinity();
        return out;
    }
    out.cp_dual = adapter.dual_cp(state, out.store);
    if (g + out.cp_dual >= primal) {
        out.pruned = PruneReason::Bound;
        return out;
    }
    for (auto& t : model.successors(state)) {
        if (adapter.is_succ_infeasible(t.label, state, out.store)) {
            ++out.filtered;
            continue;
        }
        out.successor_cp_dual.push_back(adapter.dual_cp(t.state, out.store));
        out.successors.push_back(std::move(t));
    }
    return out;
}

}  // namespace dpcp::search
