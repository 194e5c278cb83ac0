#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "dpcp/model.hpp"

namespace dpcp {

class InvalidTransition : public std::runtime_error {
public:
    explicit InvalidTransition(std::size_t step)
        : std::runtime_error("transition " + std::to_string(step) + " is not applicable"), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

class NotBase : public std::runtime_error {
public:
    NotBase() : std::runtime_error("replay did not end in a base state") {}
};

class DepthExceeded : public std::runtime_error {
public:
    explicit DepthExceeded(std::size_t cap)
        : std::runtime_error("state space deeper than " + std::to_string(cap) + " transitions") {}
};

/// Replays `labels` from the target state and returns the full solution cost.
template <DpModel M>
Cost evaluate_solution(const M& model, std::span<const TransitionLabel> labels) {
    auto state = model.target();
    Cost total = model.root_cost();
    for (std::size_t step = 0; step < labels.size(); ++step) {
        if (model.is_base(state)) throw InvalidTransition(step);
        auto succ = model.successors(state);
        auto it = std::find_if(succ.begin(), succ.end(), [&](const auto& t) { return t.label == labels[step]; });
        if (it == succ.end()) throw InvalidTransition(step);
        total += it->weight;
        state = std::move(it->state);
    }
    if (!model.is_base(state)) throw NotBase();
    return total + model.base_cost(state);
}

/// Memoized exhaustive evaluation of the Bellman recursion on exact state
/// equality. Keeps every visited state so callers can check bounds on them.
template <DpModel M>
class BruteForce {
public:
    using State = typename M::State;

    BruteForce(const M& model, std::size_t depth_cap) : model_(model), depth_cap_(depth_cap) {}

    Cost value(const State& state) { return visit(state, 0); }

    const std::unordered_map<State, Cost>& visited() const { return memo_; }

private:
    Cost visit(const State& state, std::size_t depth) {
        if (auto it = memo_.find(state); it != memo_.end()) return it->second;
        Cost v = Cost::infinity();
        if (model_.is_base(state)) {
            v = model_.base_cost(state);
        } else {
            if (depth >= depth_cap_) throw DepthExceeded(depth_cap_);
            for (const auto& t : model_.successors(state)) v = min(v, t.weight + visit(t.state, depth + 1));
        }
        memo_.emplace(state, v);
        return v;
    }

    const M& model_;
    std::size_t depth_cap_;
    std::unordered_map<State, Cost> memo_;
};

/// V(state) by exhaustive recursion.
template <DpModel M>
Cost brute_force_value(const M& model, const typename M::State& state, std::size_t depth_cap) {
    BruteForce<M> bf(model, depth_cap);
    return bf.value(state);
}

}  // namespace dpcp
