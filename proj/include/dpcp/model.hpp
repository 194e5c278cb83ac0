#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpcp/cost.hpp"
#include "dpcp/metrics.hpp"

namespace dpcp {

/// Problem-specific transition identifier (job, task or location index).
using TransitionLabel = int;

template <class State>
struct Transition {
    Cost weight;
    TransitionLabel label;
    State state;
};

/// State-transition model solved by the search drivers.
///
/// `root_cost` is a constant charged before the first transition; the value
/// of a complete solution is root_cost + transition weights + base cost.
template <class M>
concept DpModel = requires(const M& m, const typename M::State& s) {
    typename M::State;
    typename M::Signature;
    requires std::equality_comparable<typename M::State>;
    requires std::equality_comparable<typename M::Signature>;
    { std::hash<typename M::State>{}(s) } -> std::convertible_to<std::size_t>;
    { std::hash<typename M::Signature>{}(m.signature(s)) } -> std::convertible_to<std::size_t>;
    { m.target() } -> std::same_as<typename M::State>;
    { m.is_base(s) } -> std::convertible_to<bool>;
    { m.base_cost(s) } -> std::same_as<Cost>;
    { m.successors(s) } -> std::same_as<std::vector<Transition<typename M::State>>>;
    { m.dominates(s, s) } -> std::convertible_to<bool>;
    { m.dual(s) } -> std::same_as<Cost>;
    { m.root_cost() } -> std::same_as<Cost>;
};

struct SolveLimits {
    std::optional<double> time_limit;           // seconds
    std::optional<std::uint64_t> memory_limit;  // bytes, estimated node storage
    std::optional<std::uint64_t> expansion_cap;

    void validate() const {
        if (time_limit && !(*time_limit > 0.0)) throw std::invalid_argument("time limit must be positive");
        if (memory_limit && *memory_limit == 0) throw std::invalid_argument("memory limit must be positive");
    }
};

enum class SolveStatus { Optimal, Infeasible, TimeLimit, MemoryLimit, ExpansionLimit };

inline std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::TimeLimit: return "TimeLimit";
        case SolveStatus::MemoryLimit: return "MemoryLimit";
        case SolveStatus::ExpansionLimit: return "ExpansionLimit";
    }
    return "Unknown";
}

inline bool is_limit(SolveStatus s) { return s != SolveStatus::Optimal && s != SolveStatus::Infeasible; }

struct Incumbent {
    Cost cost;
    std::vector<TransitionLabel> labels;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    std::optional<Incumbent> incumbent;
    Cost root_dual;
    Cost final_dual;
    RunMetrics metrics;
};

}  // namespace dpcp
