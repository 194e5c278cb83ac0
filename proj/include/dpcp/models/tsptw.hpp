#pragma once

#include <cstdint>
#include <vector>

#include "dpcp/cp/propagators.hpp"
#include "dpcp/index_set.hpp"
#include "dpcp/model.hpp"
#include "dpcp/search/propagation.hpp"

/// Travelling salesperson with time windows, minimising travel time. Location
/// 0 is the depot; waiting before a window opens is free.
namespace dpcp::tsptw {

struct Window {
    std::int64_t open = 0;
    std::int64_t close = 0;
    friend bool operator==(const Window&, const Window&) = default;
};

struct Instance {
    std::size_t n = 0;
    std::vector<Cost> travel;  // row-major n*n, infinity for a missing arc
    std::vector<Window> windows;

    Cost c(std::size_t i, std::size_t j) const { return travel[i * n + j]; }
    void validate() const;
    friend bool operator==(const Instance&, const Instance&) = default;
};

struct State {
    IndexSet unvisited;
    std::size_t location = 0;
    std::int64_t time = 0;

    friend bool operator==(const State&, const State&) = default;
};

struct Signature {
    IndexSet unvisited;
    std::size_t location = 0;

    friend bool operator==(const Signature&, const Signature&) = default;
};

class Model {
public:
    using State = tsptw::State;
    using Signature = tsptw::Signature;

    explicit Model(Instance instance);

    const Instance& instance() const { return instance_; }
    Cost c(std::size_t i, std::size_t j) const { return instance_.c(i, j); }
    /// All-pairs shortest travel time.
    Cost shortest(std::size_t i, std::size_t j) const { return shortest_[i * instance_.n + j]; }
    Cost min_to(std::size_t l) const { return min_to_[l]; }
    Cost min_from(std::size_t l) const { return min_from_[l]; }
    bool has_zero_arc() const { return has_zero_arc_; }

    State target() const;
    bool is_base(const State& s) const { return s.unvisited.empty(); }
    Cost base_cost(const State& s) const { return c(s.location, 0); }
    Cost root_cost() const { return Cost(0); }
    std::vector<Transition<State>> successors(const State& s) const;
    bool dominates(const State& a, const State& b) const { return a.time <= b.time; }
    Cost dual(const State& s) const;
    Signature signature(const State& s) const { return {s.unvisited, s.location}; }

    /// Time at location j when travelling there directly from s.
    std::int64_t arrival(const State& s, std::size_t j) const;

private:
    Instance instance_;
    std::vector<Cost> shortest_;
    std::vector<Cost> min_to_;
    std::vector<Cost> min_from_;
    bool has_zero_arc_ = false;
};

/// CP view of a state. Variable ids: arrival s_i = i, travel time to the next
/// location p_i = n + i, objective o = 2n. Only U and the current location
/// take part in the constraints.
class Adapter {
public:
    explicit Adapter(const Model& model) : model_(model) {}

    cp::CpModel build(const State& s, search::BuildContext ctx) const;
    bool is_infeasible(const State&, const cp::DomainStore& store) const { return store.infeasible(); }
    Cost dual_cp(const State& s, const cp::DomainStore& store) const;
    bool is_succ_infeasible(TransitionLabel j, const State& s, const cp::DomainStore& store) const;

    cp::VarId arrival_var(std::size_t i) const { return i; }
    cp::VarId travel_var(std::size_t i) const { return model_.instance().n + i; }
    cp::VarId objective_var() const { return 2 * model_.instance().n; }

private:
    const Model& model_;
};

}  // namespace dpcp::tsptw

template <>
struct std::hash<dpcp::tsptw::State> {
    std::size_t operator()(const dpcp::tsptw::State& s) const noexcept {
        auto h = dpcp::hash_combine(s.unvisited.hash(), s.location);
        return dpcp::hash_combine(h, std::hash<std::int64_t>{}(s.time));
    }
};

template <>
struct std::hash<dpcp::tsptw::Signature> {
    std::size_t operator()(const dpcp::tsptw::Signature& s) const noexcept {
        return dpcp::hash_combine(s.unvisited.hash(), s.location);
    }
};
