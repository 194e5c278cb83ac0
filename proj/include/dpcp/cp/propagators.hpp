#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dpcp/cp/domain.hpp"

namespace dpcp::cp {

/// Job duration: a constant, or a variable whose lower bound is used.
class DurationSpec {
public:
    static DurationSpec fixed(Value p) { return DurationSpec(false, p, 0); }
    static DurationSpec of(VarId var) { return DurationSpec(true, 0, var); }

    bool is_variable() const { return variable_; }
    VarId var() const { return var_; }
    Value constant() const { return constant_; }
    Value min(const DomainStore& store) const { return variable_ ? store.lb(var_) : constant_; }

private:
    DurationSpec(bool variable, Value constant, VarId var) : variable_(variable), constant_(constant), var_(var) {}

    bool variable_;
    Value constant_;
    VarId var_;
};

struct DisjunctiveItem {
    VarId start;
    DurationSpec duration;
};

/// No two items overlap.
struct Disjunctive {
    std::vector<DisjunctiveItem> items;
};

struct CumulativeTask {
    VarId start;
    Value duration;
    Value usage;
};

/// Resource usage of running tasks never exceeds `capacity`.
struct Cumulative {
    std::vector<CumulativeTask> tasks;
    Value capacity;
};

/// start(before) + offset <= start(after).
struct PrecedenceLe {
    VarId before;
    Value offset;
    VarId after;
};

/// constant + sum(terms) <= cap. An absent cap is vacuous.
struct SumLe {
    std::vector<VarId> terms;
    Value constant = 0;
    std::optional<Value> cap;
};

using Propagator = std::variant<Disjunctive, Cumulative, PrecedenceLe, SumLe>;

/// A store together with the propagators posted on it.
struct CpModel {
    DomainStore store;
    std::vector<Propagator> propagators;
};

void edge_finding_disjunctive(DomainStore& store, std::span<const DisjunctiveItem> items);
void time_table_cumulative(DomainStore& store, std::span<const CumulativeTask> tasks, Value capacity);
void precedence_le(DomainStore& store, const PrecedenceLe& c);
void sum_le(DomainStore& store, std::span<const VarId> terms, Value constant, std::optional<Value> cap);

/// Runs one propagator once.
void propagate(DomainStore& store, const Propagator& p);

/// Applies every propagator exactly once, in order.
void propagate_once(DomainStore& store, std::span<const Propagator> props);

/// Repeats full passes until nothing changes or the store is infeasible.
void propagate_fixpoint(DomainStore& store, std::span<const Propagator> props);

/// Largest variable id referenced by `p`, if any.
std::optional<VarId> max_var(const Propagator& p);

struct EnvelopeTask {
    Value lb_start;
    Value duration;
    Value usage;
};

/// max over non-empty sets O of ceil((C * min lb + sum u*p) / C); 0 when empty.
Value ect_envelope(std::span<const EnvelopeTask> tasks, Value capacity);

}  // namespace dpcp::cp
