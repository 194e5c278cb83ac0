#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dpcp::cp {

using Value = std::int64_t;
using VarId = std::size_t;

/// Integer domain: either a closed interval or a sorted finite set.
///
/// Interval domains only move their bounds; removing an interior value is a
/// no-op. Finite sets support arbitrary removal.
class Domain {
public:
    static Domain interval(Value lb, Value ub);
    static Domain finite_set(std::vector<Value> values);

    bool is_interval() const { return interval_; }
    bool empty() const;
    Value lb() const;
    Value ub() const;
    bool contains(Value v) const;
    std::size_t size() const;
    std::vector<Value> values() const;

    // Each returns true when the domain changed.
    bool tighten_lb(Value v);
    bool tighten_ub(Value v);
    bool remove(Value v);

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    bool interval_ = true;
    Value lb_ = 0;
    Value ub_ = -1;
    std::vector<Value> set_;
};

/// Indexed domains plus a sticky infeasibility flag. All mutations shrink.
class DomainStore {
public:
    VarId add(Domain d);
    VarId add_interval(Value lb, Value ub) { return add(Domain::interval(lb, ub)); }

    std::size_t size() const { return domains_.size(); }
    const Domain& operator[](VarId x) const { return domains_[x]; }
    Value lb(VarId x) const { return domains_[x].lb(); }
    Value ub(VarId x) const { return domains_[x].ub(); }

    bool infeasible() const { return infeasible_; }
    void fail() { infeasible_ = true; }

    bool tighten_lb(VarId x, Value v);
    bool tighten_ub(VarId x, Value v);
    bool remove(VarId x, Value v);

    /// Number of effective domain changes so far.
    std::uint64_t revision() const { return revision_; }

    friend bool operator==(const DomainStore&, const DomainStore&) = default;

private:
    bool settle(VarId x, bool changed);

    std::vector<Domain> domains_;
    bool infeasible_ = false;
    std::uint64_t revision_ = 0;
};

}  // namespace dpcp::cp
