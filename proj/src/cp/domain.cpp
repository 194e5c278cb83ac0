#include "dpcp/cp/domain.hpp"

#include <algorithm>
#include <stdexcept>

namespace dpcp::cp {

Domain Domain::interval(Value lb, Value ub) {
    Domain d;
    d.interval_ = true;
    d.lb_ = lb;
    d.ub_ = ub;
    return d;
}

Domain Domain::finite_set(std::vector<Value> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    Domain d;
    d.interval_ = false;
    d.set_ = std::move(values);
    return d;
}

bool Domain::empty() const { return interval_ ? lb_ > ub_ : set_.empty(); }

Value Domain::lb() const {
    if (empty()) throw std::logic_error("lb of empty domain");
    return interval_ ? lb_ : set_.front();
}

Value Domain::ub() const {
    if (empty()) throw std::logic_error("ub of empty domain");
    return interval_ ? ub_ : set_.back();
}

bool Domain::contains(Value v) const {
    if (interval_) return lb_ <= v && v <= ub_;
    return std::binary_search(set_.begin(), set_.end(), v);
}

std::size_t Domain::size() const {
    if (interval_) return empty() ? 0 : static_cast<std::size_t>(ub_ - lb_ + 1);
    return set_.size();
}

std::vector<Value> Domain::values() const {
    if (!interval_) return set_;
    std::vector<Value> out;
    for (Value v = lb_; v <= ub_; ++v) out.push_back(v);
    return out;
}

bool Domain::tighten_lb(Value v) {
    if (interval_) {
        if (v <= lb_) return false;
        lb_ = v;
        return true;
    }
    auto it = std::lower_bound(set_.begin(), set_.end(), v);
    if (it == set_.begin()) return false;
    set_.erase(set_.begin(), it);
    return true;
}

bool Domain::tighten_ub(Value v) {
    if (interval_) {
        if (v >= ub_) return false;
        ub_ = v;
        return true;
    }
    auto it = std::upper_bound(set_.begin(), set_.end(), v);
    if (it == set_.end()) return false;
    set_.erase(it, set_.end());
    return true;
}

bool Domain::remove(Value v) {
    if (interval_) {
        if (empty()) return false;
        if (v == lb_) return tighten_lb(v + 1);
        if (v == ub_) return tighten_ub(v - 1);
        return false;
    }
    auto it = std::lower_bound(set_.begin(), set_.end(), v);
    if (it == set_.end() || *it != v) return false;
    set_.erase(it);
    return true;
}

VarId DomainStore::add(Domain d) {
    domains_.push_back(std::move(d));
    if (domains_.back().empty()) infeasible_ = true;
    return domains_.size() - 1;
}

bool DomainStore::settle(VarId x, bool changed) {
    if (!changed) return false;
    ++revision_;
    if (domains_[x].empty()) infeasible_ = true;
    return true;
}

bool DomainStore::tighten_lb(VarId x, Value v) {
    if (infeasible_) return false;
    return settle(x, domains_[x].tighten_lb(v));
}

bool DomainStore::tighten_ub(VarId x, Value v) {
    if (infeasible_) return false;
    return settle(x, domains_[x].tighten_ub(v));
}

bool DomainStore::remove(VarId x, Value v) {
    if (infeasible_) return false;
    return settle(x, domains_[x].remove(v));
}

}  // namespace dpcp::cp
