#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "dpcp/model.hpp"

namespace dpcp::search {

using NodeId = std::size_t;

/// Every state encountered so far, bucketed by dominance signature.
template <DpModel M>
class Registry {
public:
    using State = typename M::State;

    struct Entry {
        State state;
        Cost g;
        NodeId node;
    };

    explicit Registry(const M& model) : model_(model) {}

    /// Inserts `state` unless a bucket entry dominates it with no larger g.
    /// Entries that the new state dominates with no smaller g are dropped and
    /// their node ids appended to `superseded`.
    bool insert(const State& state, Cost g, NodeId node, std::vector<NodeId>* superseded = nullptr) {
        auto& bucket = buckets_[model_.signature(state)];
        for (const auto& e : bucket) {
            if (e.g <= g && model_.dominates(e.state, state)) return false;
        }
        entries_ -= std::erase_if(bucket, [&](const Entry& e) {
            bool drop = g <= e.g && model_.dominates(state, e.state);
            if (drop && superseded) superseded->push_back(e.node);
            return drop;
        });
        bucket.push_back({state, g, node});
        ++entries_;
        return true;
    }

    std::size_t size() const { return entries_; }

    template <class F>
    void for_each_bucket(F&& f) const {
        for (const auto& [sig, bucket] : buckets_) f(bucket);
    }

    void clear() {
        buckets_.clear();
        entries_ = 0;
    }

private:
    const M& model_;
    std::unordered_map<typename M::Signature, std::vector<Entry>> buckets_;
    std::size_t entries_ = 0;
};

/// Free-function form of Registry::insert.
template <DpModel M>
bool register_state(Registry<M>& reg, const typename M::State& state, Cost g) {
    return reg.insert(state, g, 0);
}

}  // namespace dpcp::search
