#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace dpcp {

/// Fixed-universe set of small non-negative indices, stored as 64-bit blocks.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

    static IndexSet full(std::size_t universe) {
        IndexSet s(universe);
        for (std::size_t i = 0; i < universe; ++i) s.insert(i);
        return s;
    }

    std::size_t universe() const { return universe_; }

    bool contains(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    void insert(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void erase(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

    IndexSet without(std::size_t i) const {
        IndexSet s = *this;
        s.erase(i);
        return s;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool empty() const {
        for (auto w : words_) {
            if (w != 0) return false;
        }
        return true;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t b = 0; b < words_.size(); ++b) {
            std::uint64_t w = words_[b];
            while (w != 0) {
                f(b * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> elements() const {
        std::vector<std::size_t> out;
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    std::size_t hash() const {
        std::size_t h = universe_;
        for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace dpcp

template <>
struct std::hash<dpcp::IndexSet> {
    std::size_t operator()(const dpcp::IndexSet& s) const noexcept { return s.hash(); }
};
