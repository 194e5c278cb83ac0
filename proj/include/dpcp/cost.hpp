#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dpcp {

class CostOverflow : public std::overflow_error {
public:
    CostOverflow() : std::overflow_error("cost addition overflowed 64 bits") {}
};

/// Non-negative integer cost with an absorbing infinity.
class Cost {
public:
    constexpr Cost() = default;

    constexpr explicit Cost(std::int64_t value) : value_(value) {
        if (value < 0) {
            throw std::invalid_argument("cost must be non-negative, got " + std::to_string(value));
        }
    }

    static constexpr Cost infinity() {
        Cost c;
        c.infinite_ = true;
        return c;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    constexpr std::int64_t value() const {
        if (infinite_) throw std::logic_error("value() of infinite cost");
        return value_;
    }

    friend Cost operator+(Cost a, Cost b) {
        if (a.infinite_ || b.infinite_) return infinity();
        std::int64_t sum = 0;
        if (__builtin_add_overflow(a.value_, b.value_, &sum)) throw CostOverflow();
        return Cost(sum);
    }

    Cost& operator+=(Cost other) { return *this = *this + other; }

    friend constexpr bool operator==(Cost a, Cost b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

    friend constexpr std::strong_ordering operator<=>(Cost a, Cost b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }

    friend std::ostream& operator<<(std::ostream& os, Cost c) {
        if (c.infinite_) return os << "inf";
        return os << c.value_;
    }

private:
    std::int64_t value_ = 0;
    bool infinite_ = false;
};

inline Cost max(Cost a, Cost b) { return a < b ? b : a; }
inline Cost min(Cost a, Cost b) { return b < a ? b : a; }

/// max{0, bound - offset} for a finite offset; infinity stays infinity.
inline Cost remaining(Cost bound, std::int64_t offset) {
    if (bound.is_infinite()) return bound;
    return Cost(bound.value() > offset ? bound.value() - offset : 0);
}

}  // namespace dpcp
