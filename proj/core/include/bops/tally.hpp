#pragma once

#include <cstdint>

#include "bops/basic_op.hpp"
#include "bops/errors.hpp"

namespace bops {

namespace detail {
inline uint64_t checked_add(uint64_t a, uint64_t b) {
    uint64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw TallyOverflow("BOPs tally overflowed 64-bit range");
    return out;
}
}  // namespace detail

/// Per-class counts of normalized basic operations. All accumulation is
/// overflow-checked; a tally never wraps silently.
struct BopsTally {
    uint64_t arithmetic = 0;
    uint64_t comparing = 0;
    uint64_t addressing = 0;

    uint64_t total() const {
        return detail::checked_add(detail::checked_add(arithmetic, comparing), addressing);
    }

    void add_arithmetic(uint64_t n = 1) { arithmetic = detail::checked_add(arithmetic, n); }
    void add_comparing(uint64_t n = 1) { comparing = detail::checked_add(comparing, n); }
    void add_addressing(uint64_t n = 1) { addressing = detail::checked_add(addressing, n); }

    /// Adds one classified basic operation at its normalized weight.
    /// Arithmetic, bitwise and logic ops land in the arithmetic class;
    /// compares in comparing; array addressing in addressing.
    void add(const BasicOp& op) {
        const uint64_t w = normalized_weight(op);
        switch (op.kind()) {
            case BasicOp::Kind::Compare:
                add_comparing(w);
                break;
            case BasicOp::Kind::ArrayAddressing:
                add_addressing(w);
                break;
            default:
                add_arithmetic(w);
                break;
        }
    }

    void merge(const BopsTally& other) {
        arithmetic = detail::checked_add(arithmetic, other.arithmetic);
        comparing = detail::checked_add(comparing, other.comparing);
        addressing = detail::checked_add(addressing, other.addressing);
    }

    void scale(uint64_t factor) {
        arithmetic = checked_mul(arithmetic, factor);
        comparing = checked_mul(comparing, factor);
        addressing = checked_mul(addressing, factor);
    }

    bool operator==(const BopsTally&) const = default;

private:
    static uint64_t checked_mul(uint64_t a, uint64_t b) {
        uint64_t out;
        if (__builtin_mul_overflow(a, b, &out))
            throw TallyOverflow("BOPs tally overflowed 64-bit range");
        return out;
    }
};

}  // namespace bops
