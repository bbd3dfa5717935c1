#pragma once

#include <cstdint>
#include <stdexcept>

namespace bops {

/// One basic-operation class. Every class carries unit weight except
/// N-dimensional array addressing, which weighs N (one offset addition
/// per dimension).
class BasicOp {
public:
    enum class Kind {
        Add,
        Subtract,
        Multiply,
        Divide,
        Bitwise,
        Logic,
        Compare,
        ArrayAddressing,
    };

    constexpr BasicOp(Kind kind) : kind_(kind), dimensions_(0) {
        if (kind == Kind::ArrayAddressing)
            throw std::invalid_argument("ArrayAddressing requires a dimension count");
    }

    static constexpr BasicOp array_addressing(uint32_t dimensions) {
        if (dimensions < 1)
            throw std::invalid_argument("array addressing needs at least one dimension");
        return BasicOp(Kind::ArrayAddressing, dimensions);
    }

    constexpr Kind kind() const { return kind_; }

    /// Dimensions of an ArrayAddressing op; 0 for every other kind.
    constexpr uint32_t dimensions() const { return dimensions_; }

private:
    constexpr BasicOp(Kind kind, uint32_t dims) : kind_(kind), dimensions_(dims) {}

    Kind kind_;
    uint32_t dimensions_;
};

/// Normalized weight of one basic operation: 1 for every class,
/// N for N-dimensional array addressing.
constexpr uint64_t normalized_weight(const BasicOp& op) {
    if (op.kind() == BasicOp::Kind::ArrayAddressing) return op.dimensions();
    return 1;
}

}  // namespace bops
