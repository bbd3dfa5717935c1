#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bops/errors.hpp"

namespace bops::kernel {

struct SourcePos {
    int line = 1;
    int col = 1;
};

enum class ScalarType { Int64, Float64 };

/// One declared name. Arrays carry constant dimension sizes; scalars have
/// none. The declaration index doubles as the symbol id used by references.
struct Declaration {
    std::string name;
    ScalarType type = ScalarType::Int64;
    std::vector<uint64_t> dims;
    SourcePos pos;

    bool is_array() const { return !dims.empty(); }
    uint64_t element_count() const {
        uint64_t n = 1;
        for (uint64_t d : dims) n *= d;
        return n;
    }
};

enum class BinaryOp {
    Add, Sub, Mul, Div,                  // arithmetic
    BitAnd, BitOr, BitXor, Shl, Shr,     // bitwise
    LogicAnd, LogicOr,                   // logic (strict: both sides evaluate)
    Lt, Le, Gt, Ge, Eq, Ne,              // comparing
};

enum class UnaryOp { Neg, LogicNot, BitNot };

constexpr bool is_comparison(BinaryOp op) {
    return op == BinaryOp::Lt || op == BinaryOp::Le || op == BinaryOp::Gt ||
           op == BinaryOp::Ge || op == BinaryOp::Eq || op == BinaryOp::Ne;
}

constexpr bool is_logic(BinaryOp op) {
    return op == BinaryOp::LogicAnd || op == BinaryOp::LogicOr;
}

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

/// Expression tree over the two-type system (64-bit integer, 64-bit float).
/// Every node carries its result type, resolved at parse time.
struct Expr {
    enum class Tag { IntLit, FloatLit, ScalarRef, ArrayRef, Unary, Binary };

    Tag tag = Tag::IntLit;
    SourcePos pos;
    ScalarType type = ScalarType::Int64;

    int64_t int_value = 0;     // IntLit
    double float_value = 0;    // FloatLit
    int symbol = -1;           // ScalarRef / ArrayRef
    std::vector<ExprPtr> indices;  // ArrayRef: exactly as many as declared dims

    UnaryOp unary_op = UnaryOp::Neg;
    BinaryOp binary_op = BinaryOp::Add;
    ExprPtr lhs;  // Binary left / Unary operand
    ExprPtr rhs;  // Binary right
};

struct LValue {
    int symbol = -1;
    std::vector<ExprPtr> indices;  // empty for scalar targets
    SourcePos pos;

    bool is_array() const { return !indices.empty(); }
};

struct Stmt;

struct Assign {
    LValue target;
    ExprPtr value;
};

/// C-style counted loop: init assigns the loop variable, the condition is a
/// comparison referencing it, the step re-assigns it (++/--/+=/-= desugar to
/// plain assignment at parse time).
struct ForLoop {
    int loop_symbol = -1;
    Assign init;
    ExprPtr condition;
    Assign step;
    std::vector<Stmt> body;
};

struct IfStmt {
    ExprPtr condition;  // comparison or logic expression
    std::vector<Stmt> then_body;
    std::vector<Stmt> else_body;
};

struct Stmt {
    std::variant<Assign, ForLoop, IfStmt> node;
    SourcePos pos;
};

struct KernelProgram {
    std::vector<Declaration> declarations;
    std::vector<Stmt> statements;
};

/// Parse-time failure. kind() distinguishes the classes of rejection the
/// language defines; what() carries origin:line:col.
class ParseError : public Error {
public:
    enum class Kind {
        Syntax,
        UndeclaredIdentifier,
        DuplicateDeclaration,
        DimensionMismatch,
        UnsupportedConstruct,
        TypeError,
    };

    ParseError(Kind kind, SourcePos pos, const std::string& origin, const std::string& message)
        : Error(origin + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " +
                message),
          kind_(kind),
          pos_(pos) {}

    Kind kind() const { return kind_; }
    SourcePos pos() const { return pos_; }

private:
    Kind kind_;
    SourcePos pos_;
};

}  // namespace bops::kernel
