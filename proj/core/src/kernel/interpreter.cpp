#include "bops/kernel/interpreter.hpp"

#include <cmath>

namespace bops::kernel {

namespace {

[[noreturn]] void runtime_fail(KernelRuntimeError::Kind kind, SourcePos pos,
                               const std::string& msg) {
    throw KernelRuntimeError(kind, "line " + std::to_string(pos.line) + ":" +
                                       std::to_string(pos.col) + ": " + msg);
}

bool truthy(const Value& v) {
    if (std::holds_alternative<int64_t>(v)) return std::get<int64_t>(v) != 0;
    return std::get<double>(v) != 0.0;
}

double as_double(const Value& v) {
    if (std::holds_alternative<int64_t>(v)) return static_cast<double>(std::get<int64_t>(v));
    return std::get<double>(v);
}

int64_t to_int64_checked(const Value& v, SourcePos pos) {
    if (std::holds_alternative<int64_t>(v)) return std::get<int64_t>(v);
    double d = std::get<double>(v);
    if (std::isnan(d) || d >= 9223372036854775808.0 || d < -9223372036854775808.0)
        runtime_fail(KernelRuntimeError::Kind::ConversionOverflow, pos,
                     "float value does not fit a 64-bit integer");
    return static_cast<int64_t>(d);  // truncates toward zero
}

class Interpreter {
public:
    Interpreter(const KernelProgram& program, const std::map<std::string, Value>& inputs,
                const InterpreterOptions& options)
        : program_(program), options_(options) {
        state_.slots.reserve(program.declarations.size());
        for (const Declaration& d : program.declarations) {
            ProgramState::Slot slot;
            slot.decl = d;
            if (d.is_array()) {
                if (d.type == ScalarType::Int64)
                    slot.array_i.assign(d.element_count(), 0);
                else
                    slot.array_f.assign(d.element_count(), 0.0);
            } else {
                slot.scalar = d.type == ScalarType::Int64 ? Value{int64_t{0}} : Value{0.0};
            }
            state_.slots.push_back(std::move(slot));
        }
        bind_inputs(inputs);
    }

    InterpretResult run() {
        exec_block(program_.statements);
        return InterpretResult{tally_, std::move(state_)};
    }

private:
    void bind_inputs(const std::map<std::string, Value>& inputs) {
        for (const auto& [name, value] : inputs) {
            ProgramState::Slot* slot = nullptr;
            for (auto& s : state_.slots)
                if (s.decl.name == name) {
                    slot = &s;
                    break;
                }
            if (!slot)
                throw KernelRuntimeError(KernelRuntimeError::Kind::BadInput,
                                         "input '" + name + "' binds no declared identifier");
            if (slot->decl.is_array())
                throw KernelRuntimeError(KernelRuntimeError::Kind::BadInput,
                                         "input '" + name + "' binds an array; only scalars "
                                         "can be bound");
            if (slot->decl.type == ScalarType::Int64)
                slot->scalar = to_int64_checked(value, slot->decl.pos);
            else
                slot->scalar = as_double(value);
            slot->defined = true;
        }
    }

    void check_budget(SourcePos pos) {
        if (tally_.total() > options_.max_ops)
            runtime_fail(KernelRuntimeError::Kind::BudgetExceeded, pos,
                         "evaluated operations exceeded the budget of " +
                             std::to_string(options_.max_ops));
    }

    void exec_block(const std::vector<Stmt>& body) {
        for (const Stmt& s : body) exec_stmt(s);
    }

    void exec_stmt(const Stmt& s) {
        if (const auto* a = std::get_if<Assign>(&s.node)) {
            exec_assign(*a);
        } else if (const auto* f = std::get_if<ForLoop>(&s.node)) {
            exec_for(*f);
        } else {
            exec_if(std::get<IfStmt>(s.node));
        }
        check_budget(s.pos);
    }

    void exec_assign(const Assign& a) {
        Value v = eval(*a.value);
        ProgramState::Slot& slot = state_.slots[static_cast<size_t>(a.target.symbol)];
        if (!a.target.is_array()) {
            if (slot.decl.type == ScalarType::Int64)
                slot.scalar = to_int64_checked(v, a.target.pos);
            else
                slot.scalar = as_double(v);
            slot.defined = true;
            return;
        }
        size_t flat = flat_index(slot, a.target.indices, a.target.pos);
        tally_.add_addressing(a.target.indices.size());
        if (slot.decl.type == ScalarType::Int64)
            slot.array_i[flat] = to_int64_checked(v, a.target.pos);
        else
            slot.array_f[flat] = as_double(v);
    }

    void exec_for(const ForLoop& f) {
        exec_assign(f.init);
        for (;;) {
            // the exiting (failing) bound check is not tallied
            BopsTally before = tally_;
            Value cond = eval(*f.condition);
            if (!truthy(cond)) {
                tally_ = before;
                break;
            }
            exec_block(f.body);
            exec_assign(f.step);
            check_budget(f.init.target.pos);
        }
    }

    void exec_if(const IfStmt& s) {
        Value cond = eval(*s.condition);
        if (truthy(cond))
            exec_block(s.then_body);
        else
            exec_block(s.else_body);
    }

    size_t flat_index(const ProgramState::Slot& slot, const std::vector<ExprPtr>& indices,
                      SourcePos pos) {
        const auto& dims = slot.decl.dims;
        size_t flat = 0;
        for (size_t k = 0; k < indices.size(); ++k) {
            Value v = eval(*indices[k]);
            int64_t idx = std::get<int64_t>(v);  // index exprs are typed Int64 at parse
            if (idx < 0 || static_cast<uint64_t>(idx) >= dims[k])
                runtime_fail(KernelRuntimeError::Kind::IndexOutOfRange, pos,
                             "index " + std::to_string(idx) + " outside dimension of size " +
                                 std::to_string(dims[k]) + " of '" + slot.decl.name + "'");
            flat = flat * static_cast<size_t>(dims[k]) + static_cast<size_t>(idx);
        }
        return flat;
    }

    Value eval(const Expr& e) {
        switch (e.tag) {
            case Expr::Tag::IntLit:
                return e.int_value;
            case Expr::Tag::FloatLit:
                return e.float_value;
            case Expr::Tag::ScalarRef: {
                const ProgramState::Slot& slot = state_.slots[static_cast<size_t>(e.symbol)];
                if (!slot.defined)
                    runtime_fail(KernelRuntimeError::Kind::UnboundScalar, e.pos,
                                 "scalar '" + slot.decl.name +
                                     "' read before assignment and not bound by an input");
                return slot.scalar;
            }
            case Expr::Tag::ArrayRef: {
                ProgramState::Slot& slot = state_.slots[static_cast<size_t>(e.symbol)];
                size_t flat = flat_index(slot, e.indices, e.pos);
                tally_.add_addressing(e.indices.size());
                if (slot.decl.type == ScalarType::Int64) return slot.array_i[flat];
                return slot.array_f[flat];
            }
            case Expr::Tag::Unary:
                return eval_unary(e);
            case Expr::Tag::Binary:
                return eval_binary(e);
        }
        return int64_t{0};  // unreachable
    }

    Value eval_unary(const Expr& e) {
        Value v = eval(*e.lhs);
        tally_.add_arithmetic(1);
        switch (e.unary_op) {
            case UnaryOp::Neg:
                if (std::holds_alternative<double>(v)) return -std::get<double>(v);
                return static_cast<int64_t>(-static_cast<uint64_t>(std::get<int64_t>(v)));
            case UnaryOp::LogicNot:
                return static_cast<int64_t>(!truthy(v));
            case UnaryOp::BitNot:
                return ~std::get<int64_t>(v);
        }
        return int64_t{0};  // unreachable
    }

    Value eval_binary(const Expr& e) {
        // strict evaluation everywhere: logic operators evaluate both sides,
        // so dynamic tallies match the static count
        Value a = eval(*e.lhs);
        Value b = eval(*e.rhs);
        const BinaryOp op = e.binary_op;

        if (is_comparison(op)) {
            tally_.add_comparing(1);
            bool r;
            if (std::holds_alternative<int64_t>(a) && std::holds_alternative<int64_t>(b)) {
                int64_t x = std::get<int64_t>(a), y = std::get<int64_t>(b);
                r = compare(op, x, y);
            } else {
                r = compare(op, as_double(a), as_double(b));
            }
            return static_cast<int64_t>(r);
        }

        tally_.add_arithmetic(1);
        if (is_logic(op)) {
            bool x = truthy(a), y = truthy(b);
            return static_cast<int64_t>(op == BinaryOp::LogicAnd ? (x && y) : (x || y));
        }

        switch (op) {
            case BinaryOp::BitAnd: return std::get<int64_t>(a) & std::get<int64_t>(b);
            case BinaryOp::BitOr: return std::get<int64_t>(a) | std::get<int64_t>(b);
            case BinaryOp::BitXor: return std::get<int64_t>(a) ^ std::get<int64_t>(b);
            case BinaryOp::Shl:
                return static_cast<int64_t>(static_cast<uint64_t>(std::get<int64_t>(a))
                                            << (std::get<int64_t>(b) & 63));
            case BinaryOp::Shr: return std::get<int64_t>(a) >> (std::get<int64_t>(b) & 63);
            default: break;
        }

        // arithmetic: promote to float when either side is float
        if (std::holds_alternative<double>(a) || std::holds_alternative<double>(b)) {
            double x = as_double(a), y = as_double(b);
            switch (op) {
                case BinaryOp::Add: return x + y;
                case BinaryOp::Sub: return x - y;
                case BinaryOp::Mul: return x * y;
                case BinaryOp::Div:
                    if (y == 0.0)
                        runtime_fail(KernelRuntimeError::Kind::DivisionByZero, e.pos,
                                     "division by zero");
                    return x / y;
                default: break;
            }
        } else {
            uint64_t x = static_cast<uint64_t>(std::get<int64_t>(a));
            uint64_t y = static_cast<uint64_t>(std::get<int64_t>(b));
            switch (op) {
                case BinaryOp::Add: return static_cast<int64_t>(x + y);
                case BinaryOp::Sub: return static_cast<int64_t>(x - y);
                case BinaryOp::Mul: return static_cast<int64_t>(x * y);
                case BinaryOp::Div: {
                    int64_t sx = std::get<int64_t>(a), sy = std::get<int64_t>(b);
                    if (sy == 0)
                        runtime_fail(KernelRuntimeError::Kind::DivisionByZero, e.pos,
                                     "division by zero");
                    if (sx == INT64_MIN && sy == -1) return INT64_MIN;
                    return sx / sy;
                }
                default: break;
            }
        }
        return int64_t{0};  // unreachable
    }

    template <typename T>
    static bool compare(BinaryOp op, T x, T y) {
        switch (op) {
            case BinaryOp::Lt: return x < y;
            case BinaryOp::Le: return x <= y;
            case BinaryOp::Gt: return x > y;
            case BinaryOp::Ge: return x >= y;
            case BinaryOp::Eq: return x == y;
            default: return x != y;
        }
    }

    const KernelProgram& program_;
    InterpreterOptions options_;
    ProgramState state_;
    BopsTally tally_;
};

}  // namespace

const ProgramState::Slot* ProgramState::find(const std::string& name) const {
    for (const auto& s : slots)
        if (s.decl.name == name) return &s;
    return nullptr;
}

namespace {
const ProgramState::Slot& require_slot(const ProgramState& st, const std::string& name) {
    const ProgramState::Slot* s = st.find(name);
    if (!s) throw Error("no variable named '" + name + "'");
    return *s;
}

size_t flat_of(const ProgramState::Slot& s, const std::vector<uint64_t>& indices) {
    if (indices.size() != s.decl.dims.size()) throw Error("wrong index count for " + s.decl.name);
    size_t flat = 0;
    for (size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= s.decl.dims[k]) throw Error("index out of range for " + s.decl.name);
        flat = flat * static_cast<size_t>(s.decl.dims[k]) + static_cast<size_t>(indices[k]);
    }
    return flat;
}
}  // namespace

int64_t ProgramState::scalar_int(const std::string& name) const {
    return std::get<int64_t>(require_slot(*this, name).scalar);
}

double ProgramState::scalar_float(const std::string& name) const {
    return std::get<double>(require_slot(*this, name).scalar);
}

int64_t ProgramState::array_int(const std::string& name,
                                const std::vector<uint64_t>& indices) const {
    const Slot& s = require_slot(*this, name);
    return s.array_i[flat_of(s, indices)];
}

double ProgramState::array_float(const std::string& name,
                                 const std::vector<uint64_t>& indices) const {
    const Slot& s = require_slot(*this, name);
    return s.array_f[flat_of(s, indices)];
}

InterpretResult interpret(const KernelProgram& program, const std::map<std::string, Value>& inputs,
                          const InterpreterOptions& options) {
    Interpreter interp(program, inputs, options);
    return interp.run();
}

}  // namespace bops::kernel
