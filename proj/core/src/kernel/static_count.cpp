#include "bops/kernel/static_count.hpp"

#include <algorithm>
#include <optional>

namespace bops::kernel {

namespace {

struct CountVisitor {
    BopsTally count_expr(const Expr& e) {
        BopsTally t;
        switch (e.tag) {
            case Expr::Tag::IntLit:
            case Expr::Tag::FloatLit:
            case Expr::Tag::ScalarRef:
                break;
            case Expr::Tag::ArrayRef:
                t.add_addressing(e.indices.size());
                for (const auto& idx : e.indices) t.merge(count_expr(*idx));
                break;
            case Expr::Tag::Unary:
                t.add_arithmetic(1);
                t.merge(count_expr(*e.lhs));
                break;
            case Expr::Tag::Binary:
                if (is_comparison(e.binary_op))
                    t.add_comparing(1);
                else
                    t.add_arithmetic(1);
                t.merge(count_expr(*e.lhs));
                t.merge(count_expr(*e.rhs));
                break;
        }
        return t;
    }

    BopsTally count_assign(const Assign& a) {
        BopsTally t;
        if (a.target.is_array()) {
            t.add_addressing(a.target.indices.size());
            for (const auto& idx : a.target.indices) t.merge(count_expr(*idx));
        }
        t.merge(count_expr(*a.value));
        return t;
    }

    StaticCount count_block(const std::vector<Stmt>& body) {
        StaticCount out;
        for (const Stmt& s : body) {
            StaticCount c = count_stmt(s);
            out.tally.merge(c.tally);
            out.exact = out.exact && c.exact;
        }
        return out;
    }

    StaticCount count_stmt(const Stmt& s) {
        if (const auto* a = std::get_if<Assign>(&s.node)) return {count_assign(*a), true};
        if (const auto* f = std::get_if<ForLoop>(&s.node)) return count_for(*f);
        return count_if(std::get<IfStmt>(s.node));
    }

    StaticCount count_for(const ForLoop& f) {
        StaticCount out;
        out.tally = count_assign(f.init);

        BopsTally per_iter = count_expr(*f.condition);
        per_iter.merge(count_assign(f.step));
        StaticCount body = count_block(f.body);
        per_iter.merge(body.tally);

        std::optional<uint64_t> trip = trip_count(f);
        if (trip) {
            per_iter.scale(*trip);
            out.tally.merge(per_iter);
            out.exact = body.exact;
        } else {
            // one-pass bound: control pair and body counted once
            out.tally.merge(per_iter);
            out.exact = false;
        }
        return out;
    }

    StaticCount count_if(const IfStmt& s) {
        StaticCount out;
        out.tally = count_expr(*s.condition);
        StaticCount then_c = count_block(s.then_body);
        StaticCount else_c = count_block(s.else_body);
        if (then_c.tally == else_c.tally) {
            out.tally.merge(then_c.tally);
            out.exact = then_c.exact && else_c.exact;
        } else {
            BopsTally upper;
            upper.arithmetic = std::max(then_c.tally.arithmetic, else_c.tally.arithmetic);
            upper.comparing = std::max(then_c.tally.comparing, else_c.tally.comparing);
            upper.addressing = std::max(then_c.tally.addressing, else_c.tally.addressing);
            out.tally.merge(upper);
            out.exact = false;
        }
        return out;
    }

    // --- constant trip-count analysis ---

    /// Folds an expression over literals only. Any variable reference, float
    /// operand or division hazard makes the result nullopt.
    static std::optional<int64_t> fold_const_int(const Expr& e) {
        switch (e.tag) {
            case Expr::Tag::IntLit:
                return e.int_value;
            case Expr::Tag::Unary: {
                auto v = fold_const_int(*e.lhs);
                if (!v) return std::nullopt;
                switch (e.unary_op) {
                    case UnaryOp::Neg:
                        return static_cast<int64_t>(-static_cast<uint64_t>(*v));
                    case UnaryOp::LogicNot:
                        return *v == 0 ? 1 : 0;
                    case UnaryOp::BitNot:
                        return ~*v;
                }
                return std::nullopt;
            }
            case Expr::Tag::Binary: {
                auto a = fold_const_int(*e.lhs);
                auto b = fold_const_int(*e.rhs);
                if (!a || !b) return std::nullopt;
                uint64_t ua = static_cast<uint64_t>(*a), ub = static_cast<uint64_t>(*b);
                switch (e.binary_op) {
                    case BinaryOp::Add: return static_cast<int64_t>(ua + ub);
                    case BinaryOp::Sub: return static_cast<int64_t>(ua - ub);
                    case BinaryOp::Mul: return static_cast<int64_t>(ua * ub);
                    case BinaryOp::Div:
                        if (*b == 0) return std::nullopt;
                        if (*a == INT64_MIN && *b == -1) return INT64_MIN;
                        return *a / *b;
                    case BinaryOp::BitAnd: return *a & *b;
                    case BinaryOp::BitOr: return *a | *b;
                    case BinaryOp::BitXor: return *a ^ *b;
                    case BinaryOp::Shl: return static_cast<int64_t>(ua << (ub & 63));
                    case BinaryOp::Shr: return *a >> (ub & 63);
                    default: return std::nullopt;  // comparisons/logic never appear in bounds
                }
            }
            default:
                return std::nullopt;
        }
    }

    static bool assigns_symbol(const std::vector<Stmt>& body, int symbol) {
        for (const Stmt& s : body) {
            if (const auto* a = std::get_if<Assign>(&s.node)) {
                if (a->target.symbol == symbol) return true;
            } else if (const auto* f = std::get_if<ForLoop>(&s.node)) {
                if (f->loop_symbol == symbol || assigns_symbol(f->body, symbol)) return true;
            } else {
                const auto& i = std::get<IfStmt>(s.node);
                if (assigns_symbol(i.then_body, symbol) || assigns_symbol(i.else_body, symbol))
                    return true;
            }
        }
        return false;
    }

    /// Recognizes `for (v = I; v REL B; v += d)` with literal I, B, d and a
    /// body that never reassigns v. Returns the exact iteration count.
    static std::optional<uint64_t> trip_count(const ForLoop& f) {
        if (f.init.target.is_array()) return std::nullopt;
        auto init = fold_const_int(*f.init.value);
        if (!init) return std::nullopt;

        const Expr& cond = *f.condition;
        if (cond.tag != Expr::Tag::Binary || !is_comparison(cond.binary_op)) return std::nullopt;
        if (cond.lhs->tag != Expr::Tag::ScalarRef || cond.lhs->symbol != f.loop_symbol)
            return std::nullopt;
        auto bound = fold_const_int(*cond.rhs);
        if (!bound) return std::nullopt;

        // step was desugared to v = v OP delta
        const Expr& sv = *f.step.value;
        if (sv.tag != Expr::Tag::Binary ||
            (sv.binary_op != BinaryOp::Add && sv.binary_op != BinaryOp::Sub))
            return std::nullopt;
        if (sv.lhs->tag != Expr::Tag::ScalarRef || sv.lhs->symbol != f.loop_symbol)
            return std::nullopt;
        auto delta_raw = fold_const_int(*sv.rhs);
        if (!delta_raw) return std::nullopt;
        __int128 delta = sv.binary_op == BinaryOp::Add ? static_cast<__int128>(*delta_raw)
                                                       : -static_cast<__int128>(*delta_raw);

        if (assigns_symbol(f.body, f.loop_symbol)) return std::nullopt;

        __int128 lo = *init, hi = *bound;
        auto count_up = [&](__int128 from, __int128 to_excl) -> std::optional<uint64_t> {
            if (from >= to_excl) return uint64_t{0};
            if (delta <= 0) return std::nullopt;  // diverges
            __int128 span = to_excl - from;
            return static_cast<uint64_t>((span + delta - 1) / delta);
        };
        auto count_down = [&](__int128 from, __int128 to_excl) -> std::optional<uint64_t> {
            if (from <= to_excl) return uint64_t{0};
            if (delta >= 0) return std::nullopt;
            __int128 span = from - to_excl;
            return static_cast<uint64_t>((span + (-delta) - 1) / (-delta));
        };

        switch (cond.binary_op) {
            case BinaryOp::Lt: return count_up(lo, hi);
            case BinaryOp::Le: return count_up(lo, hi + 1);
            case BinaryOp::Gt: return count_down(lo, hi);
            case BinaryOp::Ge: return count_down(lo, hi - 1);
            default: return std::nullopt;  // ==/!= bounds are not counted loops
        }
    }
};

}  // namespace

StaticCount count_static(const KernelProgram& program) {
    CountVisitor v;
    return v.count_block(program.statements);
}

}  // namespace bops::kernel
