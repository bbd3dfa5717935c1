#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bops/kernel/ast.hpp"
#include "bops/tally.hpp"

namespace bops::kernel {

using Value = std::variant<int64_t, double>;

/// Execution failure inside a kernel program.
class KernelRuntimeError : public Error {
public:
    enum class Kind {
        DivisionByZero,
        UnboundScalar,
        IndexOutOfRange,
        BudgetExceeded,
        BadInput,
        ConversionOverflow,
    };

    KernelRuntimeError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct InterpreterOptions {
    /// Hard cap on evaluated basic operations; exceeding it aborts the run
    /// (the program is treated as non-terminating).
    uint64_t max_ops = 1'000'000'000;
};

/// Final variable state after a run. Slots align with the program's
/// declaration order; arrays are stored flat, row-major.
struct ProgramState {
    struct Slot {
        Declaration decl;
        bool defined = false;                // scalars: written or bound by input
        Value scalar = int64_t{0};
        std::vector<int64_t> array_i;        // Int64 arrays
        std::vector<double> array_f;         // Float64 arrays
    };

    std::vector<Slot> slots;

    const Slot* find(const std::string& name) const;
    int64_t scalar_int(const std::string& name) const;
    double scalar_float(const std::string& name) const;
    int64_t array_int(const std::string& name, const std::vector<uint64_t>& indices) const;
    double array_float(const std::string& name, const std::vector<uint64_t>& indices) const;
};

struct InterpretResult {
    BopsTally tally;
    ProgramState state;
};

/// Executes a program under 64-bit semantics, tallying every evaluated
/// operation under the same rules as count_static. Inputs bind scalars that
/// the program reads before writing; array cells start at zero. The failing
/// bound check that exits a loop is not tallied, matching the static rule.
InterpretResult interpret(const KernelProgram& program,
                          const std::map<std::string, Value>& inputs = {},
                          const InterpreterOptions& options = {});

}  // namespace bops::kernel
