#pragma once

#include "bops/kernel/ast.hpp"
#include "bops/tally.hpp"

namespace bops::kernel {

/// Result of source-level counting. exact is false when any loop trip count
/// could not be evaluated to a constant or when an if-statement's branches
/// tally differently; the tally is then a one-pass bound, not the exact count.
struct StaticCount {
    BopsTally tally;
    bool exact = true;
};

/// Counts basic operations without executing the program.
///
/// Rules: declarations and plain scalar assignment count nothing; every
/// arithmetic / bitwise / logic operator is one arithmetic BOP; every
/// comparison is one comparing BOP; an N-dimensional array access is N
/// addressing BOPs. A counted loop contributes its init once and, per
/// iteration, its bound comparison, its step and its body; the final failing
/// bound check is not counted, so a loop of trip count T contributes exactly
/// T control pairs. Constant-bound loops multiply exactly; non-constant
/// bounds count one pass and clear `exact`. An if contributes its condition
/// per evaluation plus the per-class maximum of its branches; differing
/// branches clear `exact`.
StaticCount count_static(const KernelProgram& program);

}  // namespace bops::kernel
