#pragma once

#include <cstdint>
#include <string>

#include "bops/perfest/counter_dump.hpp"

namespace bops::perfest {

/// Multipliers normalizing packed-unit instructions to 64-bit operations.
/// The defaults describe 128-bit SSE units (two 64-bit lanes); a 256-bit
/// machine would use 4 for the packed multipliers.
struct EstimatorProfile {
    double packed_integer_multiplier = 2.0;
    double packed_fp_multiplier = 2.0;
    double scalar_fp_multiplier = 1.0;

    void validate() const;  ///< multipliers must be positive

    static EstimatorProfile load(const std::string& path);
    static EstimatorProfile parse(const std::string& text, const std::string& origin);
};

/// Instruction-level BOPs estimate:
///   Integer_All = Integer_Ins + packed_integer_multiplier * SSE_Integer
///   FP_All      = FP_Ins + scalar_fp_multiplier * SSE_Scalar
///                        + packed_fp_multiplier * SSE_Packed
///   result      = round(Integer_All + FP_All)
///
/// This is an approximation: it sweeps in all integer and floating point
/// instructions the counters see, so reports must label it approximate and
/// never substitute it for a source-level tally.
uint64_t estimate_bops(const CounterDump& dump, const EstimatorProfile& profile = {});

/// Relative deviation |estimated - reference| / reference against a
/// source-level count. Throws on a zero reference.
double deviation(uint64_t estimated, uint64_t source_level);

}  // namespace bops::perfest
