#pragma once

#include <string>
#include <vector>

#include "bops/machine_spec.hpp"

namespace bops::roofline {

enum class BindingSide { MemoryBound, ComputeBound, Ridge };

std::string to_string(BindingSide side);

struct AttainedPeak {
    double rate = 0;
    BindingSide side = BindingSide::MemoryBound;
};

/// Workload upper bound at a given operation intensity:
/// min(oi * bandwidth, peak). The side names which branch binds; Ridge when
/// the two agree within 1e-9 relative.
AttainedPeak attained_peak(double peak_rate, double bandwidth_bytes_per_s, double oi);
AttainedPeak attained_peak(const MachineSpec& spec, double oi);

/// real rate / attained peak. Throws on a non-positive attained rate.
double attained_efficiency(double real_rate, double attained_rate);

/// Lowered compute roof: peak * ilp_efficiency * simd_scale.
double compute_ceiling(double peak_rate, double ilp_efficiency, double simd_scale);

/// Upper bound under a compute ceiling and a memory ceiling:
/// min(ceiling_rate, bw_ceiling * oi).
double attained_with_ceilings(double ceiling_rate, double bw_ceiling_bytes_per_s, double oi);

/// real rate / ceiling-attained bound. Throws on a non-positive bound.
double ceiling_efficiency(double real_rate, double attained_ceiling_rate);

/// Classic FLOPS roofline for side-by-side comparison:
/// min(oi * bandwidth, peak_flops). Requires flops_per_cycle in the spec.
AttainedPeak classic_flops_attained(const MachineSpec& spec, double oi_flops);

struct Ceiling {
    enum class Kind { Compute, Memory };

    std::string name;
    Kind kind = Kind::Compute;
    /// Compute: rate in BOPs/s. Memory: bandwidth in bytes/s.
    double level = 0;
};

/// The machine's ILP ceiling: SIMD still on, instruction-level parallelism
/// capped at the spec's ilp_efficiency.
Ceiling ilp_ceiling(const MachineSpec& spec);
/// Stacked below the ILP ceiling: additionally without SIMD.
Ceiling simd_ceiling(const MachineSpec& spec);
/// Memory ceiling from a bandwidth measured with prefetching off.
Ceiling prefetch_ceiling(double bandwidth_bytes_per_s);

struct WorkloadPoint {
    std::string name;
    double oi = 0;
    double rate = 0;
};

/// Peak lines, ceilings and workload points, ready for evaluation and
/// plotting. Construction sorts ceilings descending and rejects any ceiling
/// above its peak line.
struct RooflineModel {
    MachineSpec spec;
    std::vector<Ceiling> compute_ceilings;  // descending by rate
    std::vector<Ceiling> memory_ceilings;   // descending by bandwidth
    std::vector<WorkloadPoint> points;

    static RooflineModel build(MachineSpec spec, std::vector<Ceiling> ceilings,
                               std::vector<WorkloadPoint> points);

    double peak() const;
    double bandwidth() const { return spec.mem_bandwidth_peak_bytes_per_s; }
    /// OI where the bandwidth diagonal meets the compute roof.
    double ridge_oi() const;
    /// Roof value at a given OI.
    double roof_at(double oi) const;
    /// Points whose measured rate sits above the roof (measurement and spec
    /// disagree); they are flagged, never clamped.
    std::vector<std::string> inconsistent_points() const;
};

}  // namespace bops::roofline
