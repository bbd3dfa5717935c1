#pragma once

#include <optional>
#include <string>

namespace bops {

/// Micro-architecture parameters needed for peak rates and roofline geometry.
/// Loaded from a key-value spec file; never auto-detected.
struct MachineSpec {
    std::string name;
    uint32_t num_cpu = 1;        ///< sockets
    uint32_t num_core = 1;       ///< cores per CPU
    double frequency_hz = 0;     ///< per-core clock
    double bops_per_cycle = 0;   ///< issue-width bound on basic ops per core cycle
    std::optional<double> flops_per_cycle;  ///< only needed for the FLOPS comparison mode
    double mem_bandwidth_peak_bytes_per_s = 0;
    double ilp_efficiency = 1.0;  ///< attainable IPC / peak IPC, in (0,1]
    double simd_scale = 1.0;      ///< throughput scale without SIMD, in (0,1]

    /// Throws ConfigError when any invariant is violated.
    void validate() const;
};

/// Reads a machine spec file. Keys are exactly the field names above plus
/// schema_version; unknown keys are errors, flops_per_cycle is optional.
MachineSpec load_machine_spec(const std::string& path);
MachineSpec parse_machine_spec(const std::string& text, const std::string& origin);

}  // namespace bops
