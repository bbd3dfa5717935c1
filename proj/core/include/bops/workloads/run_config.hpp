#pragma once

#include <cstdint>
#include <string>

namespace bops::workloads {

enum class WorkloadKind { Sort, StreamTriad };
enum class RunMode { Counting, Timing };

std::string to_string(WorkloadKind kind);
std::string to_string(RunMode mode);

struct RunConfig {
    WorkloadKind workload = WorkloadKind::Sort;
    uint64_t n_elements = 0;
    uint64_t seed = 0;
    uint32_t threads = 1;
    RunMode mode = RunMode::Counting;
    uint64_t iterations = 1;  ///< StreamTriad passes
    /// StreamTriad: when non-zero, each array must exceed this last-level
    /// cache size by 4x or the run is rejected.
    uint64_t llc_bytes = 0;

    void validate() const;  ///< throws ConfigError
};

}  // namespace bops::workloads
