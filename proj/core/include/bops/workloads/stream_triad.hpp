#pragma once

#include <vector>

#include "bops/measurement.hpp"
#include "bops/workloads/run_config.hpp"

namespace bops::workloads {

/// Outcome of a stream-triad run. best_bandwidth_bytes_per_s is the headline
/// number (3 arrays x 8 bytes x n / best pass time) and is what belongs in a
/// machine spec's mem_bandwidth_peak_bytes_per_s. The measurement aggregates
/// all passes with the kernel's closed-form tally so the run can sit on a
/// roofline plot.
struct StreamResult {
    double best_bandwidth_bytes_per_s = 0;
    std::vector<double> pass_times_s;
    Measurement measurement;
};

/// a[i] = b[i] + s * c[i] over n elements, `iterations` passes, partitioned
/// across cfg.threads workers with a barrier between passes.
StreamResult run_stream_triad(const RunConfig& cfg);

}  // namespace bops::workloads
