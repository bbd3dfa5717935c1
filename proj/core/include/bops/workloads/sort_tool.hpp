#pragma once

#include <vector>

#include "bops/measurement.hpp"
#include "bops/workloads/run_config.hpp"

namespace bops::workloads {

/// Outcome of one sort run. In counting mode the measurement carries the
/// merged tally and logical byte traffic; in timing mode the tally is absent
/// (tally_present = false) until adopted from a counting run via
/// with_adopted_tally. per_worker_tallies exposes the pre-merge counters so
/// callers can verify the merge lost nothing.
struct SortRunResult {
    Measurement measurement;
    std::vector<BopsTally> per_worker_tallies;
};

/// Sorts n_elements SplitMix64-generated 64-bit keys: the data is split into
/// `threads` chunks, each chunk quicksorted in place (median-of-three), then
/// chunks are merged pairwise. The output is verified ascending and checked
/// to be a permutation of the input; verification failure is fatal.
///
/// Counting mode tallies every element access (addressing), every key or
/// index comparison (comparing) and every index/pivot arithmetic op
/// (arithmetic), exactly as if the sort were written in the kernel language.
/// Timing mode runs the identical code with counting compiled out and times
/// the sort+merge phase only.
SortRunResult run_sort(const RunConfig& cfg);

}  // namespace bops::workloads
