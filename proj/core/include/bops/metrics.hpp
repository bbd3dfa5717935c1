#pragma once

#include "bops/machine_spec.hpp"
#include "bops/measurement.hpp"

namespace bops {

/// Peak basic-operation rate of a machine:
/// num_cpu * num_core * frequency_hz * bops_per_cycle.
double peak_bops(const MachineSpec& spec);

/// Peak floating-point rate (comparison mode). Throws ConfigError when the
/// spec carries no flops_per_cycle.
double peak_flops(const MachineSpec& spec);

/// Average rate of a run: tally total / wall time. Rejects non-positive time.
double bops_rate(const Measurement& m);

struct EfficiencyResult {
    double value = 0;
    /// real exceeded the configured peak; the measurement and the machine
    /// spec disagree and the report should say so.
    bool above_unity = false;
};

/// real_rate / peak_rate. Values above 1 are returned, flagged.
EfficiencyResult efficiency(double real_rate, double peak_rate);

/// Basic operations per byte of memory traffic. Throws UndefinedIntensity
/// when the measurement has no byte traffic.
double operation_intensity(const Measurement& m);

/// Display rounding used in rendered reports: ratio to whole percent,
/// half-up.
int percent_half_up(double ratio);

}  // namespace bops
