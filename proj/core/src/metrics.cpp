#include "bops/metrics.hpp"

#include <cmath>

#include "bops/errors.hpp"

namespace bops {

double peak_bops(const MachineSpec& spec) {
    return static_cast<double>(spec.num_cpu) * static_cast<double>(spec.num_core) *
           spec.frequency_hz * spec.bops_per_cycle;
}

double peak_flops(const MachineSpec& spec) {
    if (!spec.flops_per_cycle)
        throw ConfigError("machine spec '" + spec.name +
                          "' has no flops_per_cycle; comparison mode unavailable");
    return static_cast<double>(spec.num_cpu) * static_cast<double>(spec.num_core) *
           spec.frequency_hz * *spec.flops_per_cycle;
}

double bops_rate(const Measurement& m) {
    if (!(m.wall_time_s > 0))
        throw MeasurementError("bops_rate: wall_time_s must be positive");
    return static_cast<double>(m.tally.total()) / m.wall_time_s;
}

EfficiencyResult efficiency(double real_rate, double peak_rate) {
    if (!(peak_rate > 0)) throw MeasurementError("efficiency: peak rate must be positive");
    EfficiencyResult r;
    r.value = real_rate / peak_rate;
    r.above_unity = r.value > 1.0;
    return r;
}

double operation_intensity(const Measurement& m) {
    if (!(m.bytes_accessed > 0))
        throw UndefinedIntensity("operation intensity undefined: no byte traffic recorded for '" +
                                 m.workload + "'");
    return static_cast<double>(m.tally.total()) / m.bytes_accessed;
}

int percent_half_up(double ratio) {
    return static_cast<int>(std::floor(ratio * 100.0 + 0.5));
}

}  // namespace bops
