#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bops/machine_spec.hpp"
#include "bops/measurement.hpp"
#include "bops/roofline/model.hpp"

namespace bops {

/// Everything derived for one workload. Raw inputs stay alongside the
/// derived values so a consumer can recompute every column from the row.
struct ReportRow {
    Measurement measurement;

    double rate = 0;              // tally total / wall time
    double efficiency = 0;        // rate / peak
    bool efficiency_above_unity = false;

    // present only when the measurement carries byte traffic
    std::optional<double> oi;
    std::optional<double> attained_peak_rate;
    std::optional<std::string> binding_side;
    std::optional<double> attained_efficiency;
    bool above_roof = false;

    // one entry per requested compute ceiling: (ceiling name, rate / bound)
    std::vector<std::pair<std::string, double>> ceiling_efficiencies;
};

struct ReportBundle {
    MachineSpec spec;
    double peak = 0;
    std::optional<double> flops_peak;
    std::vector<roofline::Ceiling> ceilings;
    std::vector<ReportRow> rows;
};

/// Derives one row per measurement against the machine spec. Ceiling
/// efficiencies use each compute ceiling against the lowest memory ceiling
/// present (the peak bandwidth when none is given).
ReportBundle build_report(const MachineSpec& spec, const std::vector<Measurement>& measurements,
                          const std::vector<roofline::Ceiling>& ceilings = {});

/// Rendered table, workloads as columns; percentages rounded half-up to
/// whole percent. Rows without byte traffic show n/a in the attained rows.
std::string render_report_text(const ReportBundle& bundle);

/// Structured report with full-precision ratios and the raw fields of every
/// measurement.
std::string report_to_json(const ReportBundle& bundle);

}  // namespace bops
