#include "bops/report.hpp"

#include <charconv>

#include <json.hpp>

#include "bops/errors.hpp"
#include "bops/kvfile.hpp"
#include "bops/metrics.hpp"

namespace bops {

namespace {

/// "28.3 G" style display: three significant digits over 1e9.
std::string format_giga(double rate) {
    char buf[48];
    auto res =
        std::to_chars(buf, buf + sizeof(buf), rate / 1e9, std::chars_format::general, 3);
    return std::string(buf, res.ptr) + " G";
}

std::string format_percent(double ratio) { return std::to_string(percent_half_up(ratio)) + "%"; }

}  // namespace

ReportBundle build_report(const MachineSpec& spec, const std::vector<Measurement>& measurements,
                          const std::vector<roofline::Ceiling>& ceilings) {
    spec.validate();
    if (measurements.empty()) throw ConfigError("report needs at least one measurement");

    ReportBundle bundle;
    bundle.spec = spec;
    bundle.peak = peak_bops(spec);
    if (spec.flops_per_cycle) bundle.flops_peak = peak_flops(spec);
    bundle.ceilings = ceilings;

    double bw_ceiling = spec.mem_bandwidth_peak_bytes_per_s;
    for (const auto& c : ceilings)
        if (c.kind == roofline::Ceiling::Kind::Memory) bw_ceiling = std::min(bw_ceiling, c.level);

    for (const Measurement& m : measurements) {
        m.validate();
        if (!m.tally_present)
            throw ConfigError("measurement '" + m.workload +
                              "' carries no tally (timing-mode run without an adopted "
                              "counting tally)");
        ReportRow row;
        row.measurement = m;
        row.rate = bops_rate(m);
        EfficiencyResult eff = efficiency(row.rate, bundle.peak);
        row.efficiency = eff.value;
        row.efficiency_above_unity = eff.above_unity;

        if (m.bytes_accessed > 0) {
            row.oi = operation_intensity(m);
            roofline::AttainedPeak ap = roofline::attained_peak(spec, *row.oi);
            row.attained_peak_rate = ap.rate;
            row.binding_side = roofline::to_string(ap.side);
            row.attained_efficiency = roofline::attained_efficiency(row.rate, ap.rate);
            row.above_roof = row.rate > ap.rate * (1.0 + 1e-12);
            for (const auto& c : ceilings) {
                if (c.kind != roofline::Ceiling::Kind::Compute) continue;
                double bound = roofline::attained_with_ceilings(c.level, bw_ceiling, *row.oi);
                row.ceiling_efficiencies.emplace_back(
                    c.name, roofline::ceiling_efficiency(row.rate, bound));
            }
        }
        bundle.rows.push_back(std::move(row));
    }
    return bundle;
}

std::string render_report_text(const ReportBundle& bundle) {
    std::vector<std::string> labels = {"real BOPS", "BOPS efficiency", "operation intensity",
                                       "attained peak BOPS", "bound", "BOPS attained efficiency"};
    for (const auto& c : bundle.ceilings)
        if (c.kind == roofline::Ceiling::Kind::Compute)
            labels.push_back("ceiling efficiency (" + c.name + ")");

    std::vector<std::vector<std::string>> columns;
    for (const ReportRow& row : bundle.rows) {
        std::vector<std::string> col;
        col.push_back(row.measurement.workload);
        col.push_back(format_giga(row.rate));
        col.push_back(format_percent(row.efficiency) +
                      (row.efficiency_above_unity ? " (!)" : ""));
        col.push_back(row.oi ? format_double(*row.oi) : "n/a");
        col.push_back(row.attained_peak_rate ? format_giga(*row.attained_peak_rate) : "n/a");
        col.push_back(row.binding_side ? *row.binding_side + (row.above_roof ? " (above roof!)" : "")
                                       : "n/a");
        col.push_back(row.attained_efficiency ? format_percent(*row.attained_efficiency) : "n/a");
        size_t next = 0;
        for (const auto& c : bundle.ceilings) {
            if (c.kind != roofline::Ceiling::Kind::Compute) continue;
            if (next < row.ceiling_efficiencies.size())
                col.push_back(format_percent(row.ceiling_efficiencies[next++].second));
            else
                col.push_back("n/a");
        }
        columns.push_back(std::move(col));
    }

    std::string out;
    out += "machine: " + bundle.spec.name + "\n";
    out += "peak BOPS: " + format_giga(bundle.peak);
    if (bundle.flops_peak) out += "   peak FLOPS: " + format_giga(*bundle.flops_peak);
    out += "\n";
    for (const auto& c : bundle.ceilings) {
        out += "ceiling: " + c.name + " = ";
        out += c.kind == roofline::Ceiling::Kind::Compute
                   ? format_giga(c.level)
                   : format_double(c.level / 1e9) + " GB/s";
        out += "\n";
    }
    out += "\n";

    size_t label_w = 0;
    for (const auto& l : labels) label_w = std::max(label_w, l.size());
    std::vector<size_t> widths(columns.size(), 0);
    for (size_t c = 0; c < columns.size(); ++c)
        for (const auto& cell : columns[c]) widths[c] = std::max(widths[c], cell.size());

    auto pad = [](const std::string& s, size_t w) {
        return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
    };

    out += pad("", label_w);
    for (size_t c = 0; c < columns.size(); ++c) out += "  " + pad(columns[c][0], widths[c]);
    out += "\n";
    for (size_t r = 0; r < labels.size(); ++r) {
        out += pad(labels[r], label_w);
        for (size_t c = 0; c < columns.size(); ++c)
            out += "  " + pad(columns[c][r + 1], widths[c]);
        out += "\n";
    }
    return out;
}

std::string report_to_json(const ReportBundle& bundle) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["machine"]["name"] = bundle.spec.name;
    j["machine"]["num_cpu"] = bundle.spec.num_cpu;
    j["machine"]["num_core"] = bundle.spec.num_core;
    j["machine"]["frequency_hz"] = bundle.spec.frequency_hz;
    j["machine"]["bops_per_cycle"] = bundle.spec.bops_per_cycle;
    if (bundle.spec.flops_per_cycle)
        j["machine"]["flops_per_cycle"] = *bundle.spec.flops_per_cycle;
    j["machine"]["mem_bandwidth_peak_bytes_per_s"] = bundle.spec.mem_bandwidth_peak_bytes_per_s;
    j["machine"]["ilp_efficiency"] = bundle.spec.ilp_efficiency;
    j["machine"]["simd_scale"] = bundle.spec.simd_scale;
    j["peak_bops"] = bundle.peak;
    if (bundle.flops_peak) j["peak_flops"] = *bundle.flops_peak;

    j["ceilings"] = nlohmann::json::array();
    for (const auto& c : bundle.ceilings) {
        nlohmann::json cj;
        cj["name"] = c.name;
        cj["kind"] = c.kind == roofline::Ceiling::Kind::Compute ? "compute" : "memory";
        cj["level"] = c.level;
        j["ceilings"].push_back(cj);
    }

    j["rows"] = nlohmann::json::array();
    for (const ReportRow& row : bundle.rows) {
        nlohmann::json r;
        r["workload"] = row.measurement.workload;
        r["raw"]["arithmetic"] = row.measurement.tally.arithmetic;
        r["raw"]["comparing"] = row.measurement.tally.comparing;
        r["raw"]["addressing"] = row.measurement.tally.addressing;
        r["raw"]["total"] = row.measurement.tally.total();
        r["raw"]["wall_time_s"] = row.measurement.wall_time_s;
        r["raw"]["bytes_accessed"] = row.measurement.bytes_accessed;
        r["raw"]["threads"] = row.measurement.threads;
        r["rate"] = row.rate;
        r["efficiency"] = row.efficiency;
        r["efficiency_percent"] = percent_half_up(row.efficiency);
        r["efficiency_above_unity"] = row.efficiency_above_unity;
        if (row.oi) {
            r["oi"] = *row.oi;
            r["attained_peak"] = *row.attained_peak_rate;
            r["binding_side"] = *row.binding_side;
            r["attained_efficiency"] = *row.attained_efficiency;
            r["attained_efficiency_percent"] = percent_half_up(*row.attained_efficiency);
            r["above_roof"] = row.above_roof;
            r["ceiling_efficiencies"] = nlohmann::json::object();
            for (const auto& [name, value] : row.ceiling_efficiencies)
                r["ceiling_efficiencies"][name] = value;
        }
        j["rows"].push_back(r);
    }
    return j.dump(2) + "\n";
}

}  // namespace bops
