#include "bops/roofline/model.hpp"

#include <algorithm>
#include <cmath>

#include "bops/errors.hpp"
#include "bops/metrics.hpp"

namespace bops::roofline {

std::string to_string(BindingSide side) {
    switch (side) {
        case BindingSide::MemoryBound: return "memory-bound";
        case BindingSide::ComputeBound: return "compute-bound";
        case BindingSide::Ridge: return "ridge";
    }
    return "";
}

AttainedPeak attained_peak(double peak_rate, double bandwidth_bytes_per_s, double oi) {
    if (oi < 0) throw MeasurementError("attained_peak: operation intensity must be >= 0");
    const double memory_side = oi * bandwidth_bytes_per_s;
    AttainedPeak out;
    const double scale = std::max(std::abs(memory_side), std::abs(peak_rate));
    if (std::abs(memory_side - peak_rate) <= 1e-9 * scale) {
        out.rate = peak_rate;
        out.side = BindingSide::Ridge;
    } else if (memory_side < peak_rate) {
        out.rate = memory_side;
        out.side = BindingSide::MemoryBound;
    } else {
        out.rate = peak_rate;
        out.side = BindingSide::ComputeBound;
    }
    return out;
}

AttainedPeak attained_peak(const MachineSpec& spec, double oi) {
    return attained_peak(peak_bops(spec), spec.mem_bandwidth_peak_bytes_per_s, oi);
}

double attained_efficiency(double real_rate, double attained_rate) {
    if (!(attained_rate > 0))
        throw MeasurementError("attained_efficiency: attained peak must be positive");
    return real_rate / attained_rate;
}

double compute_ceiling(double peak_rate, double ilp_efficiency, double simd_scale) {
    return peak_rate * ilp_efficiency * simd_scale;
}

double attained_with_ceilings(double ceiling_rate, double bw_ceiling_bytes_per_s, double oi) {
    if (oi < 0) throw MeasurementError("attained_with_ceilings: operation intensity must be >= 0");
    return std::min(ceiling_rate, bw_ceiling_bytes_per_s * oi);
}

double ceiling_efficiency(double real_rate, double attained_ceiling_rate) {
    if (!(attained_ceiling_rate > 0))
        throw MeasurementError("ceiling_efficiency: attained ceiling bound must be positive");
    return real_rate / attained_ceiling_rate;
}

AttainedPeak classic_flops_attained(const MachineSpec& spec, double oi_flops) {
    return attained_peak(peak_flops(spec), spec.mem_bandwidth_peak_bytes_per_s, oi_flops);
}

Ceiling ilp_ceiling(const MachineSpec& spec) {
    return Ceiling{"ilp", Ceiling::Kind::Compute,
                   compute_ceiling(peak_bops(spec), spec.ilp_efficiency, 1.0)};
}

Ceiling simd_ceiling(const MachineSpec& spec) {
    return Ceiling{"ilp+no-simd", Ceiling::Kind::Compute,
                   compute_ceiling(peak_bops(spec), spec.ilp_efficiency, spec.simd_scale)};
}

Ceiling prefetch_ceiling(double bandwidth_bytes_per_s) {
    if (!(bandwidth_bytes_per_s > 0))
        throw ConfigError("prefetch ceiling bandwidth must be positive");
    return Ceiling{"no-prefetch", Ceiling::Kind::Memory, bandwidth_bytes_per_s};
}

RooflineModel RooflineModel::build(MachineSpec spec, std::vector<Ceiling> ceilings,
                                   std::vector<WorkloadPoint> points) {
    spec.validate();
    RooflineModel m;
    m.spec = std::move(spec);
    const double peak = m.peak();
    const double bw = m.bandwidth();
    for (Ceiling& c : ceilings) {
        if (!(c.level > 0)) throw ConfigError("ceiling '" + c.name + "' must be positive");
        if (c.kind == Ceiling::Kind::Compute) {
            if (c.level > peak)
                throw ConfigError("compute ceiling '" + c.name + "' exceeds the peak rate");
            m.compute_ceilings.push_back(std::move(c));
        } else {
            if (c.level > bw)
                throw ConfigError("memory ceiling '" + c.name + "' exceeds the peak bandwidth");
            m.memory_ceilings.push_back(std::move(c));
        }
    }
    auto desc = [](const Ceiling& a, const Ceiling& b) { return a.level > b.level; };
    std::stable_sort(m.compute_ceilings.begin(), m.compute_ceilings.end(), desc);
    std::stable_sort(m.memory_ceilings.begin(), m.memory_ceilings.end(), desc);

    for (WorkloadPoint& p : points) {
        if (!(p.oi > 0)) throw ConfigError("workload point '" + p.name + "' needs oi > 0");
        if (p.rate < 0) throw ConfigError("workload point '" + p.name + "' needs rate >= 0");
    }
    m.points = std::move(points);
    return m;
}

double RooflineModel::peak() const { return peak_bops(spec); }

double RooflineModel::ridge_oi() const { return peak() / bandwidth(); }

double RooflineModel::roof_at(double oi) const { return attained_peak(spec, oi).rate; }

std::vector<std::string> RooflineModel::inconsistent_points() const {
    std::vector<std::string> out;
    for (const WorkloadPoint& p : points) {
        const double roof = roof_at(p.oi);
        if (p.rate > roof * (1.0 + 1e-12)) out.push_back(p.name);
    }
    return out;
}

}  // namespace bops::roofline
