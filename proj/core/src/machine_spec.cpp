#include "bops/machine_spec.hpp"

#include "bops/errors.hpp"
#include "bops/kvfile.hpp"

namespace bops {

void MachineSpec::validate() const {
    auto bad = [&](const std::string& msg) {
        throw ConfigError("machine spec '" + name + "': " + msg);
    };
    if (name.empty()) bad("name must be non-empty");
    if (num_cpu < 1) bad("num_cpu must be positive");
    if (num_core < 1) bad("num_core must be positive");
    if (!(frequency_hz > 0)) bad("frequency_hz must be positive");
    if (!(bops_per_cycle > 0)) bad("bops_per_cycle must be positive");
    if (flops_per_cycle && !(*flops_per_cycle > 0)) bad("flops_per_cycle must be positive");
    if (!(mem_bandwidth_peak_bytes_per_s > 0)) bad("mem_bandwidth_peak_bytes_per_s must be positive");
    if (!(ilp_efficiency > 0) || ilp_efficiency > 1) bad("ilp_efficiency must be in (0, 1]");
    if (!(simd_scale > 0) || simd_scale > 1) bad("simd_scale must be in (0, 1]");
}

namespace {

MachineSpec from_kv(const KvFile& kv) {
    kv.forbid_unknown({"schema_version", "name", "num_cpu", "num_core", "frequency_hz",
                       "bops_per_cycle", "flops_per_cycle", "mem_bandwidth_peak_bytes_per_s",
                       "ilp_efficiency", "simd_scale"});
    kv.require_schema_version(1);

    MachineSpec spec;
    spec.name = kv.get_string("name");
    spec.num_cpu = static_cast<uint32_t>(kv.get_u64("num_cpu"));
    spec.num_core = static_cast<uint32_t>(kv.get_u64("num_core"));
    spec.frequency_hz = kv.get_double("frequency_hz");
    spec.bops_per_cycle = kv.get_double("bops_per_cycle");
    spec.flops_per_cycle = kv.opt_double("flops_per_cycle");
    spec.mem_bandwidth_peak_bytes_per_s = kv.get_double("mem_bandwidth_peak_bytes_per_s");
    spec.ilp_efficiency = kv.get_double("ilp_efficiency");
    spec.simd_scale = kv.get_double("simd_scale");
    spec.validate();
    return spec;
}

}  // namespace

MachineSpec parse_machine_spec(const std::string& text, const std::string& origin) {
    return from_kv(KvFile::parse_string(text, origin));
}

MachineSpec load_machine_spec(const std::string& path) { return from_kv(KvFile::parse_file(path)); }

}  // namespace bops
