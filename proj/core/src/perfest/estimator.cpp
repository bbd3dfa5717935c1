#include "bops/perfest/estimator.hpp"

#include <cmath>

#include "bops/errors.hpp"
#include "bops/kvfile.hpp"

namespace bops::perfest {

void EstimatorProfile::validate() const {
    if (!(packed_integer_multiplier > 0) || !(packed_fp_multiplier > 0) ||
        !(scalar_fp_multiplier > 0))
        throw ConfigError("estimator profile: multipliers must be positive");
}

namespace {
EstimatorProfile profile_from_kv(const KvFile& kv) {
    kv.forbid_unknown({"schema_version", "packed_integer_multiplier", "packed_fp_multiplier",
                       "scalar_fp_multiplier"});
    kv.require_schema_version(1);
    EstimatorProfile p;
    if (auto v = kv.opt_double("packed_integer_multiplier")) p.packed_integer_multiplier = *v;
    if (auto v = kv.opt_double("packed_fp_multiplier")) p.packed_fp_multiplier = *v;
    if (auto v = kv.opt_double("scalar_fp_multiplier")) p.scalar_fp_multiplier = *v;
    p.validate();
    return p;
}
}  // namespace

EstimatorProfile EstimatorProfile::parse(const std::string& text, const std::string& origin) {
    return profile_from_kv(KvFile::parse_string(text, origin));
}

EstimatorProfile EstimatorProfile::load(const std::string& path) {
    return profile_from_kv(KvFile::parse_file(path));
}

namespace {
uint64_t get_counter(const CounterDump& dump, const char* name) {
    auto it = dump.counters.find(name);
    if (it == dump.counters.end())
        throw ConfigError(std::string("counter dump is missing '") + name + "'");
    return it->second;
}
}  // namespace

uint64_t estimate_bops(const CounterDump& dump, const EstimatorProfile& profile) {
    profile.validate();
    const double integer_ins = static_cast<double>(get_counter(dump, "Integer_Ins"));
    const double sse_integer = static_cast<double>(get_counter(dump, "SSE_Integer"));
    const double fp_ins = static_cast<double>(get_counter(dump, "FP_Ins"));
    const double sse_scalar = static_cast<double>(get_counter(dump, "SSE_Scalar"));
    const double sse_packed = static_cast<double>(get_counter(dump, "SSE_Packed"));

    const double integer_all = integer_ins + profile.packed_integer_multiplier * sse_integer;
    const double fp_all = fp_ins + profile.scalar_fp_multiplier * sse_scalar +
                          profile.packed_fp_multiplier * sse_packed;
    return static_cast<uint64_t>(std::llround(integer_all + fp_all));
}

double deviation(uint64_t estimated, uint64_t source_level) {
    if (source_level == 0)
        throw MeasurementError("deviation: the source-level reference count is zero");
    const double e = static_cast<double>(estimated);
    const double s = static_cast<double>(source_level);
    return std::abs(e - s) / s;
}

}  // namespace bops::perfest
