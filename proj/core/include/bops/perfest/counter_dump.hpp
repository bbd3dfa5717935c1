#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bops::perfest {

/// Hardware-counter export, reduced to logical counter names. Counts are
/// keyed by the logical names the estimator consumes (Integer_Ins,
/// SSE_Integer, FP_Ins, SSE_Scalar, SSE_Packed for the default profile).
struct CounterDump {
    std::map<std::string, uint64_t> counters;
    std::string machine;
    std::string workload;
    std::optional<double> duration_s;

    bool operator==(const CounterDump&) const = default;
};

/// Maps raw profiler event names to logical counter names. Loaded from a
/// two-column text file; '#' comments allowed.
struct EventMapping {
    std::map<std::string, std::string> raw_to_logical;

    static EventMapping load(const std::string& path);
    static EventMapping parse(const std::string& text, const std::string& origin);
    /// Raw names pass through unchanged (for exports already in logical form).
    static EventMapping identity();
};

/// Logical counters every default-profile export must provide.
const std::vector<std::string>& required_counters();

struct ParsedDump {
    CounterDump dump;
    /// Raw event names that had no mapping and were dropped.
    std::vector<std::string> unmapped_events;
};

/// Parses a counter export: one "raw_event_name,value" pair per line,
/// '@key,value' lines carry metadata (@schema_version, @machine, @workload,
/// @duration_s), '#' starts a comment. Unmapped events are collected as
/// warnings; a missing required counter, a malformed line (reported with its
/// line number) or two raw events mapping onto one logical counter are
/// errors.
ParsedDump parse_counter_export(const std::string& text, const EventMapping& mapping,
                                const std::string& origin,
                                const std::vector<std::string>& required = required_counters());
ParsedDump load_counter_export(const std::string& path, const EventMapping& mapping,
                               const std::vector<std::string>& required = required_counters());

/// Writes a dump in the export format with logical names, so the result
/// re-parses identically under the identity mapping.
std::string serialize_counter_dump(const CounterDump& dump);

}  // namespace bops::perfest
