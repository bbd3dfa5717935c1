#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bops/tally.hpp"

namespace bops {

/// One workload run: the operation tally plus wall time and logical byte
/// traffic. tally_present is false for timing-mode runs that have not adopted
/// a counting-mode tally yet.
struct Measurement {
    std::string workload;
    BopsTally tally;
    double wall_time_s = 0;
    double bytes_accessed = 0;
    uint32_t threads = 1;
    bool tally_present = true;

    // Run provenance, used to pair timing-mode runs with counting-mode
    // tallies. Absent on hand-written measurement records.
    std::optional<uint64_t> n_elements;
    std::optional<uint64_t> seed;
    std::optional<std::string> mode;

    void validate() const;  ///< throws ConfigError on invariant violations
};

/// Copies the tally and byte traffic of a counting-mode run onto a
/// timing-mode run of the identical configuration. Throws MeasurementError
/// when workload, n_elements, seed or threads disagree, or when the source
/// carries no tally.
Measurement with_adopted_tally(const Measurement& timing, const Measurement& counting);

/// Measurement record file: "key = value" lines, or a JSON object with the
/// same field names (detected by a leading '{').
Measurement read_measurement(const std::string& path);
Measurement parse_measurement(const std::string& text, const std::string& origin);
std::string serialize_measurement(const Measurement& m);
std::string measurement_to_json(const Measurement& m);
void write_measurement(const std::string& path, const Measurement& m);

}  // namespace bops
