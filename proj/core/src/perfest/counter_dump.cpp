#include "bops/perfest/counter_dump.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "bops/errors.hpp"
#include "bops/kvfile.hpp"

namespace bops::perfest {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

const std::vector<std::string>& required_counters() {
    static const std::vector<std::string> k = {"Integer_Ins", "SSE_Integer", "FP_Ins",
                                               "SSE_Scalar", "SSE_Packed"};
    return k;
}

EventMapping EventMapping::identity() { return EventMapping{}; }

EventMapping EventMapping::parse(const std::string& text, const std::string& origin) {
    EventMapping m;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string raw, logical, extra;
        if (!(fields >> raw)) continue;
        if (!(fields >> logical) || (fields >> extra))
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'raw_event logical_name'");
        if (m.raw_to_logical.count(raw))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": raw event '" + raw +
                              "' mapped twice");
        m.raw_to_logical[raw] = logical;
    }
    return m;
}

EventMapping EventMapping::load(const std::string& path) {
    return parse(read_file(path), path);
}

ParsedDump parse_counter_export(const std::string& text, const EventMapping& mapping,
                                const std::string& origin,
                                const std::vector<std::string>& required) {
    ParsedDump out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;

        size_t comma = t.find(',');
        if (comma == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'event_name,value', got '" + t + "'");
        std::string name = trim(t.substr(0, comma));
        std::string value = trim(t.substr(comma + 1));
        if (name.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty event name");

        if (name[0] == '@') {
            std::string key = name.substr(1);
            if (key == "schema_version") {
                if (value != "1")
                    throw ConfigError(origin + ":" + std::to_string(lineno) +
                                      ": unsupported schema_version " + value);
            } else if (key == "machine") {
                out.dump.machine = value;
            } else if (key == "workload") {
                out.dump.workload = value;
            } else if (key == "duration_s") {
                double d = 0;
                auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), d);
                if (ec != std::errc() || p != value.data() + value.size())
                    throw ConfigError(origin + ":" + std::to_string(lineno) +
                                      ": bad duration_s '" + value + "'");
                out.dump.duration_s = d;
            } else {
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": unknown metadata key '@" + key + "'");
            }
            continue;
        }

        uint64_t count = 0;
        auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), count);
        if (ec != std::errc() || p != value.data() + value.size())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": event '" + name +
                              "': '" + value + "' is not a non-negative integer");

        std::string logical;
        if (mapping.raw_to_logical.empty()) {
            logical = name;  // identity mapping
        } else {
            auto it = mapping.raw_to_logical.find(name);
            if (it == mapping.raw_to_logical.end()) {
                out.unmapped_events.push_back(name);
                continue;
            }
            logical = it->second;
        }
        if (out.dump.counters.count(logical))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": logical counter '" +
                              logical + "' provided twice");
        out.dump.counters[logical] = count;
    }

    std::string missing;
    for (const auto& r : required)
        if (!out.dump.counters.count(r)) missing += missing.empty() ? r : ", " + r;
    if (!missing.empty())
        throw ConfigError(origin + ": missing required counters: " + missing);
    return out;
}

ParsedDump load_counter_export(const std::string& path, const EventMapping& mapping,
                               const std::vector<std::string>& required) {
    return parse_counter_export(read_file(path), mapping, path, required);
}

std::string serialize_counter_dump(const CounterDump& dump) {
    std::string out;
    out += "@schema_version,1\n";
    if (!dump.machine.empty()) out += "@machine," + dump.machine + "\n";
    if (!dump.workload.empty()) out += "@workload," + dump.workload + "\n";
    if (dump.duration_s) out += "@duration_s," + format_double(*dump.duration_s) + "\n";
    for (const auto& [name, count] : dump.counters)
        out += name + "," + std::to_string(count) + "\n";
    return out;
}

}  // namespace bops::perfest
