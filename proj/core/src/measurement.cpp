#include "bops/measurement.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bops/errors.hpp"
#include "bops/kvfile.hpp"

namespace bops {

void Measurement::validate() const {
    auto bad = [&](const std::string& msg) {
        throw ConfigError("measurement '" + workload + "': " + msg);
    };
    if (workload.empty()) bad("workload must be non-empty");
    if (!(wall_time_s > 0)) bad("wall_time_s must be positive");
    if (bytes_accessed < 0) bad("bytes_accessed must be non-negative");
    if (threads < 1) bad("threads must be positive");
}

Measurement with_adopted_tally(const Measurement& timing, const Measurement& counting) {
    auto mismatch = [&](const std::string& what) {
        throw MeasurementError("cannot adopt tally: " + what + " differs between timing and "
                               "counting runs");
    };
    if (timing.workload != counting.workload) mismatch("workload");
    if (timing.n_elements != counting.n_elements) mismatch("n_elements");
    if (timing.seed != counting.seed) mismatch("seed");
    if (timing.threads != counting.threads) mismatch("threads");
    if (!counting.tally_present)
        throw MeasurementError("cannot adopt tally: source run carries no tally");

    Measurement out = timing;
    out.tally = counting.tally;
    out.bytes_accessed = counting.bytes_accessed;
    out.tally_present = true;
    return out;
}

namespace {

Measurement from_kv(const KvFile& kv) {
    kv.forbid_unknown({"schema_version", "workload", "arithmetic", "comparing", "addressing",
                       "wall_time_s", "bytes_accessed", "threads", "tally_present", "n_elements",
                       "seed", "mode"});
    kv.require_schema_version(1);

    Measurement m;
    m.workload = kv.get_string("workload");
    m.tally.arithmetic = kv.get_u64("arithmetic");
    m.tally.comparing = kv.get_u64("comparing");
    m.tally.addressing = kv.get_u64("addressing");
    m.wall_time_s = kv.get_double("wall_time_s");
    m.bytes_accessed = kv.get_double("bytes_accessed");
    m.threads = static_cast<uint32_t>(kv.get_u64("threads"));
    m.tally_present = kv.opt_bool("tally_present").value_or(true);
    m.n_elements = kv.opt_u64("n_elements");
    m.seed = kv.opt_u64("seed");
    m.mode = kv.opt_string("mode");
    m.validate();
    return m;
}

Measurement from_json(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(origin + ": invalid JSON: " + e.what());
    }
    try {
        Measurement m;
        if (j.at("schema_version").get<uint64_t>() != 1)
            throw ConfigError(origin + ": unsupported schema_version");
        m.workload = j.at("workload").get<std::string>();
        m.tally.arithmetic = j.at("arithmetic").get<uint64_t>();
        m.tally.comparing = j.at("comparing").get<uint64_t>();
        m.tally.addressing = j.at("addressing").get<uint64_t>();
        m.wall_time_s = j.at("wall_time_s").get<double>();
        m.bytes_accessed = j.at("bytes_accessed").get<double>();
        m.threads = j.at("threads").get<uint32_t>();
        if (j.contains("tally_present")) m.tally_present = j["tally_present"].get<bool>();
        if (j.contains("n_elements")) m.n_elements = j["n_elements"].get<uint64_t>();
        if (j.contains("seed")) m.seed = j["seed"].get<uint64_t>();
        if (j.contains("mode")) m.mode = j["mode"].get<std::string>();
        m.validate();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(origin + ": bad measurement record: " + e.what());
    }
}

}  // namespace

Measurement parse_measurement(const std::string& text, const std::string& origin) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return from_json(text, origin);
    return from_kv(KvFile::parse_string(text, origin));
}

Measurement read_measurement(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_measurement(ss.str(), path);
}

std::string serialize_measurement(const Measurement& m) {
    KvWriter w;
    w.add("schema_version", uint64_t{1});
    w.add("workload", m.workload);
    if (m.mode) w.add("mode", *m.mode);
    if (m.n_elements) w.add("n_elements", *m.n_elements);
    if (m.seed) w.add("seed", *m.seed);
    w.add("threads", uint64_t{m.threads});
    w.add("wall_time_s", m.wall_time_s);
    w.add("tally_present", m.tally_present);
    w.add("arithmetic", m.tally.arithmetic);
    w.add("comparing", m.tally.comparing);
    w.add("addressing", m.tally.addressing);
    w.add("bytes_accessed", m.bytes_accessed);
    return w.str();
}

std::string measurement_to_json(const Measurement& m) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["workload"] = m.workload;
    if (m.mode) j["mode"] = *m.mode;
    if (m.n_elements) j["n_elements"] = *m.n_elements;
    if (m.seed) j["seed"] = *m.seed;
    j["threads"] = m.threads;
    j["wall_time_s"] = m.wall_time_s;
    j["tally_present"] = m.tally_present;
    j["arithmetic"] = m.tally.arithmetic;
    j["comparing"] = m.tally.comparing;
    j["addressing"] = m.tally.addressing;
    j["bytes_accessed"] = m.bytes_accessed;
    return j.dump(2) + "\n";
}

void write_measurement(const std::string& path, const Measurement& m) {
    std::ofstream out(path);
    if (!out) throw ConfigError(path + ": cannot open for writing");
    bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    out << (json ? measurement_to_json(m) : serialize_measurement(m));
    if (!out) throw ConfigError(path + ": write failed");
}

}  // namespace bops
