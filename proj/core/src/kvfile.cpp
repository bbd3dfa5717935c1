#include "bops/kvfile.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "bops/errors.hpp"

namespace bops {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

KvFile KvFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

KvFile KvFile::parse_string(const std::string& text, const std::string& origin) {
    KvFile kv;
    kv.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + t + "'");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        for (const auto& e : kv.raw_)
            if (e.key == key)
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                                  key + "' (first on line " + std::to_string(e.line) + ")");
        kv.raw_.push_back({key, value, lineno});
        kv.entries_.emplace_back(key, value);
    }
    return kv;
}

const KvFile::Entry* KvFile::find(const std::string& key) const {
    for (const auto& e : raw_)
        if (e.key == key) return &e;
    return nullptr;
}

void KvFile::fail(const std::string& message) const {
    throw ConfigError(origin_ + ": " + message);
}

bool KvFile::has(const std::string& key) const { return find(key) != nullptr; }

std::string KvFile::get_string(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) fail("missing required key '" + key + "'");
    return e->value;
}

std::optional<std::string> KvFile::opt_string(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    return e->value;
}

double KvFile::get_double(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) fail("missing required key '" + key + "'");
    const std::string& v = e->value;
    double out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        fail("key '" + key + "': '" + v + "' is not a number (line " + std::to_string(e->line) +
             ")");
    return out;
}

uint64_t KvFile::get_u64(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) fail("missing required key '" + key + "'");
    const std::string& v = e->value;
    uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        fail("key '" + key + "': '" + v + "' is not a non-negative integer (line " +
             std::to_string(e->line) + ")");
    return out;
}

int64_t KvFile::get_i64(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) fail("missing required key '" + key + "'");
    const std::string& v = e->value;
    int64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        fail("key '" + key + "': '" + v + "' is not an integer (line " + std::to_string(e->line) +
             ")");
    return out;
}

bool KvFile::get_bool(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) fail("missing required key '" + key + "'");
    if (e->value == "true") return true;
    if (e->value == "false") return false;
    fail("key '" + key + "': expected true or false, got '" + e->value + "' (line " +
         std::to_string(e->line) + ")");
    return false;
}

std::optional<double> KvFile::opt_double(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return get_double(key);
}

std::optional<uint64_t> KvFile::opt_u64(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return get_u64(key);
}

std::optional<bool> KvFile::opt_bool(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return get_bool(key);
}

void KvFile::forbid_unknown(const std::vector<std::string>& allowed) const {
    for (const auto& e : raw_) {
        bool ok = false;
        for (const auto& k : allowed)
            if (k == e.key) {
                ok = true;
                break;
            }
        if (!ok)
            throw ConfigError(origin_ + ":" + std::to_string(e.line) + ": unknown key '" + e.key +
                              "'");
    }
}

void KvFile::require_schema_version(uint64_t expected) const {
    if (!has("schema_version")) fail("missing required key 'schema_version'");
    uint64_t v = get_u64("schema_version");
    if (v != expected)
        fail("unsupported schema_version " + std::to_string(v) + " (expected " +
             std::to_string(expected) + ")");
}

void KvWriter::add(const std::string& key, const std::string& value) {
    out_ += key;
    out_ += " = ";
    out_ += value;
    out_ += '\n';
}

void KvWriter::add(const std::string& key, uint64_t value) { add(key, std::to_string(value)); }
void KvWriter::add(const std::string& key, int64_t value) { add(key, std::to_string(value)); }
void KvWriter::add(const std::string& key, double value) { add(key, format_double(value)); }
void KvWriter::add(const std::string& key, bool value) {
    add(key, std::string(value ? "true" : "false"));
}

void KvWriter::comment(const std::string& text) {
    out_ += "# ";
    out_ += text;
    out_ += '\n';
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace bops
