#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bops {

/// Line-oriented "key = value" file. '#' starts a comment, blank lines are
/// skipped, duplicate keys are rejected. This is the on-disk format shared by
/// machine specs, measurements and estimator profiles.
class KvFile {
public:
    static KvFile parse_file(const std::string& path);
    static KvFile parse_string(const std::string& text, const std::string& origin);

    const std::string& origin() const { return origin_; }

    bool has(const std::string& key) const;

    /// Typed accessors. The non-optional forms throw ConfigError when the key
    /// is missing or the value does not parse.
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    uint64_t get_u64(const std::string& key) const;
    int64_t get_i64(const std::string& key) const;
    bool get_bool(const std::string& key) const;

    std::optional<std::string> opt_string(const std::string& key) const;
    std::optional<double> opt_double(const std::string& key) const;
    std::optional<uint64_t> opt_u64(const std::string& key) const;
    std::optional<bool> opt_bool(const std::string& key) const;

    /// Rejects any key outside `allowed` (ConfigError naming the key and line).
    void forbid_unknown(const std::vector<std::string>& allowed) const;

    /// Requires schema_version to be present and equal to `expected`.
    void require_schema_version(uint64_t expected) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    struct Entry {
        std::string key;
        std::string value;
        int line = 0;
    };

    const Entry* find(const std::string& key) const;
    [[noreturn]] void fail(const std::string& message) const;

    std::string origin_;
    std::vector<Entry> raw_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Serialization helper producing the same format parse_string accepts.
class KvWriter {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, uint64_t value);
    void add(const std::string& key, int64_t value);
    void add(const std::string& key, double value);
    void add(const std::string& key, bool value);
    void comment(const std::string& text);

    const std::string& str() const { return out_; }

private:
    std::string out_;
};

/// Locale-independent shortest round-trip formatting for doubles.
std::string format_double(double v);

}  // namespace bops
