// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pcmp::toml {

/**
 * Minimal TOML-subset document reader, enough for flat experiment configs:
 * `key = value` pairs, one level of `[table]` headers (keys become
 * "table.key"), `#` comments, and single-line homogeneous arrays. Values are
 * strings, booleans, integers, or floats. Not supported: nested tables,
 * multi-line arrays, dates, inline tables.
 */
struct Value {
    enum class Type { boolean, integer, floating, string, array };
    Type type = Type::string;
    bool b = false;
    std::int64_t i = 0;
    double d = 0.0;
    std::string s;
    std::vector<Value> array;
};

class Table {
public:
    bool has(const std::string& key) const { return values_.count(key) > 0; }

    bool get_bool(const std::string& key, bool fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    /// Scalars promote to one-element lists so axes can be written either way.
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;
    std::vector<std::int64_t> get_int_list(const std::string& key,
                                           const std::vector<std::int64_t>& fallback) const;
    std::vector<std::string> get_string_list(const std::string& key,
                                             const std::vector<std::string>& fallback) const;

    std::vector<std::string> keys() const;

    void set(const std::string& key, Value value) { values_[key] = std::move(value); }

private:
    const Value* find(const std::string& key) const;
    std::map<std::string, Value> values_;
};

/// Throws std::runtime_error with a line number on malformed input.
Table parse(const std::string& text);
Table parse_file(const std::string& path);

} // namespace pcmp::toml
