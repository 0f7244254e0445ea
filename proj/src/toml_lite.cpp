// SPDX-License-Identifier: Apache-2.0
#include "pcmp/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pcmp::toml {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw std::runtime_error("config line " + std::to_string(line_no) + ": " + what);
}

std::string trim(const std::string& s) {
    std::size_t lo = 0;
    std::size_t hi = s.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
    return s.substr(lo, hi - lo);
}

/// Strip a trailing comment, respecting double-quoted strings.
std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

Value parse_scalar(const std::string& raw, int line_no) {
    Value v;
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
        v.type = Value::Type::string;
        v.s = raw.substr(1, raw.size() - 2);
        return v;
    }
    if (raw == "true" || raw == "false") {
        v.type = Value::Type::boolean;
        v.b = (raw == "true");
        return v;
    }
    // Integer first; anything with '.', 'e', 'inf', 'nan' falls through to float.
    {
        std::int64_t iv = 0;
        const auto* begin = raw.data();
        const auto* end = raw.data() + raw.size();
        const auto [ptr, ec] = std::from_chars(begin, end, iv);
        if (ec == std::errc{} && ptr == end) {
            v.type = Value::Type::integer;
            v.i = iv;
            v.d = static_cast<double>(iv);
            return v;
        }
    }
    try {
        std::size_t consumed = 0;
        const double dv = std::stod(raw, &consumed);
        if (consumed == raw.size()) {
            v.type = Value::Type::floating;
            v.d = dv;
            return v;
        }
    } catch (const std::exception&) {
        // fall through to error below
    }
    fail(line_no, "cannot parse value '" + raw + "'");
}

Value parse_value(const std::string& raw, int line_no) {
    if (!raw.empty() && raw.front() == '[') {
        if (raw.back() != ']') fail(line_no, "unterminated array");
        Value v;
        v.type = Value::Type::array;
        const std::string inner = raw.substr(1, raw.size() - 2);
        std::string item;
        bool in_string = false;
        for (char c : inner) {
            if (c == '"') in_string = !in_string;
            if (c == ',' && !in_string) {
                const std::string t = trim(item);
                if (!t.empty()) v.array.push_back(parse_scalar(t, line_no));
                item.clear();
            } else {
                item += c;
            }
        }
        const std::string t = trim(item);
        if (!t.empty()) v.array.push_back(parse_scalar(t, line_no));
        return v;
    }
    return parse_scalar(raw, line_no);
}

} // namespace

const Value* Table::find(const std::string& key) const {
    const auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
}

bool Table::get_bool(const std::string& key, bool fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->type != Value::Type::boolean) throw std::runtime_error("config key '" + key + "': expected bool");
    return v->b;
}

std::int64_t Table::get_int(const std::string& key, std::int64_t fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->type != Value::Type::integer) throw std::runtime_error("config key '" + key + "': expected integer");
    return v->i;
}

double Table::get_double(const std::string& key, double fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->type != Value::Type::integer && v->type != Value::Type::floating) {
        throw std::runtime_error("config key '" + key + "': expected number");
    }
    return v->d;
}

std::string Table::get_string(const std::string& key, const std::string& fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->type != Value::Type::string) throw std::runtime_error("config key '" + key + "': expected string");
    return v->s;
}

std::vector<double> Table::get_double_list(const std::string& key,
                                           const std::vector<double>& fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    std::vector<Value> items;
    if (v->type == Value::Type::array) {
        items = v->array;
    } else {
        items = {*v};
    }
    std::vector<double> out;
    for (const Value& item : items) {
        if (item.type != Value::Type::integer && item.type != Value::Type::floating) {
            throw std::runtime_error("config key '" + key + "': expected numeric list");
        }
        out.push_back(item.d);
    }
    return out;
}

std::vector<std::int64_t> Table::get_int_list(const std::string& key,
                                              const std::vector<std::int64_t>& fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    std::vector<Value> items;
    if (v->type == Value::Type::array) {
        items = v->array;
    } else {
        items = {*v};
    }
    std::vector<std::int64_t> out;
    for (const Value& item : items) {
        if (item.type != Value::Type::integer) {
            throw std::runtime_error("config key '" + key + "': expected integer list");
        }
        out.push_back(item.i);
    }
    return out;
}

std::vector<std::string> Table::get_string_list(const std::string& key,
                                                const std::vector<std::string>& fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    std::vector<Value> items;
    if (v->type == Value::Type::array) {
        items = v->array;
    } else {
        items = {*v};
    }
    std::vector<std::string> out;
    for (const Value& item : items) {
        if (item.type != Value::Type::string) {
            throw std::runtime_error("config key '" + key + "': expected string list");
        }
        out.push_back(item.s);
    }
    return out;
}

std::vector<std::string> Table::keys() const {
    std::vector<std::string> out;
    out.reserve(values_.size());
    for (const auto& [k, v] : values_) out.push_back(k);
    return out;
}

Table parse(const std::string& text) {
    Table table;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated table header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(line_no, "empty table name");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string raw = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (raw.empty()) fail(line_no, "empty value for key '" + key + "'");
        const std::string full_key = section.empty() ? key : section + "." + key;
        table.set(full_key, parse_value(raw, line_no));
    }
    return table;
}

Table parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

} // namespace pcmp::toml
