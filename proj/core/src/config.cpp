#include "tlj/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace tlj {

namespace {
std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}
}  // namespace

KeyValueFile KeyValueFile::parse(std::istream& is) {
    KeyValueFile kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        kv.set(key, value);
    }
    return kv;
}

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    return parse(is);
}

bool KeyValueFile::has(const std::string& key) const { return values_.count(key) > 0; }

std::optional<std::string> KeyValueFile::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string KeyValueFile::require(const std::string& key) const {
    const auto v = get(key);
    if (!v) throw ConfigError("missing required config key: " + key);
    return *v;
}

double KeyValueFile::require_double(const std::string& key) const {
    const std::string s = require(key);
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not a number: " + s);
    }
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
    return has(key) ? require_double(key) : fallback;
}

int KeyValueFile::get_int(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = require_double(key);
    return static_cast<int>(v);
}

bool KeyValueFile::get_bool(const std::string& key, bool fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    if (*v == "1" || *v == "true" || *v == "yes" || *v == "on") return true;
    if (*v == "0" || *v == "false" || *v == "no" || *v == "off") return false;
    throw ConfigError("config key " + key + ": not a boolean: " + *v);
}

std::string KeyValueFile::get_string(const std::string& key, const std::string& fallback) const {
    return get(key).value_or(fallback);
}

Vec3 KeyValueFile::get_vec3(const std::string& key, const Vec3& fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    std::istringstream iss(*v);
    Vec3 out;
    if (!(iss >> out.x >> out.y >> out.z))
        throw ConfigError("config key " + key + ": expected three numbers");
    return out;
}

void KeyValueFile::set(const std::string& key, const std::string& value) {
    if (values_.count(key)) {
        for (auto& [k, v] : order_)
            if (k == key) v = value;
    } else {
        order_.emplace_back(key, value);
    }
    values_[key] = value;
}

void KeyValueFile::set_double(const std::string& key, double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    set(key, buf);
}

void KeyValueFile::set_int(const std::string& key, long value) {
    set(key, std::to_string(value));
}

void KeyValueFile::write(std::ostream& os) const {
    for (const auto& [k, v] : order_) os << k << " = " << v << '\n';
}

void KeyValueFile::write_file(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw Error("cannot write config file " + path);
    write(os);
}

}  // namespace tlj
