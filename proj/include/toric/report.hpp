#pragma once

/**
 * @file report.hpp
 * @brief Machine-readable key/value reports: one "key: value" per line,
 *        insertion order, deterministic number formatting.
 */

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace toric {

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class Report {
public:
    void add(const std::string& key, const std::string& value) {
        items_.emplace_back(key, value);
    }
    void add(const std::string& key, const char* value) { add(key, std::string(value)); }
    void add(const std::string& key, bool value) { add(key, value ? "pass" : "fail"); }
    void add(const std::string& key, double value) { add(key, fmt_double(value)); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    void add(const std::string& key, long value) { add(key, std::to_string(value)); }
    void add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }

    const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

    std::string str() const {
        std::string out;
        for (const auto& [k, v] : items_) out += k + ": " + v + "\n";
        return out;
    }

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

}  // namespace toric
