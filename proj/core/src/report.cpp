#include "dendrite/report.hpp"

#include <cstdio>

namespace dendrite {

void Report::add(std::string key, std::string value) { lines_.emplace_back(std::move(key), std::move(value)); }
void Report::add(std::string key, const char* value) { lines_.emplace_back(std::move(key), value); }
void Report::add(std::string key, std::int64_t value) { add(std::move(key), std::to_string(value)); }
void Report::add(std::string key, std::uint64_t value) { add(std::move(key), std::to_string(value)); }
void Report::add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }

void Report::add(std::string key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    add(std::move(key), std::string(buf));
}

std::string Report::str() const {
    std::string out;
    for (const auto& [k, v] : lines_) {
        out += k;
        out += ": ";
        out += v;
        out += "\n";
    }
    return out;
}

}  // namespace dendrite
