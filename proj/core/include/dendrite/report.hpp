#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dendrite {

/// Ordered "key: value" lines, the report format of the command-line tools
/// and batteries. Deterministic: insertion order is emission order.
class Report {
public:
    void add(std::string key, std::string value);
    void add(std::string key, const char* value);
    void add(std::string key, std::int64_t value);
    void add(std::string key, std::uint64_t value);
    void add(std::string key, double value);
    void add(std::string key, bool value);

    const std::vector<std::pair<std::string, std::string>>& lines() const { return lines_; }
    std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> lines_;
};

}  // namespace dendrite
