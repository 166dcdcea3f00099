#include "brush/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace brush::report {

uint64_t fnv1a64(const void* data, size_t n) {
    const auto* p = static_cast<const uint8_t*>(data);
    uint64_t h = 1469598103934665603ull;
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest_hex(const std::string& payload) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(payload.data(), payload.size())));
    return buf;
}

bool RunReport::all_passed() const {
    for (const auto& c : criteria)
        if (!c.passed) return false;
    return true;
}

std::string RunReport::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["inputs_digest"] = inputs_digest;
    j["outputs_digest"] = outputs_digest;
    j["wall_seconds"] = wall_seconds;
    j["passed"] = all_passed();
    auto& arr = j["criteria"] = nlohmann::json::array();
    auto& failures = j["failures"] = nlohmann::json::array();
    for (const auto& c : criteria) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["passed"] = c.passed;
        jc["detail"] = c.detail;
        arr.push_back(jc);
        if (!c.passed) failures.push_back(c.name);
    }
    return j.dump(2);
}

void write_file(const std::string& path, const std::string& payload) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace brush::report
