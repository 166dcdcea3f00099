#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace brush::report {

// FNV-1a 64-bit digest of a byte payload, hex-encoded; stable across runs
// and thread counts by construction of the payloads.
uint64_t fnv1a64(const void* data, size_t n);
std::string digest_hex(const std::string& payload);

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RunReport {
    std::string command;
    std::string inputs_digest;
    std::string outputs_digest;
    double wall_seconds = 0.0;
    std::vector<CriterionResult> criteria;

    bool all_passed() const;
    std::string to_json() const;  // sorted keys, UTF-8
};

void write_file(const std::string& path, const std::string& payload);
std::string read_file(const std::string& path);

}  // namespace brush::report
