#pragma once

// Experiment report emission: CSV with fixed 12-significant-digit formatting,
// JSON with sorted keys, and the per-run manifest. Identical inputs produce
// byte-identical files.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cubemax {

std::string fmt_g12(double v);

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

void write_text_file(const std::string& path, const std::string& content);

std::string iso8601_utc_now();

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string artifact_version;
    std::string started;
    std::string finished;
    std::string status;  // "ok" | "error: ..."
    std::vector<std::string> outputs;

    std::string to_json() const;
};

}  // namespace cubemax
