#include "cubemax/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "cubemax/version.hpp"
#include "json.hpp"

namespace cubemax {

std::string fmt_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    auto append_row = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out.push_back(',');
            }
            out += cells[i];
        }
        out.push_back('\n');
    };
    append_row(header);
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            throw std::invalid_argument("csv_table: row width mismatch");
        }
        append_row(row);
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    f << content;
    if (!f) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["artifact_version"] = artifact_version.empty() ? kVersion : artifact_version;
    j["started"] = started;
    j["finished"] = finished;
    j["status"] = status;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

}  // namespace cubemax
