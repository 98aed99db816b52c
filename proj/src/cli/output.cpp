#include "holo/cli/output.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#ifndef HOLO_VERSION
#define HOLO_VERSION "unknown"
#endif

namespace holo::cli {

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json& v) {
    const auto n = static_cast<Index>(v.size());
    const auto m = n == 0 ? Index{0} : static_cast<Index>(v[0].size());
    CMatrix out(n, m);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < m; ++j) out(i, j) = complex_from_json(v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return out;
}

std::string csv_document(const std::string& header, const std::vector<std::string>& rows) {
    std::string out = header + "\n";
    for (const auto& r : rows) out += r + "\n";
    return out;
}

std::string json_document(const json& v) { return v.dump(2) + "\n"; }

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string artifact_version() { return HOLO_VERSION; }

json run_manifest(const RunConfig& rc, double wall_seconds, const std::string& started_utc,
                  const std::vector<Artifact>& artifacts) {
    json files = json::array();
    for (const auto& a : artifacts) files.push_back(a.name);
    return {{"artifact", "holonomy"},
            {"version", artifact_version()},
            {"schema_version", kSchemaVersion},
            {"experiment", rc.experiment},
            {"config", rc.raw},
            {"seed", rc.seed},
            {"steps", rc.steps},
            {"started_utc", started_utc},
            {"wall_time_seconds", wall_seconds},
            {"outputs", files}};
}

void write_artifacts(const std::string& dir, const std::vector<Artifact>& artifacts) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
    for (const auto& a : artifacts) {
        const fs::path path = fs::path(dir) / a.name;
        std::ofstream out(path, std::ios::binary);
        out << a.content;
        if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    }
}

}  // namespace holo::cli
