// output.hpp — artifact serialization and the run manifest

#pragma once

#include "holo/cli/config.hpp"
#include "holo/linalg.hpp"

#include <string>
#include <vector>

namespace holo::cli {

struct Artifact {
    std::string name;  // file name inside the output directory
    std::string content;
};

/// Row-major nested arrays of [re, im] pairs.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& v);

std::string csv_document(const std::string& header, const std::vector<std::string>& rows);
std::string json_document(const json& v);

/// Config echo, seed, resolution, wall time, artifact version and file list.
json run_manifest(const RunConfig& rc, double wall_seconds, const std::string& started_utc,
                  const std::vector<Artifact>& artifacts);

std::string utc_timestamp();
std::string artifact_version();

/// Creates `dir` if needed and writes every artifact; throws std::runtime_error on I/O failure.
void write_artifacts(const std::string& dir, const std::vector<Artifact>& artifacts);

}  // namespace holo::cli
