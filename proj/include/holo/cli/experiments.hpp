// experiments.hpp — the experiment registry behind `holonomy run`

#pragma once

#include "holo/cli/config.hpp"
#include "holo/cli/output.hpp"

#include <vector>

namespace holo::cli {

/// Runs the configured experiment and returns its artifacts (manifest excluded).
/// Nothing is written to disk here.
std::vector<Artifact> run_experiment(const RunConfig& rc);

std::vector<Artifact> run_gate(const RunConfig& rc);
std::vector<Artifact> run_transport(const RunConfig& rc);
std::vector<Artifact> run_gap(const RunConfig& rc);
std::vector<Artifact> run_time_sweep(const RunConfig& rc);
std::vector<Artifact> run_coherent_sweep(const RunConfig& rc);
std::vector<Artifact> run_stochastic(const RunConfig& rc);

std::string gap_csv_header();

}  // namespace holo::cli
