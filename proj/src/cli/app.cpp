#include "holo/cli/app.hpp"

#include "holo/cli/config.hpp"
#include "holo/cli/experiments.hpp"
#include "holo/cli/output.hpp"
#include "holo/errors.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>

namespace holo::cli {

namespace {

int report(std::ostream& err, const std::string& kind, const std::string& message, int code) {
    err << json{{"error", kind}, {"message", message}, {"exit", code}}.dump() << std::endl;
    return code;
}

std::string output_dir(const RunConfig& rc, const std::string& flag) {
    if (!flag.empty()) return flag;
    if (rc.output) return *rc.output;
    if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
    return "holo-out";
}

int run_command(const std::string& config_path, const std::string& out_flag, std::optional<int> steps,
                std::optional<std::uint64_t> seed, std::ostream& out) {
    const auto started = utc_timestamp();
    const auto t0 = std::chrono::steady_clock::now();
    Overrides ov;
    ov.steps = steps;
    ov.seed = seed;
    const RunConfig rc = load_run_config(config_path, ov);
    auto artifacts = run_experiment(rc);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    artifacts.push_back({"manifest.json", json_document(run_manifest(rc, wall, started, artifacts))});
    const std::string dir = output_dir(rc, out_flag);
    write_artifacts(dir, artifacts);
    for (const auto& a : artifacts) out << dir << "/" << a.name << "\n";
    return kExitOk;
}

int list_command(const std::string& schema, std::ostream& out) {
    if (!schema.empty()) {
        out << experiment_schema(schema).dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& name : experiment_names()) out << name << "\t" << experiment_summary(name) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Holonomic gates on driven qudit null spaces", "holonomy"};
    app.set_version_flag("--version", artifact_version());
    app.require_subcommand(1);

    std::string config_path, out_flag, schema;
    std::optional<int> steps;
    std::optional<std::uint64_t> seed;
    auto* run = app.add_subcommand("run", "run the experiment described by a JSON config");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--out", out_flag, std::string("output directory (default: config 'output', then $") + kOutDirEnv + ")");
    run->add_option("--steps", steps, "integrator steps")->check(CLI::Range(64, 1 << 26));
    run->add_option("--seed", seed, "random seed");
    auto* list = app.add_subcommand("list", "list experiments, or print one parameter schema");
    list->add_option("--schema", schema, "experiment name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return report(err, "usage", e.what(), kExitSchema);
    }

    try {
        if (*run) return run_command(config_path, out_flag, steps, seed, out);
        return list_command(schema, out);
    } catch (const SchemaError& e) {
        return report(err, "schema", e.what(), kExitSchema);
    } catch (const UnreachablePhaseError& e) {
        return report(err, "unreachable_phase", e.what(), kExitUnreachable);
    } catch (const ConvergenceError& e) {
        return report(err, "convergence", e.what(), kExitUnreachable);
    } catch (const NumericalError& e) {
        return report(err, "numerical", e.what(), kExitNumerical);
    } catch (const std::invalid_argument& e) {
        return report(err, "invalid_argument", e.what(), kExitSchema);
    } catch (const std::exception& e) {
        return report(err, "runtime", e.what(), kExitNumerical);
    }
}

}  // namespace holo::cli
