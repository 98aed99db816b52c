#include "holo/cli/config.hpp"

#include "holo/gates.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace holo::cli {

namespace {

json number(const std::string& desc) { return {{"type", "number"}, {"description", desc}}; }

json positive(const std::string& desc) {
    return {{"type", "number"}, {"exclusiveMinimum", 0}, {"description", desc}};
}

json integer_min(int lo, const std::string& desc) {
    return {{"type", "integer"}, {"minimum", lo}, {"description", desc}};
}

json complex_schema() {
    return {{"type", "array"}, {"items", {{"type", "number"}}}, {"minItems", 2}, {"maxItems", 2},
            {"description", "complex number as [re, im]"}};
}

json complex_list_schema(int min_items, const std::string& desc) {
    return {{"type", "array"}, {"items", complex_schema()}, {"minItems", min_items}, {"description", desc}};
}

json number_list(int min_items, const std::string& desc, bool strictly_positive = true) {
    json item = {{"type", "number"}};
    if (strictly_positive) item["exclusiveMinimum"] = 0;
    return {{"type", "array"}, {"items", item}, {"minItems", min_items}, {"description", desc}};
}

json object(json properties, std::vector<std::string> required) {
    json o = {{"type", "object"}, {"properties", std::move(properties)}, {"additionalProperties", false}};
    if (!required.empty()) o["required"] = required;
    return o;
}

json pacman_schema() {
    return object(
        {{"profile", {{"const", "pacman"}}},
         {"R", positive("arc radius in units of |Omega_d|")},
         {"beta", {{"type", "number"}, {"exclusiveMinimum", 0}, {"maximum", 2 * kPi}, {"description", "arc angle"}}},
         {"wraps", integer_min(0, "extra full turns added to the arc")},
         {"solve_for",
          object({{"phase", {{"enum", {"alpha1", "alpha2"}}}}, {"target", number("phase to reach, mod 2pi")}},
                 {"phase", "target"})},
         {"t1", positive("radial segment duration")},
         {"t2", positive("arc segment duration")},
         {"schedule", {{"type", "string"}, {"description", "linear or power(k)"}}}},
        {"profile", "R", "t1", "t2"});
}

json samples_schema() {
    return object({{"profile", {{"const", "samples"}}},
                   {"times", number_list(3, "strictly increasing, first entry 0", false)},
                   {"values", complex_list_schema(3, "f(t_k); first and last must coincide")}},
                  {"profile", "times", "values"});
}

json loop_schema() { return {{"oneOf", {pacman_schema(), samples_schema()}}}; }

json direction_schema() { return complex_list_schema(1, "unit vector omega, length d"); }

json gate_params() {
    return object({{"loop", loop_schema()},
                   {"direction", direction_schema()},
                   {"arity", {{"enum", {"one", "two"}}}},
                   {"method", {{"enum", {"line", "surface"}}}},
                   {"evolve", {{"type", "boolean"}, {"description", "also run the Schroedinger evolution"}}},
                   {"convergence_tolerance", positive("halving-step tolerance for the evolution")}},
                  {"loop", "direction"});
}

json transport_params() {
    return object({{"loop", loop_schema()},
                   {"direction", direction_schema()},
                   {"frame", {{"enum", {"single", "two_atom"}}}},
                   {"route", {{"enum", {"frame", "tangent"}}}}},
                  {"loop", "direction"});
}

json gap_params() {
    return object(
        {{"W_grid", number_list(1, "interaction strengths")},
         {"R", positive("arc radius")},
         {"beta", positive("arc angle")},
         {"arc_points", integer_min(1, "samples along the arc")},
         {"random", object({{"W", positive("interaction strength")},
                            {"count", integer_min(1, "random parameter points")},
                            {"max_amplitude", positive("|Omega_a| drawn uniformly in the disc")}},
                           {"W", "count"})},
         {"frame_check", object({{"d_list", {{"type", "array"}, {"items", {{"type", "integer"}, {"minimum", 2}}}, {"minItems", 1}}},
                                 {"count", integer_min(1, "random points per d")}},
                                {"d_list", "count"})}},
        {"W_grid", "R"});
}

json time_sweep_params() {
    return object({{"R", positive("arc radius")},
                   {"schedule", {{"type", "string"}, {"description", "linear or power(k)"}}},
                   {"t1_grid", number_list(1, "radial segment durations")},
                   {"t2_grid", number_list(1, "arc segment durations")},
                   {"total_time", positive("if set, t1 = (total_time - t2)/2 and t1_grid is not allowed")},
                   {"gamma_list", number_list(1, "decay rates", false)},
                   {"min_steps", integer_min(64, "lower bound on integrator steps")},
                   {"steps_per_time", positive("integrator steps per unit time")},
                   {"threads", integer_min(0, "worker threads, 0 for hardware concurrency")},
                   {"renormalize", {{"type", "boolean"}}}},
                  {"R", "t2_grid", "gamma_list"});
}

json coherent_params() {
    return object({{"R_list", number_list(1, "arc radii")}, {"epsilon_list", number_list(2, "amplitude errors")}},
                  {"R_list", "epsilon_list"});
}

json stochastic_params() {
    return object({{"loop", loop_schema()},
                   {"direction", direction_schema()},
                   {"sigma2", positive("stationary noise variance")},
                   {"tau_c", positive("correlation time")},
                   {"gamma", {{"type", "number"}, {"minimum", 0}, {"description", "noise coupling"}}},
                   {"n_traj", integer_min(2, "trajectories")},
                   {"dt", positive("time step of noise samples and integrator")},
                   {"initial_state", complex_list_schema(1, "length d or d+2, normalised on load")},
                   {"mode", {{"enum", {"lindblad", "frozen"}}}},
                   {"threads", integer_min(0, "worker threads, 0 for hardware concurrency")}},
                  {"loop", "direction", "n_traj", "dt", "initial_state"});
}

json params_schema(const std::string& name) {
    if (name == "gate") return gate_params();
    if (name == "transport") return transport_params();
    if (name == "gap") return gap_params();
    if (name == "time-sweep") return time_sweep_params();
    if (name == "coherent-sweep") return coherent_params();
    if (name == "stochastic") return stochastic_params();
    throw SchemaError("unknown experiment '" + name + "'");
}

json model_schema() {
    return object({{"d", integer_min(2, "qudit dimension")},
                   {"omega_d", complex_schema()},
                   {"W", {{"type", "number"}, {"minimum", 0}, {"description", "interaction strength"}}},
                   {"gamma", {{"type", "number"}, {"minimum", 0}, {"description", "decay rate of |d>"}}}},
                  {"d"});
}

std::string type_of(const json& v) {
    if (v.is_object()) return "object";
    if (v.is_array()) return "array";
    if (v.is_string()) return "string";
    if (v.is_boolean()) return "boolean";
    if (v.is_number_integer() || v.is_number_unsigned()) return "integer";
    if (v.is_number()) return "number";
    return "null";
}

bool type_matches(const json& v, const std::string& t) {
    const std::string actual = type_of(v);
    if (t == "number") return actual == "number" || actual == "integer";
    if (t == "integer" && actual == "number") {
        const double x = v.get<double>();
        return std::isfinite(x) && x == std::floor(x);
    }
    return actual == t;
}

std::string dump(const json& v) { return v.dump(); }

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {"gate", "transport", "gap", "time-sweep", "coherent-sweep",
                                                   "stochastic"};
    return names;
}

std::string experiment_summary(const std::string& name) {
    if (name == "gate") return "closed-form holonomic gate of a loop, optionally checked by Schroedinger evolution";
    if (name == "transport") return "parallel-transport holonomy compared with the closed-form gate";
    if (name == "gap") return "two-atom spectral gap against W along an arc, quintic roots, frame checks";
    if (name == "time-sweep") return "CZ fidelity over (t1, t2, Gamma) grids";
    if (name == "coherent-sweep") return "gate error under a constant amplitude deformation of the loop";
    if (name == "stochastic") return "trajectory average under OU drive noise against the master equation";
    throw SchemaError("unknown experiment '" + name + "'");
}

json experiment_schema(const std::string& name) {
    json params = params_schema(name);
    return object({{"schema_version", {{"const", kSchemaVersion}}},
                   {"experiment", {{"const", name}}},
                   {"model", model_schema()},
                   {"params", params},
                   {"output", {{"type", "string"}, {"description", "output directory"}}},
                   {"seed", integer_min(0, "random seed")},
                   {"steps", integer_min(64, "integrator steps")}},
                  {"schema_version", "experiment", "model", "params"});
}

std::optional<std::string> schema_violation(const json& v, const json& s, const std::string& path) {
    if (s.contains("oneOf")) {
        int passed = 0;
        std::string first;
        for (const auto& alt : s["oneOf"]) {
            auto err = schema_violation(v, alt, path);
            if (!err) ++passed;
            else if (first.empty()) first = *err;
        }
        if (passed == 1) return std::nullopt;
        if (passed == 0) {
            // point at the alternative selected by a const discriminator when there is one
            for (const auto& alt : s["oneOf"]) {
                if (!v.is_object() || !alt.contains("properties")) continue;
                for (const auto& [key, sub] : alt["properties"].items())
                    if (sub.contains("const") && v.contains(key) && v[key] == sub["const"])
                        return schema_violation(v, alt, path);
            }
            return path + ": matches none of the allowed forms (" + first + ")";
        }
        return path + ": matches more than one allowed form";
    }
    if (s.contains("const") && v != s["const"]) return path + ": expected " + dump(s["const"]) + ", got " + dump(v);
    if (s.contains("enum")) {
        bool found = false;
        for (const auto& e : s["enum"]) found = found || v == e;
        if (!found) return path + ": " + dump(v) + " is not one of " + dump(s["enum"]);
    }
    if (s.contains("type")) {
        const auto t = s["type"].get<std::string>();
        if (!type_matches(v, t)) return path + ": expected " + t + ", got " + type_of(v);
    }
    if (v.is_number()) {
        const double x = v.get<double>();
        if (!std::isfinite(x)) return path + ": must be finite";
        if (s.contains("minimum") && x < s["minimum"].get<double>())
            return path + ": " + dump(v) + " < minimum " + dump(s["minimum"]);
        if (s.contains("exclusiveMinimum") && x <= s["exclusiveMinimum"].get<double>())
            return path + ": " + dump(v) + " must be > " + dump(s["exclusiveMinimum"]);
        if (s.contains("maximum") && x > s["maximum"].get<double>())
            return path + ": " + dump(v) + " > maximum " + dump(s["maximum"]);
    }
    if (v.is_array()) {
        if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
            return path + ": needs at least " + dump(s["minItems"]) + " items";
        if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>())
            return path + ": allows at most " + dump(s["maxItems"]) + " items";
        if (s.contains("items"))
            for (std::size_t i = 0; i < v.size(); ++i)
                if (auto err = schema_violation(v[i], s["items"], path + "[" + std::to_string(i) + "]")) return err;
    }
    if (v.is_object()) {
        if (s.contains("required"))
            for (const auto& key : s["required"])
                if (!v.contains(key.get<std::string>())) return path + ": missing required key '" + key.get<std::string>() + "'";
        const bool closed = s.contains("additionalProperties") && s["additionalProperties"] == false;
        for (const auto& [key, sub] : v.items()) {
            if (s.contains("properties") && s["properties"].contains(key)) {
                if (auto err = schema_violation(sub, s["properties"][key], path + "." + key)) return err;
            } else if (closed) {
                return path + ": unknown key '" + key + "'";
            }
        }
    }
    return std::nullopt;
}

cplx complex_from_json(const json& v) { return {v.at(0).get<double>(), v.at(1).get<double>()}; }

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<cplx> complex_list(const json& v) {
    std::vector<cplx> out;
    for (const auto& z : v) out.push_back(complex_from_json(z));
    return out;
}

Loop loop_from_json(const json& spec, const std::vector<cplx>& direction) {
    if (spec.at("profile") == "samples") {
        auto values = complex_list(spec.at("values"));
        auto times = spec.at("times").get<std::vector<double>>();
        return Loop(std::make_shared<SampledProfile>(std::move(times), std::move(values)), direction);
    }
    PacmanParams p;
    p.R = spec.at("R").get<double>();
    p.t1 = spec.at("t1").get<double>();
    p.t2 = spec.at("t2").get<double>();
    p.schedule = Schedule::parse(spec.value("schedule", std::string("linear")));
    if (spec.contains("solve_for")) {
        const auto& sf = spec["solve_for"];
        const PhaseIndex which = sf.at("phase") == "alpha1" ? PhaseIndex::alpha1 : PhaseIndex::alpha2;
        const BetaSolution sol = solve_beta_for_phase(p.R, sf.at("target").get<double>(), which);
        p.beta = sol.beta;
        p.wraps = sol.wraps;
    } else {
        p.beta = spec.at("beta").get<double>();
        p.wraps = spec.value("wraps", 0);
    }
    return Loop::pacman(p, direction);
}

namespace {

void check(bool ok, const std::string& what) {
    if (!ok) throw SchemaError(what);
}

void check_loop(const json& spec, const ModelConfig& model, const json& direction, const std::string& where) {
    check(direction.size() == static_cast<std::size_t>(model.d),
          where + ".direction: length " + std::to_string(direction.size()) + " does not match d = " + std::to_string(model.d));
    double norm2 = 0.0;
    for (const auto& z : direction) norm2 += std::norm(complex_from_json(z));
    check(std::abs(norm2 - 1.0) <= 1e-9, where + ".direction: must be a unit vector");
    if (spec.at("profile") == "pacman") {
        const bool has_beta = spec.contains("beta");
        const bool has_solve = spec.contains("solve_for");
        check(has_beta != has_solve, where + ".loop: exactly one of 'beta' and 'solve_for' is required");
        check(!(has_solve && spec.contains("wraps")), where + ".loop: 'wraps' is chosen by 'solve_for'");
        try {
            Schedule::parse(spec.value("schedule", std::string("linear")));
        } catch (const std::invalid_argument& e) {
            throw SchemaError(where + ".loop.schedule: " + e.what());
        }
    } else {
        const auto& times = spec.at("times");
        const auto& values = spec.at("values");
        check(times.size() == values.size(), where + ".loop: times and values differ in length");
        check(times[0].get<double>() == 0.0, where + ".loop.times: must start at 0");
        for (std::size_t i = 1; i < times.size(); ++i)
            check(times[i].get<double>() > times[i - 1].get<double>(), where + ".loop.times: must be strictly increasing");
        check(std::abs(complex_from_json(values.front()) - complex_from_json(values.back())) <= 1e-12,
              where + ".loop.values: loop is not closed");
    }
}

void semantic_checks(const RunConfig& rc) {
    const json& p = rc.params;
    const std::string where = "$.params";
    if (rc.experiment == "gate" || rc.experiment == "transport" || rc.experiment == "stochastic")
        check_loop(p.at("loop"), rc.model, p.at("direction"), where);
    if (rc.experiment == "gate" || (rc.experiment == "transport" && p.value("frame", "two_atom") == "two_atom"))
        check(rc.model.W > 0.0 || p.value("arity", "two") == "one", "$.model.W: two-atom frames need W > 0");
    if (rc.experiment == "time-sweep") {
        const bool has_total = p.contains("total_time");
        check(has_total != p.contains("t1_grid"), where + ": exactly one of 't1_grid' and 'total_time' is required");
        if (has_total)
            for (const auto& t2 : p["t2_grid"])
                check(t2.get<double>() < p["total_time"].get<double>(), where + ".t2_grid: entries must be below total_time");
        check(rc.model.W > 0.0, "$.model.W: two-atom frames need W > 0");
        try {
            Schedule::parse(p.value("schedule", std::string("linear")));
        } catch (const std::invalid_argument& e) {
            throw SchemaError(where + ".schedule: " + e.what());
        }
    }
    if (rc.experiment == "stochastic") {
        const auto n = p.at("initial_state").size();
        const auto d = static_cast<std::size_t>(rc.model.d);
        check(n == d || n == d + 2, where + ".initial_state: length must be d or d+2");
        double norm2 = 0.0;
        for (const auto& z : p["initial_state"]) norm2 += std::norm(complex_from_json(z));
        check(norm2 > 0.0, where + ".initial_state: zero vector");
        check(rc.model.gamma == 0.0, "$.model.gamma: stochastic experiment is defined for Gamma = 0");
    }
    if (rc.experiment == "gap" && p.contains("frame_check"))
        for (const auto& d : p["frame_check"]["d_list"]) check(d.get<int>() <= 8, where + ".frame_check.d_list: d must be <= 8");
}

}  // namespace

RunConfig parse_run_config(const json& input, const Overrides& overrides) {
    check(input.is_object(), "$: config must be a JSON object");
    check(input.contains("schema_version"), "$: missing required key 'schema_version'");
    check(input["schema_version"] == kSchemaVersion,
          "$.schema_version: unsupported version " + input["schema_version"].dump() + " (expected \"1\")");
    check(input.contains("experiment") && input["experiment"].is_string(), "$: missing or non-string 'experiment'");
    const auto name = input["experiment"].get<std::string>();
    const auto& names = experiment_names();
    check(std::find(names.begin(), names.end(), name) != names.end(), "$.experiment: unknown experiment '" + name + "'");

    json doc = input;
    if (overrides.steps) doc["steps"] = *overrides.steps;
    if (overrides.seed) doc["seed"] = *overrides.seed;
    if (auto err = schema_violation(doc, experiment_schema(name))) throw SchemaError(*err);

    RunConfig rc;
    rc.experiment = name;
    const json& m = doc["model"];
    rc.model.d = m["d"].get<int>();
    if (m.contains("omega_d")) rc.model.omega_d = complex_from_json(m["omega_d"]);
    rc.model.W = m.value("W", rc.model.W);
    rc.model.gamma = m.value("gamma", 0.0);
    try {
        rc.model.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("$.model: ") + e.what());
    }
    rc.params = doc["params"];
    if (doc.contains("output")) rc.output = doc["output"].get<std::string>();
    rc.seed = doc.value("seed", std::uint64_t{0});
    rc.steps_given = doc.contains("steps");
    rc.steps = doc.value("steps", 4096);
    rc.raw = doc;
    semantic_checks(rc);
    return rc;
}

RunConfig load_run_config(const std::string& path, const Overrides& overrides) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_run_config(doc, overrides);
}

}  // namespace holo::cli
