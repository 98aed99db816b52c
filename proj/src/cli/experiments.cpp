#include "holo/cli/experiments.hpp"

#include "holo/dynamics.hpp"
#include "holo/errors.hpp"
#include "holo/gates.hpp"
#include "holo/geometry.hpp"
#include "holo/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace holo::cli {

namespace {

std::vector<cplx> direction_of(const json& p) { return complex_list(p.at("direction")); }

json loop_summary(const Loop& loop) {
    json out = {{"duration", loop.duration()}, {"breakpoints", loop.breakpoints()}};
    if (auto pp = loop.pacman_params()) {
        out["profile"] = "pacman";
        out["R"] = pp->R;
        out["beta"] = pp->beta;
        out["wraps"] = pp->wraps;
        out["arc_angle"] = pp->arc_angle();
        out["t1"] = pp->t1;
        out["t2"] = pp->t2;
        out["schedule"] = pp->schedule.name();
    } else {
        out["profile"] = "samples";
    }
    return out;
}

std::vector<cplx> last_axis(int d) {
    std::vector<cplx> w(static_cast<std::size_t>(d), 0.0);
    w.back() = 1.0;
    return w;
}

ParameterPoint point_on_arc(int d, double R, double theta) {
    std::vector<cplx> amp = last_axis(d);
    amp.back() = std::polar(R, theta);
    return ParameterPoint::from_amplitudes(amp);
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// Frame residuals at random points: null condition, Gram closed forms, inverses,
// and the connection against central differences of the frame.
json frame_check(const ModelConfig& base, const std::vector<int>& d_list, int count, std::uint64_t seed) {
    json out = json::array();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int d : d_list) {
        ModelConfig cfg = base;
        cfg.d = d;
        cfg.gamma = 0.0;
        if (cfg.W <= 0.0) cfg.W = 10.0;
        double null_res = 0.0, gram_res = 0.0, inv_res = 0.0, conn_res = 0.0;
        for (int k = 0; k < count; ++k) {
            std::vector<double> lam(static_cast<std::size_t>(2 * d));
            for (auto& x : lam) x = normal(rng);
            const ParameterPoint p(lam);
            for (FrameKind kind : {FrameKind::single, FrameKind::two_atom}) {
                const NullFrame fr = kind == FrameKind::single ? single_atom_null_frame(cfg, p) : two_atom_null_frame(cfg, p);
                const CMatrix H = kind == FrameKind::single ? single_atom_hamiltonian(cfg, p) : two_atom_hamiltonian(cfg, p);
                for (Index j = 0; j < fr.size(); ++j)
                    null_res = std::max(null_res, (H * fr.basis.col(j)).norm() / cfg.omega_d_abs());
                const CMatrix brute = fr.basis.adjoint() * fr.basis;
                gram_res = std::max(gram_res, (brute - fr.gram).cwiseAbs().maxCoeff() / brute.cwiseAbs().maxCoeff());
                const CMatrix id = CMatrix::Identity(fr.size(), fr.size());
                inv_res = std::max(inv_res, (fr.gram * fr.gram_inv - id).cwiseAbs().maxCoeff());
                const ConnectionSample cs = connection_at(cfg, p, kind);
                const double h = 1e-5;
                for (std::size_t mu = 0; mu < lam.size(); ++mu) {
                    auto lp = lam, lm = lam;
                    lp[mu] += h;
                    lm[mu] -= h;
                    const auto frame_at = [&](const std::vector<double>& l) {
                        return kind == FrameKind::single ? single_atom_null_frame(cfg, ParameterPoint(l)).basis
                                                         : two_atom_null_frame(cfg, ParameterPoint(l)).basis;
                    };
                    const CMatrix fd = (frame_at(lp) - frame_at(lm)) / (2.0 * h);
                    const CMatrix low = fr.basis.adjoint() * fd;
                    conn_res = std::max(conn_res, (low - cs.lowered[mu]).cwiseAbs().maxCoeff() /
                                                      std::max(1.0, low.cwiseAbs().maxCoeff()));
                }
            }
        }
        out.push_back({{"d", d},
                       {"points", count},
                       {"max_null_residual", null_res},
                       {"max_gram_rel_error", gram_res},
                       {"max_inverse_residual", inv_res},
                       {"max_connection_rel_error", conn_res}});
    }
    return out;
}

}  // namespace

std::vector<Artifact> run_gate(const RunConfig& rc) {
    const json& p = rc.params;
    const Loop loop = loop_from_json(p.at("loop"), direction_of(p));
    const Arity arity = p.value("arity", "two") == "one" ? Arity::one : Arity::two;
    const PhaseMethod method = p.value("method", "line") == "surface" ? PhaseMethod::surface : PhaseMethod::line;
    const GateReport gate = analytic_gate(rc.model, loop, arity, method);

    json out = {{"arity", to_string(arity)},
                {"method", to_string(method)},
                {"loop", loop_summary(loop)},
                {"alpha1", gate.alpha1},
                {"alpha2", gate.alpha2},
                {"U", matrix_to_json(gate.U)},
                {"unitarity_defect", gate.unitarity_defect}};
    if (p.value("evolve", false)) {
        EvolveOptions opts;
        if (p.contains("convergence_tolerance")) {
            opts.check_convergence = true;
            opts.tolerance = p["convergence_tolerance"].get<double>();
        }
        const EvolutionResult evo = schrodinger_evolve(rc.model, loop, rc.steps, arity, opts);
        const GateReport eff = effective_gate(rc.model, evo, gate.U);
        out["evolution"] = {{"steps", evo.steps},
                            {"U", matrix_to_json(eff.U)},
                            {"fidelity", *eff.fidelity},
                            {"leakage", eff.leakage},
                            {"convergence_change", evo.convergence_change}};
    }
    return {{"gate.json", json_document(out)}};
}

std::vector<Artifact> run_transport(const RunConfig& rc) {
    const json& p = rc.params;
    const Loop loop = loop_from_json(p.at("loop"), direction_of(p));
    const FrameKind kind = p.value("frame", "two_atom") == "single" ? FrameKind::single : FrameKind::two_atom;
    const TransportRoute route = p.value("route", "frame") == "tangent" ? TransportRoute::tangent : TransportRoute::frame;
    const Holonomy hol = parallel_transport(rc.model, loop, rc.steps, kind, route);
    const Arity arity = kind == FrameKind::single ? Arity::one : Arity::two;
    const GateReport gate = analytic_gate(rc.model, loop, arity);
    const json out = {{"frame", kind == FrameKind::single ? "single" : "two_atom"},
                      {"route", to_string(route)},
                      {"steps", hol.steps},
                      {"loop", loop_summary(loop)},
                      {"U", matrix_to_json(hol.U)},
                      {"U_analytic", matrix_to_json(gate.U)},
                      {"analytic_error", operator_norm(hol.U - gate.U)},
                      {"unitarity_defect", hol.unitarity_defect},
                      {"block_mixing", hol.block_mixing}};
    return {{"holonomy.json", json_document(out)}};
}

std::string gap_csv_header() { return "W,R,theta,D2,gap,asymptotic_gap,max_root_mismatch"; }

std::vector<Artifact> run_gap(const RunConfig& rc) {
    const json& p = rc.params;
    const auto W_grid = p.at("W_grid").get<std::vector<double>>();
    const double R = p.at("R").get<double>();
    const double beta = p.value("beta", kPi);
    const int arc_points = p.value("arc_points", 16);
    const int d = rc.model.d;

    std::vector<double> thetas;
    for (int k = 0; k < arc_points; ++k) thetas.push_back(arc_points == 1 ? 0.0 : beta * k / (arc_points - 1));

    std::vector<std::string> rows;
    json curve = json::array();
    double max_mismatch = 0.0;
    for (double W : W_grid) {
        ModelConfig cfg = rc.model;
        cfg.W = W;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (double th : thetas) {
            const SpectrumReport s = spectral_gap(cfg, point_on_arc(d, R, th));
            max_mismatch = std::max(max_mismatch, s.max_root_mismatch);
            lo = std::min(lo, s.gap);
            hi = std::max(hi, s.gap);
            rows.push_back(fmt("%.6f", W) + "," + fmt("%.6f", R) + "," + fmt("%.12f", th) + "," + fmt("%.12e", s.D2) +
                           "," + fmt("%.12e", s.gap / cfg.omega_d_abs()) + "," +
                           fmt("%.12e", s.asymptotic_gap / cfg.omega_d_abs()) + "," + fmt("%.3e", s.max_root_mismatch));
        }
        curve.push_back({{"W", W}, {"min_gap", lo / rc.model.omega_d_abs()}, {"max_gap", hi / rc.model.omega_d_abs()}});
    }

    // Vanishing interaction: the quintic collapses to x(x² − Ω²)(x² − 4Ω²).
    double limit_error = 0.0;
    {
        ModelConfig cfg = rc.model;
        cfg.W = 0.0;
        for (double th : thetas) {
            const ParameterPoint pt = point_on_arc(d, R, th);
            const double om = std::sqrt(total_drive_sq(cfg, pt));
            const std::vector<double> expect = {-2 * om, -om, 0.0, om, 2 * om};
            const auto roots = quintic_roots(cfg, pt);
            for (std::size_t i = 0; i < 5; ++i) limit_error = std::max(limit_error, std::abs(roots[i] - expect[i]));
        }
    }

    json summary = {{"R", R},
                    {"beta", beta},
                    {"arc_points", arc_points},
                    {"curve", curve},
                    {"max_root_mismatch", max_mismatch},
                    {"zero_W_root_error", limit_error}};
    if (p.contains("random")) {
        const json& r = p["random"];
        ModelConfig cfg = rc.model;
        cfg.W = r.at("W").get<double>();
        const double amax = r.value("max_amplitude", 5.0);
        const int count = r.at("count").get<int>();
        std::mt19937_64 rng(rc.seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double min_gap = std::numeric_limits<double>::infinity();
        double worst_mismatch = 0.0;
        for (int k = 0; k < count; ++k) {
            std::vector<cplx> amp(static_cast<std::size_t>(d));
            for (auto& z : amp) z = std::polar(amax * std::sqrt(unit(rng)), 2 * kPi * unit(rng));
            const SpectrumReport s = spectral_gap(cfg, ParameterPoint::from_amplitudes(amp));
            min_gap = std::min(min_gap, s.gap / cfg.omega_d_abs());
            worst_mismatch = std::max(worst_mismatch, s.max_root_mismatch);
        }
        summary["random"] = {{"W", cfg.W}, {"count", count}, {"max_amplitude", amax}, {"min_gap", min_gap},
                             {"max_root_mismatch", worst_mismatch}};
    }
    if (p.contains("frame_check")) {
        const json& f = p["frame_check"];
        summary["frame_check"] =
            frame_check(rc.model, f.at("d_list").get<std::vector<int>>(), f.at("count").get<int>(), rc.seed + 1);
    }
    return {{"gap.csv", csv_document(gap_csv_header(), rows)}, {"gap_summary.json", json_document(summary)}};
}

std::vector<Artifact> run_time_sweep(const RunConfig& rc) {
    const json& p = rc.params;
    const double R = p.at("R").get<double>();
    const Schedule schedule = Schedule::parse(p.value("schedule", std::string("linear")));
    const auto t2_grid = p.at("t2_grid").get<std::vector<double>>();
    const auto gamma_list = p.at("gamma_list").get<std::vector<double>>();
    SweepOptions opts;
    opts.min_steps = p.value("min_steps", rc.steps_given ? rc.steps : opts.min_steps);
    opts.steps_per_time = p.value("steps_per_time", opts.steps_per_time);
    opts.threads = p.value("threads", 0);
    opts.renormalize = p.value("renormalize", false);

    std::vector<SweepRow> rows;
    if (p.contains("total_time")) {
        const double T = p["total_time"].get<double>();
        for (double t2 : t2_grid) {
            auto part = fidelity_time_sweep(rc.model, R, schedule, {(T - t2) / 2.0}, {t2}, gamma_list, opts);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
            return std::tie(a.gamma, a.t2, a.t1) < std::tie(b.gamma, b.t2, b.t1);
        });
    } else {
        rows = fidelity_time_sweep(rc.model, R, schedule, p.at("t1_grid").get<std::vector<double>>(), t2_grid,
                                   gamma_list, opts);
    }
    std::vector<std::string> lines;
    for (const auto& r : rows) lines.push_back(sweep_csv_row(r));
    return {{"sweep.csv", csv_document(sweep_csv_header(), lines)}};
}

std::vector<Artifact> run_coherent_sweep(const RunConfig& rc) {
    const json& p = rc.params;
    const auto rows = coherent_error_sweep(rc.model, p.at("R_list").get<std::vector<double>>(),
                                           p.at("epsilon_list").get<std::vector<double>>());
    std::vector<std::string> lines;
    for (const auto& r : rows) lines.push_back(coherent_csv_row(r));
    const CoherentSummary s = summarize_coherent(rows);
    json summary = {{"R", s.R}, {"slope", s.slope}, {"c", s.c}};
    if (s.R.size() >= 2) summary["c_exponent"] = loglog_fit(s.R, s.c).slope;
    bool decreasing = true;
    for (std::size_t i = 1; i < s.c.size(); ++i) decreasing = decreasing && (s.R[i] > s.R[i - 1]) == (s.c[i] < s.c[i - 1]);
    summary["c_strictly_decreasing"] = decreasing;
    return {{"coherent.csv", csv_document(coherent_csv_header(), lines)},
            {"coherent_summary.json", json_document(summary)}};
}

std::vector<Artifact> run_stochastic(const RunConfig& rc) {
    const json& p = rc.params;
    const Loop loop = loop_from_json(p.at("loop"), direction_of(p));
    NoiseProcessSpec spec;
    spec.sigma2 = p.value("sigma2", spec.sigma2);
    spec.tau_c = p.value("tau_c", spec.tau_c);
    spec.gamma = p.value("gamma", spec.gamma);
    spec.seed = rc.seed;
    const int d = rc.model.d;
    const auto init = complex_list(p.at("initial_state"));
    CVector psi0 = CVector::Zero(d + 2);
    for (std::size_t i = 0; i < init.size(); ++i) psi0(static_cast<Index>(i)) = init[i];
    psi0.normalize();
    const MasterMode mode = p.value("mode", "lindblad") == "frozen" ? MasterMode::frozen : MasterMode::lindblad;
    const StochasticReport rep = noisy_average_vs_master(rc.model, loop, spec, p.at("n_traj").get<int>(),
                                                         p.at("dt").get<double>(), psi0, mode, p.value("threads", 0));
    const json out = {{"gamma", spec.gamma},
                      {"tau_c", spec.tau_c},
                      {"sigma2", spec.sigma2},
                      {"n_traj", rep.n_traj},
                      {"trace_distance", rep.trace_distance},
                      {"seed", spec.seed},
                      {"trace_distance_half", rep.trace_distance_half},
                      {"relative_change", rep.relative_change},
                      {"max_trace_error", rep.max_trace_error},
                      {"dt", rep.dt},
                      {"coarse_warning", rep.coarse_warning},
                      {"mode", mode == MasterMode::frozen ? "frozen" : "lindblad"},
                      {"master_min_eigenvalue", rep.rho_master.min_eigenvalue()},
                      {"rho_average", matrix_to_json(rep.rho_avg.rho)},
                      {"rho_master", matrix_to_json(rep.rho_master.rho)}};
    return {{"stochastic.json", json_document(out)}};
}

std::vector<Artifact> run_experiment(const RunConfig& rc) {
    if (rc.experiment == "gate") return run_gate(rc);
    if (rc.experiment == "transport") return run_transport(rc);
    if (rc.experiment == "gap") return run_gap(rc);
    if (rc.experiment == "time-sweep") return run_time_sweep(rc);
    if (rc.experiment == "coherent-sweep") return run_coherent_sweep(rc);
    if (rc.experiment == "stochastic") return run_stochastic(rc);
    throw SchemaError("unknown experiment '" + rc.experiment + "'");
}

}  // namespace holo::cli
