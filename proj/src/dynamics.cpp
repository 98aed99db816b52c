#include "holo/dynamics.hpp"

#include "holo/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace holo {

namespace {

CMatrix hamiltonian(const ModelConfig& cfg, const ParameterPoint& p, Arity arity) {
    const Decay decay = cfg.gamma > 0.0 ? Decay::on : Decay::off;
    return arity == Arity::one ? single_atom_hamiltonian(cfg, p, decay) : two_atom_hamiltonian(cfg, p, decay);
}

// Sixth-order Magnus step over [t, t+h] from three Gauss–Legendre nodes.
CMatrix magnus6_step(const ModelConfig& cfg, const Loop& loop, Arity arity, double t, double h) {
    const double c = std::sqrt(15.0) / 10.0;
    auto comm = [](const CMatrix& x, const CMatrix& y) -> CMatrix { return x * y - y * x; };
    const CMatrix a1 = (-kI * h) * hamiltonian(cfg, loop.point(cfg, t + (0.5 - c) * h), arity);
    const CMatrix a2 = (-kI * h) * hamiltonian(cfg, loop.point(cfg, t + 0.5 * h), arity);
    const CMatrix a3 = (-kI * h) * hamiltonian(cfg, loop.point(cfg, t + (0.5 + c) * h), arity);
    const CMatrix b2 = (std::sqrt(15.0) / 3.0) * (a3 - a1);
    const CMatrix b3 = (10.0 / 3.0) * (a3 - 2.0 * a2 + a1);
    const CMatrix c1 = comm(a2, b2);
    const CMatrix c2 = (-1.0 / 60.0) * comm(a2, 2.0 * b3 + c1);
    const CMatrix omega = a2 + b3 / 12.0 + comm(-20.0 * a2 - b3 + c1, b2 + c2) / 240.0;
    return omega.exp();
}

// Symmetric triple-jump composition of the Magnus-6 step: eighth order per step.
CMatrix magnus_propagator(const ModelConfig& cfg, const Loop& loop, int steps, Arity arity) {
    const Index n = arity == Arity::one ? cfg.d + 2 : (cfg.d + 2) * (cfg.d + 2);
    const double g1 = 1.0 / (2.0 - std::pow(2.0, 1.0 / 7.0));
    const double weights[3] = {g1, 1.0 - 2.0 * g1, g1};
    CMatrix U = CMatrix::Identity(n, n);
    for (const auto& seg : loop.segment_grid(steps)) {
        const double h = (seg.end - seg.begin) / seg.steps;
        for (int s = 0; s < seg.steps; ++s) {
            double t = seg.begin + s * h;
            for (double w : weights) {
                U = magnus6_step(cfg, loop, arity, t, w * h) * U;
                t += w * h;
            }
        }
    }
    return U;
}

}  // namespace

std::vector<Index> computational_indices(int d, Arity arity) {
    std::vector<Index> idx;
    if (arity == Arity::one) {
        for (int a = 0; a < d; ++a) idx.push_back(a);
    } else {
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) idx.push_back(pair_index(d, a, b));
    }
    return idx;
}

EvolutionResult schrodinger_evolve(const ModelConfig& cfg, const Loop& loop, int steps, Arity arity,
                                   const EvolveOptions& opts) {
    cfg.validate();
    require(steps >= 64, "schrodinger_evolve: steps must be >= 64");
    require(cfg.d == loop.d(), "schrodinger_evolve: loop direction length does not match d");
    const auto start = std::chrono::steady_clock::now();

    EvolutionResult res;
    res.steps = steps;
    res.arity = arity;
    res.propagator = magnus_propagator(cfg, loop, steps, arity);
    if (opts.check_convergence) {
        const CMatrix coarse = magnus_propagator(cfg, loop, steps / 2, arity);
        res.convergence_change = operator_norm(res.propagator - coarse);
        if (!(res.convergence_change <= opts.tolerance)) {
            std::ostringstream msg;
            msg << "schrodinger_evolve: halving steps " << steps << " -> " << steps / 2
                << " changes the propagator by " << res.convergence_change << " > " << opts.tolerance;
            throw ConvergenceError(msg.str());
        }
    }
    for (Index i : computational_indices(cfg.d, arity)) res.final_norm_per_basis_state.push_back(res.propagator.col(i).norm());
    res.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

GateReport effective_gate(const ModelConfig& cfg, const EvolutionResult& evo, const std::optional<CMatrix>& target,
                          bool renormalize) {
    const auto idx = computational_indices(cfg.d, evo.arity);
    const Index expected = evo.arity == Arity::one ? cfg.d + 2 : (cfg.d + 2) * (cfg.d + 2);
    require(evo.propagator.rows() == expected, "effective_gate: propagator dimension does not match config");
    const auto n = static_cast<Index>(idx.size());
    GateReport rep;
    rep.U.resize(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) rep.U(i, j) = evo.propagator(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    double kept = 0.0;
    for (Index j = 0; j < n; ++j) kept += rep.U.col(j).squaredNorm();
    rep.leakage = std::max(0.0, 1.0 - kept / static_cast<double>(n));
    rep.unitarity_defect = unitarity_defect(rep.U);
    if (target) {
        rep.target = *target;
        CMatrix u = rep.U;
        if (renormalize) {
            for (Index j = 0; j < n; ++j) {
                const double nrm = u.col(j).norm();
                if (nrm > 0.0) u.col(j) /= nrm;
            }
        }
        rep.fidelity = gate_fidelity(u, *target);
    }
    return rep;
}

Loop cz_loop(int d, double R, double t1, double t2, const Schedule& schedule) {
    const BetaSolution sol = solve_beta_for_phase(R, kPi, PhaseIndex::alpha2);
    PacmanParams p;
    p.R = R;
    p.beta = sol.beta;
    p.wraps = sol.wraps;
    p.t1 = t1;
    p.t2 = t2;
    p.schedule = schedule;
    std::vector<cplx> w(static_cast<std::size_t>(d), 0.0);
    w.back() = 1.0;
    return Loop::pacman(p, w);
}

int sweep_steps(const SweepOptions& opts, double T) {
    return std::max(opts.min_steps, static_cast<int>(std::ceil(opts.steps_per_time * T)));
}

SweepRow cz_fidelity(const ModelConfig& cfg, double R, const Schedule& schedule, double t1, double t2,
                     const SweepOptions& opts) {
    const Loop loop = cz_loop(cfg.d, R, t1, t2, schedule);
    const GateReport ideal = analytic_gate(cfg, loop, Arity::two);
    const EvolutionResult evo = schrodinger_evolve(cfg, loop, sweep_steps(opts, loop.duration()), Arity::two);
    const GateReport rep = effective_gate(cfg, evo, ideal.U, opts.renormalize);
    return {t1, t2, cfg.gamma, R, cfg.W, schedule.name(), loop.duration(), *rep.fidelity, rep.leakage};
}

std::vector<SweepRow> fidelity_time_sweep(const ModelConfig& cfg, double R, const Schedule& schedule,
                                          const std::vector<double>& t1_grid, const std::vector<double>& t2_grid,
                                          const std::vector<double>& gamma_list, const SweepOptions& opts) {
    struct Job {
        double t1, t2, gamma;
    };
    std::vector<Job> jobs;
    for (double g : gamma_list)
        for (double t2 : t2_grid)
            for (double t1 : t1_grid) jobs.push_back({t1, t2, g});
    std::vector<SweepRow> rows(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                ModelConfig c = cfg;
                c.gamma = jobs[i].gamma;
                rows[i] = cz_fidelity(c, R, schedule, jobs[i].t1, jobs[i].t2, opts);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned nthreads = opts.threads > 0 ? static_cast<unsigned>(opts.threads) : std::thread::hardware_concurrency();
    nthreads = std::max(1u, std::min<unsigned>(nthreads, static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.gamma, a.t2, a.t1) < std::tie(b.gamma, b.t2, b.t1);
    });
    return rows;
}

std::string sweep_csv_header() { return "t1,t2,gamma,R,W,schedule,T,fidelity,leakage"; }

std::string sweep_csv_row(const SweepRow& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6e,%.6f,%.6f,%s,%.6f,%.10f,%.10e", r.t1, r.t2, r.gamma, r.R, r.W,
                  r.schedule.c_str(), r.T, r.fidelity, r.leakage);
    return buf;
}

}  // namespace holo
