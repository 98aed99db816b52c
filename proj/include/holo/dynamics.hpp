// dynamics.hpp — full Schrödinger evolution along a loop, effective gates, fidelity sweeps

#pragma once

#include "holo/gates.hpp"
#include "holo/linalg.hpp"
#include "holo/loop.hpp"
#include "holo/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace holo {

struct EvolutionResult {
    CMatrix propagator;  // full space, (d+2) or (d+2)² dimensional
    int steps = 0;
    Arity arity = Arity::one;
    std::vector<double> final_norm_per_basis_state;  // computational basis inputs
    double convergence_change = -1.0;                // ‖U(n) − U(n/2)‖, −1 if not checked
    double runtime_seconds = 0.0;
};

struct EvolveOptions {
    bool check_convergence = false;
    double tolerance = 1e-8;  // max allowed ‖U(n) − U(n/2)‖
};

/// Eighth-order one-step integrator (triple-jump composition of a three-node Magnus
/// step) for i dψ/dt = H(λ(t))ψ,
/// including −(iΓ/2)|d⟩⟨d| per atom when Γ > 0. Steps are aligned to loop breakpoints.
EvolutionResult schrodinger_evolve(const ModelConfig& cfg, const Loop& loop, int steps, Arity arity,
                                   const EvolveOptions& opts = {});

/// Indices of |a⟩ or |a,b⟩ (a, b < d) in the ambient space, in product order.
std::vector<Index> computational_indices(int d, Arity arity);

/// Restriction to the computational subspace; fidelity against `target` if given.
GateReport effective_gate(const ModelConfig& cfg, const EvolutionResult& evo,
                          const std::optional<CMatrix>& target = std::nullopt, bool renormalize = false);

/// Pacman loop with α₂ = π at radius R (β solved), direction ω = (0,…,0,1).
Loop cz_loop(int d, double R, double t1, double t2, const Schedule& schedule);

struct SweepRow {
    double t1 = 0.0;
    double t2 = 0.0;
    double gamma = 0.0;
    double R = 0.0;
    double W = 0.0;
    std::string schedule;
    double T = 0.0;
    double fidelity = 0.0;
    double leakage = 0.0;
};

struct SweepOptions {
    int min_steps = 2048;
    double steps_per_time = 8.0;  // steps = max(min_steps, ceil(steps_per_time · T))
    int threads = 0;               // 0: hardware concurrency
    bool renormalize = false;
};

int sweep_steps(const SweepOptions& opts, double T);

/// Two-atom CZ benchmark over the grid; target is the analytic gate of each swept loop.
std::vector<SweepRow> fidelity_time_sweep(const ModelConfig& cfg, double R, const Schedule& schedule,
                                          const std::vector<double>& t1_grid, const std::vector<double>& t2_grid,
                                          const std::vector<double>& gamma_list, const SweepOptions& opts = {});

/// Single point of the sweep.
SweepRow cz_fidelity(const ModelConfig& cfg, double R, const Schedule& schedule, double t1, double t2,
                     const SweepOptions& opts = {});

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

}  // namespace holo
