// noise.hpp — coherent loop deformations, δα bounds, OU drive noise and the averaged master equation

#pragma once

#include "holo/gates.hpp"
#include "holo/linalg.hpp"
#include "holo/loop.hpp"
#include "holo/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace holo {

struct LoopPerturbation {
    TimeFunction epsilon = TimeFunction::constant(0.0);
    TimeFunction phi = TimeFunction::constant(0.0);
    std::optional<double> constant_epsilon = 0.0;  // set when ε is constant and φ ≡ 0

    static LoopPerturbation amplitude(double eps);
    static LoopPerturbation general(TimeFunction epsilon, TimeFunction phi);
};

/// f̃ = (1+ε) f e^{iφ}; direction unchanged.
Loop perturb_loop(const Loop& loop, const LoopPerturbation& pert);

struct DeltaAlpha {
    double exact1 = 0.0;
    double exact2 = 0.0;
    double bound1 = 0.0;  // ∬ over the annulus of |C_i|, NaN when unavailable
    double bound2 = 0.0;
    double leading1 = 0.0;  // first-order closed forms in ε
    double leading2 = 0.0;
    bool bound_available = false;
};

/// Exact δα from line integrals on both loops; the geometric bound and the
/// leading-order forms are filled for constant-ε perturbations of pacman loops.
DeltaAlpha delta_alpha_bound(const Loop& loop, const LoopPerturbation& pert);

/// First-order closed forms δα₁ ≈ εβ·2R²/(1+R²)², δα₂ ≈ εβ·4R⁴(4−R²−2R⁴−6R⁶)/(1+R²+2R⁴+2R⁶)².
double leading_dalpha1(double R, double beta, double eps);
double leading_dalpha2(double R, double beta, double eps);

/// Second-order expansion of the two-qudit gate fidelity in δα₁, δα₂.
double fidelity_expansion(int d, double da1, double da2);

struct CoherentRow {
    double R = 0.0;
    double beta = 0.0;  // total arc angle
    double epsilon = 0.0;
    double dalpha1 = 0.0;
    double dalpha2 = 0.0;
    double bound1 = 0.0;
    double bound2 = 0.0;
    double F_exact = 0.0;
    double F_expansion = 0.0;
};

/// β fixed per R so that α₂ = π; constant-ε deformation; analytic phases.
std::vector<CoherentRow> coherent_error_sweep(const ModelConfig& cfg, const std::vector<double>& R_list,
                                              const std::vector<double>& epsilon_list);

std::string coherent_csv_header();
std::string coherent_csv_row(const CoherentRow& r);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Least-squares fit of log y against log x.
LinearFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

struct CoherentSummary {
    std::vector<double> R;
    std::vector<double> slope;  // of log(1−F) vs log ε at each R
    std::vector<double> c;      // c(R) = (1−F)/(β²ε²), slope fixed at 2
};

CoherentSummary summarize_coherent(const std::vector<CoherentRow>& rows);

// --------------------------------------------------------------------------
// Stochastic drive noise

struct NoiseProcessSpec {
    double sigma2 = 1.0;
    double tau_c = 0.5;
    double gamma = 0.05;
    std::uint64_t seed = 20240611;

    void validate() const;
};

struct TrajectorySet {
    double dt = 0.0;
    int n_steps = 0;
    int n_channels = 0;
    // xi[traj][channel][k] at t_k = k·dt, k = 0…n_steps
    std::vector<std::vector<std::vector<double>>> xi;
    bool coarse_warning = false;
};

/// Generator for trajectory `index`, seeded from (seed, index).
std::vector<std::vector<double>> sample_ou_trajectory(const NoiseProcessSpec& spec, double dt, int n_steps,
                                                      int n_channels, std::uint64_t index);

/// Exact-discretization OU paths; stationary start. dt is adjusted so that T/dt is an integer.
TrajectorySet sample_noise_trajectories(const NoiseProcessSpec& spec, double T, double dt, int n_channels,
                                        int n_traj);

enum class MasterMode { lindblad, frozen };

struct MixedState {
    CMatrix rho;
    double trace() const { return rho.trace().real(); }
    double purity() const { return (rho * rho).trace().real(); }
    double min_eigenvalue() const;
    double hermiticity_defect() const { return operator_norm(rho - rho.adjoint()); }
};

struct StochasticReport {
    MixedState rho_avg;
    MixedState rho_master;
    double trace_distance = 0.0;
    double trace_distance_half = 0.0;  // using the first n_traj/2 trajectories
    double relative_change = 0.0;      // |td − td_half| / td
    double max_trace_error = 0.0;      // of the master state over the grid
    int n_traj = 0;
    double dt = 0.0;
    bool coarse_warning = false;
};

/// Trajectories of i dψ/dt = (H(λ(t)) + γΣ_a ξ_a(t) X_a)ψ, X_a = |a⟩⟨f| + h.c., averaged
/// and compared with the time-convolutionless master equation. Both use a fourth-order
/// Magnus step on the same grid. Single atom, Γ = 0.
StochasticReport noisy_average_vs_master(const ModelConfig& cfg, const Loop& loop, const NoiseProcessSpec& spec,
                                         int n_traj, double dt, const CVector& psi0,
                                         MasterMode mode = MasterMode::lindblad, int threads = 0);

/// Master-equation state only, with the trace error tracked at every step.
MixedState master_equation_state(const ModelConfig& cfg, const Loop& loop, const NoiseProcessSpec& spec,
                                 double dt, const CVector& psi0, MasterMode mode, double* max_trace_error = nullptr);

/// F(t) = ∫₀^t D(t,s) ds for the OU kernel.
double ou_kernel_integral(const NoiseProcessSpec& spec, double t);

}  // namespace holo
