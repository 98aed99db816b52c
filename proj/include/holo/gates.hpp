// gates.hpp — phase integrals α₁/α₂, closed-form holonomic gates, phase targeting, fidelity

#pragma once

#include "holo/linalg.hpp"
#include "holo/loop.hpp"
#include "holo/model.hpp"

#include <optional>
#include <string>

namespace holo {

enum class PhaseMethod { line, surface };
enum class Arity { one, two };
enum class PhaseIndex { alpha1, alpha2 };

std::string to_string(PhaseMethod m);
std::string to_string(Arity a);

struct PhasePair {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    PhaseMethod method = PhaseMethod::line;
    double error = 0.0;  // quadrature error estimate, max over both phases
};

/// Radial integrands C₁(r), C₂(r).
double c1_density(double r);
double c2_density(double r);

/// I_i(R) = ∫₀^R r C_i(r) dr by Gauss–Legendre quadrature.
double radial_phase_integral(PhaseIndex which, double R);

/// Radius where C₂ changes sign.
double c2_sign_change();

/// B₁ = f ḟ̄/(1+|f|²) and the two-atom coefficient B₂.
cplx b1_coefficient(cplx f, cplx fdot);
cplx b2_coefficient(cplx f, cplx fdot);

/// Line method: composite quadrature of i∮B_i dt over the loop segments.
/// Surface method: radial reduction for pacman loops, Green form ∮G(|f|)dθ otherwise.
PhasePair phase_integrals(const Loop& loop, PhaseMethod method = PhaseMethod::line,
                          int panels_per_segment = 16);

/// True if a sampled polyline crosses itself (touching at the closing point excluded).
bool polyline_self_intersects(const std::vector<cplx>& pts);

struct GateReport {
    CMatrix U;
    std::optional<CMatrix> target;
    std::optional<double> fidelity;
    double leakage = 0.0;
    double unitarity_defect = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

/// U₍₁₎ = exp(iα₁P) or U₍₂₎ = exp(iα₁(1⊗P + P⊗1))·exp(iα₂ P⊗P), P = |ω⟩⟨ω|.
CMatrix phase_gate(const CVector& omega, double alpha1, double alpha2, Arity arity);

GateReport analytic_gate(const ModelConfig& cfg, const Loop& loop, Arity arity,
                         PhaseMethod method = PhaseMethod::line);

/// diag(1,…,1,−1) on two qubits.
CMatrix controlled_z();

struct BetaSolution {
    double beta = 0.0;         // folded into (0, 2π]
    int wraps = 0;             // extra full turns
    double beta_total = 0.0;   // beta + 2π·wraps
    double radial_integral = 0.0;
    double achieved = 0.0;     // beta_total · I(R), equal to target mod 2π
    bool no_op = false;
};

/// Smallest positive total angle with β·I(R) ≡ target (mod 2π).
/// Throws UnreachablePhaseError when |I(R)| < 1e−9.
BetaSolution solve_beta_for_phase(double R, double target, PhaseIndex which);

/// F = (D + |tr(Ũ U†)|²)/(D(D+1)), applied to Ũ as given.
double gate_fidelity(const CMatrix& U_tilde, const CMatrix& U_target);

/// Distance between two phases on the circle.
double phase_distance(double a, double b);

}  // namespace holo
