// model.hpp — single/two-atom driven Hamiltonians, analytic zero-energy frames, spectral gap
//
// Conventions used throughout the library:
//   * single-atom level order |0⟩,…,|d−1⟩,|d⟩,|f⟩ (indices 0…d+1),
//   * two-atom product order |i,j⟩ -> i·(d+2)+j, first factor is atom 1,
//   * energies in units of |Ω_d|, times in units of |Ω_d|⁻¹.

#pragma once

#include "holo/linalg.hpp"

#include <span>
#include <vector>

namespace holo {

struct ModelConfig {
    int d = 2;
    cplx omega_d{1.0, 0.0};
    double W = 10.0;
    double gamma = 0.0;  // decay rate of |d⟩

    double omega_d_abs() const { return std::abs(omega_d); }
    void validate() const;
};

/// Real coordinates λ = (Re Ω₀…Re Ω_{d−1}, Im Ω₀…Im Ω_{d−1}).
class ParameterPoint {
public:
    explicit ParameterPoint(std::vector<double> lambda);

    static ParameterPoint base(int d);
    static ParameterPoint from_amplitudes(std::span<const cplx> omega);

    int d() const { return static_cast<int>(lambda_.size() / 2); }
    std::span<const double> lambda() const { return lambda_; }
    cplx omega(int a) const;
    std::vector<cplx> amplitudes() const;

    /// D² = Σ_{a<d} |Ω_a|².
    double drive_norm_sq() const;

private:
    std::vector<double> lambda_;
};

enum class Decay { off, on };

inline Index level_d(int d) { return d; }
inline Index level_f(int d) { return d + 1; }
inline Index pair_index(int d, Index i, Index j) { return i * (d + 2) + j; }

/// Ω² = Σ_{a=0}^{d} |Ω_a|² including the fixed amplitude.
double total_drive_sq(const ModelConfig& cfg, const ParameterPoint& p);

CMatrix single_atom_hamiltonian(const ModelConfig& cfg, const ParameterPoint& p,
                                Decay decay = Decay::off);
CMatrix two_atom_hamiltonian(const ModelConfig& cfg, const ParameterPoint& p,
                             Decay decay = Decay::off);

// --------------------------------------------------------------------------
// Zero-energy frames

enum class FrameKind { single, two_atom };
enum class FrameBlock { single, zero, minus, plus };

struct FrameLabel {
    FrameBlock block;
    int a;
    int b;
};

struct BlockRange {
    Index begin;
    Index size;
};

struct NullFrame {
    FrameKind kind;
    CMatrix basis;     // columns are frame vectors in the ambient space
    CMatrix gram;      // gram(i,j) = ⟨v_i|v_j⟩
    CMatrix gram_inv;
    std::vector<FrameLabel> labels;

    Index size() const { return basis.cols(); }
    BlockRange block_range(FrameBlock block) const;
};

/// Pairs a<b (minus block) and a≤b (plus block) in lexicographic order.
std::vector<std::pair<int, int>> antisymmetric_pairs(int d);
std::vector<std::pair<int, int>> symmetric_pairs(int d);

/// |e_a⟩ = Ω̄_a|d⟩ − Ω̄_d|a⟩.
CVector null_vector(const ModelConfig& cfg, const ParameterPoint& p, int a);
/// |±⟩ = Ω|f⟩ ± Σ_{a≤d} Ω_a|a⟩ (unnormalised, eigenvalue ±Ω).
CVector bright_vector(const ModelConfig& cfg, const ParameterPoint& p, int sign);

NullFrame single_atom_null_frame(const ModelConfig& cfg, const ParameterPoint& p);

/// Frame order: w⁰, then w⁻_{ab} (a<b), then w⁺_{ab} (a≤b). Requires W > 0.
NullFrame two_atom_null_frame(const ModelConfig& cfg, const ParameterPoint& p);

/// Closed-form Gram blocks. The minus/plus inverses are returned as matrix
/// inverses over the restricted index sets (a<b, a≤b).
CMatrix single_atom_gram(const ModelConfig& cfg, const ParameterPoint& p);
CMatrix single_atom_gram_inv(const ModelConfig& cfg, const ParameterPoint& p);
CMatrix minus_gram(const ModelConfig& cfg, const ParameterPoint& p);
CMatrix minus_gram_inv(const ModelConfig& cfg, const ParameterPoint& p);
CMatrix plus_gram(const ModelConfig& cfg, const ParameterPoint& p);
CMatrix plus_gram_inv(const ModelConfig& cfg, const ParameterPoint& p);

// --------------------------------------------------------------------------
// Spectrum

struct SpectrumReport {
    std::vector<double> nonzero_eigs;   // ascending
    double gap = 0.0;                   // min |nonzero eigenvalue|
    std::vector<double> quintic_roots;  // ascending, two-atom only
    double max_root_mismatch = 0.0;     // vs matched numeric eigenvalues
    double asymptotic_gap = 0.0;        // large-W closed form
    double D2 = 0.0;                    // Ω² − |Ω_d|²
};

/// Monic coefficients c0…c5 of the two-atom quintic in x.
std::vector<double> quintic_coefficients(const ModelConfig& cfg, const ParameterPoint& p);

/// Real roots of the quintic via companion-matrix eigenvalues. Throws
/// NumericalError if any root has |Im| above imag_tol.
std::vector<double> quintic_roots(const ModelConfig& cfg, const ParameterPoint& p,
                                  double imag_tol = 1e-8);

double asymptotic_gap(const ModelConfig& cfg, const ParameterPoint& p);

SpectrumReport single_atom_spectrum(const ModelConfig& cfg, const ParameterPoint& p);

/// Dense eigensolve of the two-atom Hamiltonian, quintic roots matched to the
/// numeric eigenvalues by greedy nearest pairing (tolerance match_tol).
SpectrumReport spectral_gap(const ModelConfig& cfg, const ParameterPoint& p,
                            double match_tol = 1e-6);

}  // namespace holo
