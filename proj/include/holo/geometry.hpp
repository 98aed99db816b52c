// geometry.hpp — connection 1-form on the zero-energy frames and parallel transport

#pragma once

#include "holo/linalg.hpp"
#include "holo/loop.hpp"
#include "holo/model.hpp"

#include <string>
#include <vector>

namespace holo {

/// Connection components at one parameter point.
/// lowered[μ](c,b) = ⟨v_c|∂_μ v_b⟩, raised[μ] = gram_inv · lowered[μ].
struct ConnectionSample {
    std::vector<double> lambda;
    FrameKind kind;
    NullFrame frame;
    std::vector<CMatrix> lowered;
    std::vector<CMatrix> raised;
};

/// Exact derivatives ∂_μ of every frame vector (same column order as the frame).
std::vector<CMatrix> frame_derivatives(const ModelConfig& cfg, const ParameterPoint& p, FrameKind kind);

/// Single-atom A_{abμ}: Ω_a δ_{μb} (real coordinates), −iΩ_a δ_{μ−d,b} (imaginary).
std::vector<CMatrix> single_atom_connection(const ModelConfig& cfg, const ParameterPoint& p);
/// Antisymmetric block A⁻_{(k,l),(a,b),μ} built from the single-atom g and A.
std::vector<CMatrix> minus_connection(const ModelConfig& cfg, const ParameterPoint& p);
/// Symmetric block A⁺_{(k,l),(a,b),μ} in closed form.
std::vector<CMatrix> plus_connection(const ModelConfig& cfg, const ParameterPoint& p);

ConnectionSample connection_at(const ModelConfig& cfg, const ParameterPoint& p, FrameKind kind);

/// λ̇^μ A_μ along a product-form loop, in the base-point computational basis.
struct TangentConnection {
    double t = 0.0;
    cplx B1;
    cplx B2;
    CMatrix M;      // d×d (single) or d²×d² (two-atom)
    CMatrix minus;  // M·(1−S)/2 part (two-atom)
    CMatrix plus;   // M·(1+S)/2 part (two-atom)
};

TangentConnection tangent_connection(const ModelConfig& cfg, const Loop& loop, double t, FrameKind kind);

enum class TransportRoute { tangent, frame };
std::string to_string(TransportRoute r);

struct Holonomy {
    CMatrix U;             // base-point computational basis
    CMatrix coordinate_U;  // frame coordinates (frame route only)
    double unitarity_defect = 0.0;
    double block_mixing = 0.0;  // max |off-block| of coordinate_U
    int steps = 0;
    std::string method;
};

/// Columns: base-point frame vectors (w⁰ excluded) restricted to computational rows.
CMatrix computational_frame_map(const ModelConfig& cfg, FrameKind kind);

/// Fixed-step RK4 for dψ/dt = −M(t)ψ, steps aligned to the loop breakpoints.
Holonomy parallel_transport(const ModelConfig& cfg, const Loop& loop, int steps, FrameKind kind,
                            TransportRoute route = TransportRoute::frame);

}  // namespace holo
