// linalg.hpp — dense complex linear-algebra aliases and small helpers shared by all modules

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace holo {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Kronecker product A ⊗ B, first factor is the slow index.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Two-qudit SWAP on C^n ⊗ C^n: |a,b⟩ -> |b,a⟩.
CMatrix swap_operator(Index local_dim);

/// Largest singular value.
double operator_norm(const CMatrix& m);

/// ‖U†U − 1‖ in operator norm.
double unitarity_defect(const CMatrix& u);

/// Matrix exponential of a general complex matrix (Padé scaling and squaring).
CMatrix expm(const CMatrix& m);

/// Trace distance ½‖ρ − σ‖₁ for Hermitian arguments.
double trace_distance(const CMatrix& rho, const CMatrix& sigma);

/// Projector |v⟩⟨v|.
CMatrix outer(const CVector& v);

inline void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace holo
