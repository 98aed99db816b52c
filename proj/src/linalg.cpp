#include "holo/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace holo {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix swap_operator(Index local_dim) {
    const Index n = local_dim;
    CMatrix s = CMatrix::Zero(n * n, n * n);
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) s(b * n + a, a * n + b) = 1.0;
    }
    return s;
}

double operator_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double unitarity_defect(const CMatrix& u) {
    return operator_norm(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols()));
}

CMatrix expm(const CMatrix& m) {
    require(m.rows() == m.cols(), "expm: matrix must be square");
    return m.exp();
}

double trace_distance(const CMatrix& rho, const CMatrix& sigma) {
    require(rho.rows() == sigma.rows() && rho.cols() == sigma.cols(),
            "trace_distance: dimension mismatch");
    const CMatrix diff = rho - sigma;
    const CMatrix herm = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

CMatrix outer(const CVector& v) { return v * v.adjoint(); }

}  // namespace holo
