#include "holo/model.hpp"

#include "holo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace holo {

void ModelConfig::validate() const {
    require(d >= 2, "ModelConfig: d must be >= 2");
    require(std::abs(omega_d) > 0.0, "ModelConfig: |omega_d| must be > 0");
    require(W >= 0.0, "ModelConfig: W must be >= 0");
    require(gamma >= 0.0, "ModelConfig: gamma must be >= 0");
}

ParameterPoint::ParameterPoint(std::vector<double> lambda) : lambda_(std::move(lambda)) {
    require(!lambda_.empty() && lambda_.size() % 2 == 0,
            "ParameterPoint: lambda must hold 2d real coordinates");
}

ParameterPoint ParameterPoint::base(int d) {
    return ParameterPoint(std::vector<double>(2 * static_cast<std::size_t>(d), 0.0));
}

ParameterPoint ParameterPoint::from_amplitudes(std::span<const cplx> omega) {
    std::vector<double> lambda(2 * omega.size());
    for (std::size_t a = 0; a < omega.size(); ++a) {
        lambda[a] = omega[a].real();
        lambda[a + omega.size()] = omega[a].imag();
    }
    return ParameterPoint(std::move(lambda));
}

cplx ParameterPoint::omega(int a) const {
    const auto n = static_cast<std::size_t>(d());
    const auto i = static_cast<std::size_t>(a);
    return {lambda_[i], lambda_[i + n]};
}

std::vector<cplx> ParameterPoint::amplitudes() const {
    std::vector<cplx> out(static_cast<std::size_t>(d()));
    for (int a = 0; a < d(); ++a) out[static_cast<std::size_t>(a)] = omega(a);
    return out;
}

double ParameterPoint::drive_norm_sq() const {
    double s = 0.0;
    for (int a = 0; a < d(); ++a) s += std::norm(omega(a));
    return s;
}

namespace {

void check_dims(const ModelConfig& cfg, const ParameterPoint& p) {
    cfg.validate();
    if (p.d() != cfg.d) {
        std::ostringstream msg;
        msg << "dimension mismatch: config d=" << cfg.d << " but parameter point has d=" << p.d();
        throw std::invalid_argument(msg.str());
    }
}

double kdelta(int a, int b) { return a == b ? 1.0 : 0.0; }

}  // namespace

double total_drive_sq(const ModelConfig& cfg, const ParameterPoint& p) {
    return p.drive_norm_sq() + std::norm(cfg.omega_d);
}

CMatrix single_atom_hamiltonian(const ModelConfig& cfg, const ParameterPoint& p, Decay decay) {
    check_dims(cfg, p);
    const int d = cfg.d;
    const Index n = d + 2;
    CMatrix h = CMatrix::Zero(n, n);
    const Index f = level_f(d);
    for (int a = 0; a < d; ++a) {
        h(a, f) = p.omega(a);
        h(f, a) = std::conj(p.omega(a));
    }
    h(level_d(d), f) = cfg.omega_d;
    h(f, level_d(d)) = std::conj(cfg.omega_d);
    if (decay == Decay::on) h(level_d(d), level_d(d)) += -0.5 * kI * cfg.gamma;
    return h;
}

CMatrix two_atom_hamiltonian(const ModelConfig& cfg, const ParameterPoint& p, Decay decay) {
    const CMatrix h0 = single_atom_hamiltonian(cfg, p, decay);
    const CMatrix id = CMatrix::Identity(h0.rows(), h0.cols());
    CMatrix h = kron(id, h0) + kron(h0, id);
    const Index dd = pair_index(cfg.d, level_d(cfg.d), level_d(cfg.d));
    h(dd, dd) += cfg.W;
    return h;
}

// ---------------------------------------------------------------------------

BlockRange NullFrame::block_range(FrameBlock block) const {
    Index begin = 0;
    Index count = 0;
    bool found = false;
    for (Index i = 0; i < static_cast<Index>(labels.size()); ++i) {
        if (labels[static_cast<std::size_t>(i)].block == block) {
            if (!found) begin = i;
            found = true;
            ++count;
        }
    }
    return {begin, count};
}

std::vector<std::pair<int, int>> antisymmetric_pairs(int d) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) out.emplace_back(a, b);
    return out;
}

std::vector<std::pair<int, int>> symmetric_pairs(int d) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) out.emplace_back(a, b);
    return out;
}

CVector null_vector(const ModelConfig& cfg, const ParameterPoint& p, int a) {
    CVector v = CVector::Zero(cfg.d + 2);
    v(level_d(cfg.d)) = std::conj(p.omega(a));
    v(a) = -std::conj(cfg.omega_d);
    return v;
}

CVector bright_vector(const ModelConfig& cfg, const ParameterPoint& p, int sign) {
    const double s = sign >= 0 ? 1.0 : -1.0;
    CVector v = CVector::Zero(cfg.d + 2);
    v(level_f(cfg.d)) = std::sqrt(total_drive_sq(cfg, p));
    for (int a = 0; a < cfg.d; ++a) v(a) = s * p.omega(a);
    v(level_d(cfg.d)) = s * cfg.omega_d;
    return v;
}

CMatrix single_atom_gram(const ModelConfig& cfg, const ParameterPoint& p) {
    check_dims(cfg, p);
    const int d = cfg.d;
    const double c = std::norm(cfg.omega_d);
    CMatrix g(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) g(a, b) = c * kdelta(a, b) + p.omega(a) * std::conj(p.omega(b));
    return g;
}

CMatrix single_atom_gram_inv(const ModelConfig& cfg, const ParameterPoint& p) {
    check_dims(cfg, p);
    const int d = cfg.d;
    const double c = std::norm(cfg.omega_d);
    const double om2 = total_drive_sq(cfg, p);
    CMatrix gi(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            gi(a, b) = (kdelta(a, b) - p.omega(a) * std::conj(p.omega(b)) / om2) / c;
    return gi;
}

CMatrix minus_gram(const ModelConfig& cfg, const ParameterPoint& p) {
    const CMatrix g = single_atom_gram(cfg, p);
    const auto pairs = antisymmetric_pairs(cfg.d);
    const auto n = static_cast<Index>(pairs.size());
    CMatrix out(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto [a, b] = pairs[static_cast<std::size_t>(i)];
        for (Index j = 0; j < n; ++j) {
            const auto [k, l] = pairs[static_cast<std::size_t>(j)];
            out(i, j) = 2.0 * (g(a, k) * g(b, l) - g(b, k) * g(a, l));
        }
    }
    return out;
}

// The printed inverse (1/8)(g^{ak}g^{bl} − g^{bk}g^{al}) acts on the
// antisymmetric tensor space over ordered pairs; restricted to a<b each
// pair carries multiplicity 2, giving the factor 4.
CMatrix minus_gram_inv(const ModelConfig& cfg, const ParameterPoint& p) {
    const CMatrix gi = single_atom_gram_inv(cfg, p);
    const auto pairs = antisymmetric_pairs(cfg.d);
    const auto n = static_cast<Index>(pairs.size());
    CMatrix out(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto [a, b] = pairs[static_cast<std::size_t>(i)];
        for (Index j = 0; j < n; ++j) {
            const auto [k, l] = pairs[static_cast<std::size_t>(j)];
            out(i, j) = 4.0 * (gi(a, k) * gi(b, l) - gi(b, k) * gi(a, l)) / 8.0;
        }
    }
    return out;
}

CMatrix plus_gram(const ModelConfig& cfg, const ParameterPoint& p) {
    check_dims(cfg, p);
    const double c = std::norm(cfg.omega_d);
    const double om2 = total_drive_sq(cfg, p);
    const double alpha = 1.0 + 2.0 * om2 * om2 / (c * c);
    auto om = [&](int a) { return p.omega(a); };
    auto term = [&](int a, int b, int k, int l) {
        return 2.0 * c * c *
               (kdelta(a, k) * kdelta(b, l) +
                (om(a) * std::conj(om(k)) * kdelta(b, l) + kdelta(a, k) * om(b) * std::conj(om(l))) / c +
                alpha / (c * c) * om(a) * om(b) * std::conj(om(k)) * std::conj(om(l)));
    };
    const auto pairs = symmetric_pairs(cfg.d);
    const auto n = static_cast<Index>(pairs.size());
    CMatrix out(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto [a, b] = pairs[static_cast<std::size_t>(i)];
        for (Index j = 0; j < n; ++j) {
            const auto [k, l] = pairs[static_cast<std::size_t>(j)];
            out(i, j) = term(a, b, k, l) + term(a, b, l, k);
        }
    }
    return out;
}

// Same tensor-space convention as minus_gram_inv: restricted inverse is
// M·G·M with M = diag(1 for a=b, 2 for a<b).
CMatrix plus_gram_inv(const ModelConfig& cfg, const ParameterPoint& p) {
    check_dims(cfg, p);
    const double c = std::norm(cfg.omega_d);
    const double om2 = total_drive_sq(cfg, p);
    const double beta = (c * c - 4.0 * om2 * c + 2.0 * om2 * om2) /
                        (3.0 * c * c - 4.0 * om2 * c + 2.0 * om2 * om2);
    auto om = [&](int a) { return p.omega(a); };
    auto term = [&](int a, int b, int k, int l) {
        return (kdelta(a, k) * kdelta(b, l) -
                (om(a) * std::conj(om(k)) * kdelta(b, l) + om(b) * std::conj(om(k)) * kdelta(a, l)) / om2 +
                beta / (om2 * om2) * om(a) * om(b) * std::conj(om(k)) * std::conj(om(l))) /
               (8.0 * c * c);
    };
    const auto pairs = symmetric_pairs(cfg.d);
    const auto n = static_cast<Index>(pairs.size());
    CMatrix out(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto [a, b] = pairs[static_cast<std::size_t>(i)];
        const double mi = a == b ? 1.0 : 2.0;
        for (Index j = 0; j < n; ++j) {
            const auto [k, l] = pairs[static_cast<std::size_t>(j)];
            const double mj = k == l ? 1.0 : 2.0;
            out(i, j) = mi * mj * (term(a, b, k, l) + term(a, b, l, k));
        }
    }
    return out;
}

NullFrame single_atom_null_frame(const ModelConfig& cfg, const ParameterPoint& p) {
    check_dims(cfg, p);
    require(cfg.gamma == 0.0, "single_atom_null_frame: requires gamma = 0");
    const int d = cfg.d;
    NullFrame frame{FrameKind::single, CMatrix(d + 2, d), {}, {}, {}};
    for (int a = 0; a < d; ++a) {
        frame.basis.col(a) = null_vector(cfg, p, a);
        frame.labels.push_back({FrameBlock::single, a, a});
    }
    frame.gram = single_atom_gram(cfg, p);
    frame.gram_inv = single_atom_gram_inv(cfg, p);
    return frame;
}

NullFrame two_atom_null_frame(const ModelConfig& cfg, const ParameterPoint& p) {
    check_dims(cfg, p);
    require(cfg.gamma == 0.0, "two_atom_null_frame: requires gamma = 0");
    require(cfg.W > 0.0, "two_atom_null_frame: W = 0 has an enlarged null space and is not supported");
    const int d = cfg.d;
    const Index n = static_cast<Index>(d + 2) * (d + 2);
    const auto minus = antisymmetric_pairs(d);
    const auto plus = symmetric_pairs(d);
    const Index count = 1 + static_cast<Index>(minus.size() + plus.size());

    std::vector<CVector> e;
    for (int a = 0; a < d; ++a) e.push_back(null_vector(cfg, p, a));
    const CVector bp = bright_vector(cfg, p, +1);
    const CVector bm = bright_vector(cfg, p, -1);
    auto kv = [](const CVector& x, const CVector& y) -> CVector { return kron(x, y); };
    const CVector pm = kv(bp, bm);
    const CVector mp = kv(bm, bp);

    NullFrame frame{FrameKind::two_atom, CMatrix(n, count), CMatrix::Zero(count, count),
                    CMatrix::Zero(count, count), {}};
    Index col = 0;
    frame.basis.col(col++) = pm - mp;
    frame.labels.push_back({FrameBlock::zero, 0, 0});
    for (const auto& [a, b] : minus) {
        frame.basis.col(col++) = kv(e[a], e[b]) - kv(e[b], e[a]);
        frame.labels.push_back({FrameBlock::minus, a, b});
    }
    const cplx od2 = cfg.omega_d * cfg.omega_d;
    for (const auto& [a, b] : plus) {
        const cplx coef = std::conj(p.omega(a)) * std::conj(p.omega(b)) / od2;
        frame.basis.col(col++) = kv(e[a], e[b]) + kv(e[b], e[a]) + coef * (pm + mp);
        frame.labels.push_back({FrameBlock::plus, a, b});
    }

    const double om2 = total_drive_sq(cfg, p);
    const Index nm = static_cast<Index>(minus.size());
    const Index np = static_cast<Index>(plus.size());
    frame.gram(0, 0) = 8.0 * om2 * om2;
    frame.gram_inv(0, 0) = 1.0 / (8.0 * om2 * om2);
    frame.gram.block(1, 1, nm, nm) = minus_gram(cfg, p);
    frame.gram_inv.block(1, 1, nm, nm) = minus_gram_inv(cfg, p);
    frame.gram.block(1 + nm, 1 + nm, np, np) = plus_gram(cfg, p);
    frame.gram_inv.block(1 + nm, 1 + nm, np, np) = plus_gram_inv(cfg, p);
    return frame;
}

// ---------------------------------------------------------------------------

std::vector<double> quintic_coefficients(const ModelConfig& cfg, const ParameterPoint& p) {
    check_dims(cfg, p);
    const double c = std::norm(cfg.omega_d);
    const double om2 = total_drive_sq(cfg, p);
    const double d2 = om2 - c;
    const double w = cfg.W;
    return {-w * (2.0 * c * c + 4.0 * d2 * d2), 4.0 * om2 * om2, w * (5.0 * om2 - 2.0 * c), -5.0 * om2,
            -w, 1.0};
}

std::vector<double> quintic_roots(const ModelConfig& cfg, const ParameterPoint& p, double imag_tol) {
    const auto coef = quintic_coefficients(cfg, p);
    Eigen::Matrix<double, 5, 5> companion = Eigen::Matrix<double, 5, 5>::Zero();
    for (int i = 1; i < 5; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < 5; ++i) companion(i, 4) = -coef[static_cast<std::size_t>(i)];
    Eigen::EigenSolver<Eigen::Matrix<double, 5, 5>> es(companion, false);

    auto poly = [&](double x) {
        double v = 0.0;
        for (int i = 5; i >= 0; --i) v = v * x + coef[static_cast<std::size_t>(i)];
        return v;
    };
    auto dpoly = [&](double x) {
        double v = 0.0;
        for (int i = 5; i >= 1; --i) v = v * x + i * coef[static_cast<std::size_t>(i)];
        return v;
    };

    std::vector<double> roots;
    for (int i = 0; i < 5; ++i) {
        const cplx z = es.eigenvalues()(i);
        if (std::abs(z.imag()) > imag_tol * std::max(1.0, std::abs(z))) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "quintic has a complex root " << z.real() << "+" << z.imag() << "i at W=" << cfg.W
                << ", lambda=(";
            for (double x : p.lambda()) msg << x << ",";
            msg << ")";
            throw NumericalError(msg.str());
        }
        double x = z.real();
        for (int it = 0; it < 3; ++it) {
            const double dp = dpoly(x);
            if (dp == 0.0) break;
            const double step = poly(x) / dp;
            if (!std::isfinite(step) || std::abs(step) > 1e-6 * std::max(1.0, std::abs(x))) break;
            x -= step;
        }
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

double asymptotic_gap(const ModelConfig& cfg, const ParameterPoint& p) {
    const double c = std::norm(cfg.omega_d);
    const double d2 = p.drive_norm_sq();
    const double inner = std::sqrt(c * c + 30.0 * d2 * c + 9.0 * d2 * d2);
    return std::sqrt((3.0 * c + 5.0 * d2 - inner) / 2.0);
}

namespace {

// Eigenvalues minus the `null_dim` closest to zero, ascending.
std::vector<double> drop_null(const RVector& eigs, std::size_t null_dim) {
    std::vector<double> v(eigs.data(), eigs.data() + eigs.size());
    std::sort(v.begin(), v.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(null_dim));
    std::sort(v.begin(), v.end());
    return v;
}

double min_abs(const std::vector<double>& v) {
    double m = std::numeric_limits<double>::infinity();
    for (double x : v) m = std::min(m, std::abs(x));
    return m;
}

}  // namespace

SpectrumReport single_atom_spectrum(const ModelConfig& cfg, const ParameterPoint& p) {
    const CMatrix h = single_atom_hamiltonian(cfg, p);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    SpectrumReport rep;
    rep.nonzero_eigs = drop_null(es.eigenvalues(), static_cast<std::size_t>(cfg.d));
    rep.gap = min_abs(rep.nonzero_eigs);
    rep.D2 = p.drive_norm_sq();
    return rep;
}

SpectrumReport spectral_gap(const ModelConfig& cfg, const ParameterPoint& p, double match_tol) {
    require(cfg.gamma == 0.0, "spectral_gap: requires gamma = 0");
    const CMatrix h = two_atom_hamiltonian(cfg, p);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    const RVector eigs = es.eigenvalues();

    SpectrumReport rep;
    const auto null_dim = static_cast<std::size_t>(cfg.d * cfg.d + 1);
    rep.nonzero_eigs = drop_null(eigs, null_dim);
    rep.gap = min_abs(rep.nonzero_eigs);
    rep.quintic_roots = quintic_roots(cfg, p);
    rep.asymptotic_gap = asymptotic_gap(cfg, p);
    rep.D2 = p.drive_norm_sq();

    std::vector<bool> used(static_cast<std::size_t>(eigs.size()), false);
    for (double r : rep.quintic_roots) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < used.size(); ++i) {
            if (used[i]) continue;
            const double dist = std::abs(eigs(static_cast<Index>(i)) - r);
            if (dist < best) {
                best = dist;
                best_i = i;
            }
        }
        used[best_i] = true;
        rep.max_root_mismatch = std::max(rep.max_root_mismatch, best);
    }
    if (rep.max_root_mismatch > match_tol) {
        std::ostringstream msg;
        msg << "spectral_gap: quintic roots do not match numeric eigenvalues (mismatch "
            << rep.max_root_mismatch << " > " << match_tol << ")";
        throw NumericalError(msg.str());
    }
    return rep;
}

}  // namespace holo
