#include "holo/geometry.hpp"

#include "holo/gates.hpp"

#include <cmath>
#include <functional>

namespace holo {

std::string to_string(TransportRoute r) { return r == TransportRoute::tangent ? "tangent" : "frame"; }

namespace {

double kd(int a, int b) { return a == b ? 1.0 : 0.0; }

// ∂Ω_a/∂λ^μ
cplx d_omega(int d, int a, int mu) {
    if (mu < d) return kd(a, mu);
    return kI * kd(a, mu - d);
}

CVector kv(const CVector& x, const CVector& y) { return kron(x, y); }

}  // namespace

std::vector<CMatrix> frame_derivatives(const ModelConfig& cfg, const ParameterPoint& p, FrameKind kind) {
    const int d = cfg.d;
    const Index n1 = d + 2;
    const double om = std::sqrt(total_drive_sq(cfg, p));

    std::vector<CVector> e;
    for (int a = 0; a < d; ++a) e.push_back(null_vector(cfg, p, a));
    const CVector bp = bright_vector(cfg, p, +1);
    const CVector bm = bright_vector(cfg, p, -1);
    const cplx od2 = cfg.omega_d * cfg.omega_d;

    std::vector<CMatrix> out;
    for (int mu = 0; mu < 2 * d; ++mu) {
        std::vector<CVector> de;
        for (int a = 0; a < d; ++a) {
            CVector v = CVector::Zero(n1);
            v(level_d(d)) = std::conj(d_omega(d, a, mu));
            de.push_back(v);
        }
        if (kind == FrameKind::single) {
            CMatrix m(n1, d);
            for (int a = 0; a < d; ++a) m.col(a) = de[static_cast<std::size_t>(a)];
            out.push_back(m);
            continue;
        }
        const int c = mu < d ? mu : mu - d;
        const double dsq = mu < d ? 2.0 * p.omega(c).real() : 2.0 * p.omega(c).imag();
        CVector dp = CVector::Zero(n1);
        CVector dm = CVector::Zero(n1);
        dp(level_f(d)) = dsq / (2.0 * om);
        dm(level_f(d)) = dsq / (2.0 * om);
        dp(c) += d_omega(d, c, mu);
        dm(c) -= d_omega(d, c, mu);
        const CVector pm = kv(bp, bm) + kv(bm, bp);
        const CVector dpm = kv(dp, bm) + kv(bp, dm) + kv(dm, bp) + kv(bm, dp);

        const auto minus = antisymmetric_pairs(d);
        const auto plus = symmetric_pairs(d);
        CMatrix m(n1 * n1, static_cast<Index>(1 + minus.size() + plus.size()));
        Index col = 0;
        m.col(col++) = kv(dp, bm) + kv(bp, dm) - kv(dm, bp) - kv(bm, dp);
        for (const auto& [a, b] : minus)
            m.col(col++) = kv(de[a], e[b]) + kv(e[a], de[b]) - kv(de[b], e[a]) - kv(e[b], de[a]);
        for (const auto& [a, b] : plus) {
            const cplx coef = std::conj(p.omega(a)) * std::conj(p.omega(b)) / od2;
            const cplx dcoef = (std::conj(d_omega(d, a, mu)) * std::conj(p.omega(b)) +
                                std::conj(p.omega(a)) * std::conj(d_omega(d, b, mu))) /
                               od2;
            m.col(col++) = kv(de[a], e[b]) + kv(e[a], de[b]) + kv(de[b], e[a]) + kv(e[b], de[a]) + dcoef * pm +
                           coef * dpm;
        }
        out.push_back(m);
    }
    return out;
}

std::vector<CMatrix> single_atom_connection(const ModelConfig& cfg, const ParameterPoint& p) {
    const int d = cfg.d;
    std::vector<CMatrix> out;
    for (int mu = 0; mu < 2 * d; ++mu) {
        CMatrix a = CMatrix::Zero(d, d);
        for (int x = 0; x < d; ++x)
            for (int b = 0; b < d; ++b)
                a(x, b) = mu < d ? p.omega(x) * kd(mu, b) : -kI * p.omega(x) * kd(mu - d, b);
        out.push_back(a);
    }
    return out;
}

std::vector<CMatrix> minus_connection(const ModelConfig& cfg, const ParameterPoint& p) {
    const CMatrix g = single_atom_gram(cfg, p);
    const auto a1 = single_atom_connection(cfg, p);
    const auto pairs = antisymmetric_pairs(cfg.d);
    const auto n = static_cast<Index>(pairs.size());
    std::vector<CMatrix> out;
    for (const CMatrix& A : a1) {
        CMatrix m(n, n);
        for (Index i = 0; i < n; ++i) {
            const auto [k, l] = pairs[static_cast<std::size_t>(i)];
            for (Index j = 0; j < n; ++j) {
                const auto [a, b] = pairs[static_cast<std::size_t>(j)];
                m(i, j) = 2.0 * (A(k, a) * g(l, b) + A(l, b) * g(k, a) - A(k, b) * g(l, a) - A(l, a) * g(k, b));
            }
        }
        out.push_back(m);
    }
    return out;
}

std::vector<CMatrix> plus_connection(const ModelConfig& cfg, const ParameterPoint& p) {
    const int d = cfg.d;
    const double c = std::norm(cfg.omega_d);
    const double om2 = total_drive_sq(cfg, p);
    const double growth = 1.0 + 2.0 * om2 * om2 / (c * c);
    const auto pairs = symmetric_pairs(d);
    const auto n = static_cast<Index>(pairs.size());
    auto O = [&](int a) { return p.omega(a); };
    auto Ob = [&](int a) { return std::conj(p.omega(a)); };

    std::vector<CMatrix> out;
    for (int mu = 0; mu < 2 * d; ++mu) {
        const bool re = mu < d;
        const int x = re ? mu : mu - d;
        const cplx unit = re ? cplx{1.0, 0.0} : -kI;
        const cplx tail = re ? 3.0 * Ob(x) + O(x) : 3.0 * kI * Ob(x) - kI * O(x);
        CMatrix m(n, n);
        for (Index i = 0; i < n; ++i) {
            const auto [k, l] = pairs[static_cast<std::size_t>(i)];
            for (Index j = 0; j < n; ++j) {
                const auto [a, b] = pairs[static_cast<std::size_t>(j)];
                const cplx first = 2.0 * c *
                                   (kd(x, b) * kd(a, k) * O(l) + kd(x, a) * kd(b, l) * O(k) +
                                    kd(x, a) * kd(b, k) * O(l) + kd(x, b) * kd(a, l) * O(k));
                const cplx second = 4.0 * O(k) * O(l) * (kd(x, a) * Ob(b) + kd(x, b) * Ob(a)) * growth;
                const cplx third = 4.0 * O(k) * O(l) * Ob(a) * Ob(b) / (c * c) * tail * om2;
                m(i, j) = unit * (first + second) + third;
            }
        }
        out.push_back(m);
    }
    return out;
}

ConnectionSample connection_at(const ModelConfig& cfg, const ParameterPoint& p, FrameKind kind) {
    ConnectionSample s{std::vector<double>(p.lambda().begin(), p.lambda().end()), kind,
                       kind == FrameKind::single ? single_atom_null_frame(cfg, p) : two_atom_null_frame(cfg, p),
                       {},
                       {}};
    if (kind == FrameKind::single) {
        s.lowered = single_atom_connection(cfg, p);
    } else {
        const auto deriv = frame_derivatives(cfg, p, kind);
        const auto am = minus_connection(cfg, p);
        const auto ap = plus_connection(cfg, p);
        const BlockRange rm = s.frame.block_range(FrameBlock::minus);
        const BlockRange rp = s.frame.block_range(FrameBlock::plus);
        for (std::size_t mu = 0; mu < deriv.size(); ++mu) {
            CMatrix low = s.frame.basis.adjoint() * deriv[mu];
            low.block(rm.begin, rm.begin, rm.size, rm.size) = am[mu];
            low.block(rp.begin, rp.begin, rp.size, rp.size) = ap[mu];
            s.lowered.push_back(std::move(low));
        }
    }
    for (const CMatrix& low : s.lowered) s.raised.push_back(s.frame.gram_inv * low);
    return s;
}

TangentConnection tangent_connection(const ModelConfig& cfg, const Loop& loop, double t, FrameKind kind) {
    require(t >= 0.0 && t <= loop.duration(), "tangent_connection: t outside [0, T]");
    require(cfg.d == loop.d(), "tangent_connection: loop direction length does not match d");
    TangentConnection tc;
    tc.t = t;
    const cplx f = loop.f(t);
    const cplx fd = loop.fdot(t);
    tc.B1 = b1_coefficient(f, fd);
    tc.B2 = b2_coefficient(f, fd);
    const CVector w = loop.direction_vector();
    const CMatrix P = w * w.adjoint();
    if (kind == FrameKind::single) {
        tc.M = tc.B1 * P;
        return tc;
    }
    const Index d = cfg.d;
    const CMatrix id = CMatrix::Identity(d, d);
    const CMatrix id2 = CMatrix::Identity(d * d, d * d);
    const CMatrix S = swap_operator(d);
    const CMatrix X = kron(id, P) + kron(P, id);
    tc.minus = tc.B1 * X * (id2 - S) / 2.0;
    tc.plus = tc.B1 * X * (id2 + S) / 2.0 + tc.B2 * kron(P, P);
    tc.M = tc.minus + tc.plus;
    return tc;
}

CMatrix computational_frame_map(const ModelConfig& cfg, FrameKind kind) {
    const ParameterPoint p0 = ParameterPoint::base(cfg.d);
    const int d = cfg.d;
    if (kind == FrameKind::single) return single_atom_null_frame(cfg, p0).basis.topRows(d);
    const NullFrame fr = two_atom_null_frame(cfg, p0);
    CMatrix v(d * d, d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            v.row(a * d + b) = fr.basis.row(pair_index(d, a, b)).rightCols(d * d);
    return v;
}

namespace {

CMatrix rk4_transport(const std::function<CMatrix(double)>& M, const std::vector<TimeSegment>& grid, Index n) {
    CMatrix Y = CMatrix::Identity(n, n);
    for (const auto& seg : grid) {
        const double h = (seg.end - seg.begin) / seg.steps;
        const double edge = 1e-9 * h;
        for (int s = 0; s < seg.steps; ++s) {
            const double t = seg.begin + s * h;
            const CMatrix m0 = M(s == 0 ? seg.begin + edge : t);
            const CMatrix mh = M(t + 0.5 * h);
            const CMatrix m1 = M(s + 1 == seg.steps ? seg.end - edge : t + h);
            const CMatrix k1 = -m0 * Y;
            const CMatrix k2 = -mh * (Y + 0.5 * h * k1);
            const CMatrix k3 = -mh * (Y + 0.5 * h * k2);
            const CMatrix k4 = -m1 * (Y + h * k3);
            Y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    return Y;
}

}  // namespace

Holonomy parallel_transport(const ModelConfig& cfg, const Loop& loop, int steps, FrameKind kind,
                            TransportRoute route) {
    cfg.validate();
    require(cfg.gamma == 0.0, "parallel_transport: requires gamma = 0");
    require(steps >= 16, "parallel_transport: steps must be >= 16");
    require(cfg.d == loop.d(), "parallel_transport: loop direction length does not match d");
    require(loop.is_closed(1e-12), "parallel_transport: loop is not closed (f(0) and f(T) must vanish)");
    const auto grid = loop.segment_grid(steps);

    Holonomy h;
    h.steps = steps;
    h.method = "ode:" + to_string(route);
    if (route == TransportRoute::tangent) {
        const Index n = kind == FrameKind::single ? cfg.d : cfg.d * cfg.d;
        h.U = rk4_transport([&](double t) { return tangent_connection(cfg, loop, t, kind).M; }, grid, n);
        h.coordinate_U = h.U;
        h.unitarity_defect = unitarity_defect(h.U);
        return h;
    }

    auto M = [&](double t) {
        const ConnectionSample cs = connection_at(cfg, loop.point(cfg, t), kind);
        const auto v = loop.velocity(cfg, t);
        CMatrix m = CMatrix::Zero(cs.frame.size(), cs.frame.size());
        for (std::size_t mu = 0; mu < v.size(); ++mu)
            if (v[mu] != 0.0) m += v[mu] * cs.raised[mu];
        return m;
    };
    const Index n = kind == FrameKind::single ? cfg.d : 1 + cfg.d * cfg.d;
    h.coordinate_U = rk4_transport(M, grid, n);

    const CMatrix V0 = computational_frame_map(cfg, kind);
    if (kind == FrameKind::single) {
        h.U = V0 * h.coordinate_U * V0.inverse();
    } else {
        const int d = cfg.d;
        const Index nm = d * (d - 1) / 2;
        const Index np = d * (d + 1) / 2;
        const CMatrix& C = h.coordinate_U;
        h.block_mixing = std::max({C.block(0, 1, 1, n - 1).cwiseAbs().maxCoeff(),
                                   C.block(1, 0, n - 1, 1).cwiseAbs().maxCoeff(),
                                   C.block(1, 1 + nm, nm, np).cwiseAbs().maxCoeff(),
                                   C.block(1 + nm, 1, np, nm).cwiseAbs().maxCoeff()});
        h.U = V0 * C.bottomRightCorner(d * d, d * d) * V0.inverse();
    }
    h.unitarity_defect = unitarity_defect(h.U);
    return h;
}

}  // namespace holo
