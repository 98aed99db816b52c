#include "holo/gates.hpp"

#include "holo/errors.hpp"
#include "holo/quadrature.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <sstream>

namespace holo {

std::string to_string(PhaseMethod m) { return m == PhaseMethod::line ? "line" : "surface"; }
std::string to_string(Arity a) { return a == Arity::one ? "one" : "two"; }

double c1_density(double r) {
    const double q = 1.0 + r * r;
    return 2.0 / (q * q);
}

double c2_density(double r) {
    const double r2 = r * r;
    const double r4 = r2 * r2;
    const double q = 1.0 + r2;
    const double s = 1.0 + 2.0 * r4;
    return 4.0 * r2 * (4.0 - r2 - 2.0 * r4 - 6.0 * r4 * r2) / (q * q * s * s);
}

namespace {

double density(PhaseIndex which, double r) {
    return which == PhaseIndex::alpha1 ? c1_density(r) : c2_density(r);
}

// G(r)/r² = ∫₀¹ u C(ru) du, regular at r = 0.
double scaled_radial_integral(PhaseIndex which, double r) {
    return gauss_legendre([&](double u) { return u * density(which, r * u); }, 0.0, 1.0, 8);
}

}  // namespace

double radial_phase_integral(PhaseIndex which, double R) {
    require(R >= 0.0, "radial_phase_integral: R must be >= 0");
    const int panels = std::max(8, static_cast<int>(std::ceil(8.0 * R)));
    return gauss_legendre([&](double r) { return r * density(which, r); }, 0.0, R, panels);
}

double c2_sign_change() {
    auto g = [](double r) { return 4.0 - r * r - 2.0 * std::pow(r, 4) - 6.0 * std::pow(r, 6); };
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t iters = 200;
    const auto [lo, hi] = boost::math::tools::bisect(g, 0.1, 2.0, tol, iters);
    return 0.5 * (lo + hi);
}

cplx b1_coefficient(cplx f, cplx fdot) { return f * std::conj(fdot) / (1.0 + std::norm(f)); }

cplx b2_coefficient(cplx f, cplx fdot) {
    const double a2 = std::norm(f);
    const double a4 = a2 * a2;
    const cplx num = 3.0 * fdot * std::conj(f) * a4 + f * std::conj(fdot) * a2 * (4.0 + a2);
    return num / ((1.0 + a2) * (1.0 + 2.0 * a4));
}

bool polyline_self_intersects(const std::vector<cplx>& pts) {
    const std::size_t n = pts.size();
    if (n < 4) return false;
    auto cross = [](cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); };
    auto proper = [&](cplx p1, cplx p2, cplx q1, cplx q2) {
        const double d1 = cross(p2 - p1, q1 - p1);
        const double d2 = cross(p2 - p1, q2 - p1);
        const double d3 = cross(q2 - q1, p1 - q1);
        const double d4 = cross(q2 - q1, p2 - q1);
        return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
               d4 != 0;
    };
    const std::size_t nseg = n - 1;
    for (std::size_t i = 0; i < nseg; ++i) {
        for (std::size_t j = i + 2; j < nseg; ++j) {
            if (i == 0 && j == nseg - 1) continue;  // share the closing point
            if (proper(pts[i], pts[i + 1], pts[j], pts[j + 1])) return true;
        }
    }
    return false;
}

PhasePair phase_integrals(const Loop& loop, PhaseMethod method, int panels_per_segment) {
    require(loop.is_closed(1e-12), "phase_integrals: loop is not closed (f(0) and f(T) must vanish)");
    PhasePair out;
    out.method = method;
    const auto breaks = loop.breakpoints();

    if (method == PhaseMethod::line) {
        auto q1 = integrate_piecewise(
            [&](double t) { return (kI * b1_coefficient(loop.f(t), loop.fdot(t))).real(); }, breaks,
            panels_per_segment);
        auto q2 = integrate_piecewise(
            [&](double t) { return (kI * b2_coefficient(loop.f(t), loop.fdot(t))).real(); }, breaks,
            panels_per_segment);
        out.alpha1 = q1.value;
        out.alpha2 = q2.value;
        out.error = std::max(q1.error, q2.error);
        return out;
    }

    if (const auto pm = loop.pacman_params()) {
        out.alpha1 = pm->arc_angle() * radial_phase_integral(PhaseIndex::alpha1, pm->R);
        out.alpha2 = pm->arc_angle() * radial_phase_integral(PhaseIndex::alpha2, pm->R);
        const double coarse = gauss_legendre([](double r) { return r * c2_density(r); }, 0.0, pm->R, 4);
        out.error = std::abs(pm->arc_angle() * coarse - out.alpha2);
        return out;
    }

    if (const auto* sp = dynamic_cast<const SampledProfile*>(loop.profile().get())) {
        if (polyline_self_intersects(sp->samples()))
            throw std::invalid_argument("phase_integrals: surface method rejects self-intersecting loops");
    }
    auto green = [&](PhaseIndex which) {
        return integrate_piecewise(
            [&](double t) {
                const cplx f = loop.f(t);
                const double dtheta_r2 = (std::conj(f) * loop.fdot(t)).imag();
                return scaled_radial_integral(which, std::abs(f)) * dtheta_r2;
            },
            breaks, panels_per_segment);
    };
    const auto q1 = green(PhaseIndex::alpha1);
    const auto q2 = green(PhaseIndex::alpha2);
    out.alpha1 = q1.value;
    out.alpha2 = q2.value;
    out.error = std::max(q1.error, q2.error);
    return out;
}

CMatrix phase_gate(const CVector& omega, double alpha1, double alpha2, Arity arity) {
    const Index d = omega.size();
    const CMatrix P = omega * omega.adjoint();
    const CMatrix id = CMatrix::Identity(d, d);
    const CMatrix u1 = id + (std::exp(kI * alpha1) - 1.0) * P;
    if (arity == Arity::one) return u1;
    const CMatrix id2 = CMatrix::Identity(d * d, d * d);
    const CMatrix u2 = id2 + (std::exp(kI * alpha2) - 1.0) * kron(P, P);
    return kron(u1, u1) * u2;
}

GateReport analytic_gate(const ModelConfig& cfg, const Loop& loop, Arity arity, PhaseMethod method) {
    require(cfg.d == loop.d(), "analytic_gate: loop direction length does not match d");
    const PhasePair ph = phase_integrals(loop, method);
    GateReport rep;
    rep.alpha1 = ph.alpha1;
    rep.alpha2 = ph.alpha2;
    rep.U = phase_gate(loop.direction_vector(), ph.alpha1, ph.alpha2, arity);
    rep.unitarity_defect = unitarity_defect(rep.U);
    return rep;
}

CMatrix controlled_z() {
    CMatrix cz = CMatrix::Identity(4, 4);
    cz(3, 3) = -1.0;
    return cz;
}

BetaSolution solve_beta_for_phase(double R, double target, PhaseIndex which) {
    require(R > 0.0, "solve_beta_for_phase: R must be > 0");
    BetaSolution sol;
    sol.radial_integral = radial_phase_integral(which, R);
    if (target == 0.0) {
        sol.no_op = true;
        return sol;
    }
    if (std::abs(sol.radial_integral) < 1e-9) {
        std::ostringstream msg;
        msg << "phase unreachable: radial integral " << sol.radial_integral << " vanishes at R=" << R;
        throw UnreachablePhaseError(msg.str());
    }
    const double I = sol.radial_integral;
    const double step = 2.0 * kPi / std::abs(I);
    double total = target / I;
    total -= step * std::floor(total / step);
    if (total <= 0.0) total += step;
    sol.beta_total = total;
    sol.wraps = static_cast<int>(std::ceil(total / (2.0 * kPi))) - 1;
    sol.beta = total - 2.0 * kPi * sol.wraps;
    sol.achieved = total * I;
    return sol;
}

double gate_fidelity(const CMatrix& U_tilde, const CMatrix& U_target) {
    require(U_tilde.rows() == U_target.rows() && U_tilde.cols() == U_target.cols() &&
                U_tilde.rows() == U_tilde.cols(),
            "gate_fidelity: dimension mismatch");
    const double D = static_cast<double>(U_tilde.rows());
    const cplx tr = (U_tilde * U_target.adjoint()).trace();
    return (D + std::norm(tr)) / (D * (D + 1.0));
}

double phase_distance(double a, double b) {
    return std::abs(std::remainder(a - b, 2.0 * kPi));
}

}  // namespace holo
