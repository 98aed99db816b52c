#include "holo/noise.hpp"

#include "holo/quadrature.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <thread>

namespace holo {

LoopPerturbation LoopPerturbation::amplitude(double eps) {
    require(std::abs(eps) < 1.0, "perturbation: |epsilon| must be < 1");
    return {TimeFunction::constant(eps), TimeFunction::constant(0.0), eps};
}

LoopPerturbation LoopPerturbation::general(TimeFunction epsilon, TimeFunction phi) {
    return {std::move(epsilon), std::move(phi), std::nullopt};
}

Loop perturb_loop(const Loop& loop, const LoopPerturbation& pert) {
    return loop.with_profile(std::make_shared<PerturbedProfile>(loop.profile(), pert.epsilon, pert.phi));
}

double leading_dalpha1(double R, double beta, double eps) {
    const double q = 1.0 + R * R;
    return eps * beta * 2.0 * R * R / (q * q);
}

double leading_dalpha2(double R, double beta, double eps) {
    const double R2 = R * R;
    const double R4 = R2 * R2;
    const double R6 = R4 * R2;
    const double den = 1.0 + R2 + 2.0 * R4 + 2.0 * R6;
    return eps * beta * 4.0 * R4 * (4.0 - R2 - 2.0 * R4 - 6.0 * R6) / (den * den);
}

double fidelity_expansion(int d, double da1, double da2) {
    const double dd = d;
    const double n = dd * dd + 1.0;
    return 1.0 - 2.0 * (dd - 1.0) / n * da1 * da1 - (dd * dd - 1.0) / (dd * dd * n) * da2 * da2 -
           4.0 * (dd - 1.0) / (dd * n) * da1 * da2;
}

DeltaAlpha delta_alpha_bound(const Loop& loop, const LoopPerturbation& pert) {
    const Loop perturbed = perturb_loop(loop, pert);
    const PhasePair a = phase_integrals(loop, PhaseMethod::line, 32);
    const PhasePair b = phase_integrals(perturbed, PhaseMethod::line, 32);
    DeltaAlpha out;
    out.exact1 = b.alpha1 - a.alpha1;
    out.exact2 = b.alpha2 - a.alpha2;
    out.bound1 = std::numeric_limits<double>::quiet_NaN();
    out.bound2 = std::numeric_limits<double>::quiet_NaN();
    out.leading1 = std::numeric_limits<double>::quiet_NaN();
    out.leading2 = std::numeric_limits<double>::quiet_NaN();
    const auto pm = loop.pacman_params();
    if (pm && pert.constant_epsilon) {
        const double eps = *pert.constant_epsilon;
        const double beta = pm->arc_angle();
        const double lo = std::min(pm->R, pm->R * (1.0 + eps));
        const double hi = std::max(pm->R, pm->R * (1.0 + eps));
        out.bound1 = beta * gauss_legendre([](double r) { return r * std::abs(c1_density(r)); }, lo, hi, 8);
        out.bound2 = beta * gauss_legendre([](double r) { return r * std::abs(c2_density(r)); }, lo, hi, 8);
        out.leading1 = leading_dalpha1(pm->R, beta, eps);
        out.leading2 = leading_dalpha2(pm->R, beta, eps);
        out.bound_available = true;
    }
    return out;
}

std::vector<CoherentRow> coherent_error_sweep(const ModelConfig& cfg, const std::vector<double>& R_list,
                                              const std::vector<double>& epsilon_list) {
    cfg.validate();
    std::vector<CoherentRow> rows;
    std::vector<cplx> w(static_cast<std::size_t>(cfg.d), 0.0);
    w.back() = 1.0;
    for (double R : R_list) {
        const BetaSolution sol = solve_beta_for_phase(R, kPi, PhaseIndex::alpha2);
        PacmanParams p;
        p.R = R;
        p.beta = sol.beta;
        p.wraps = sol.wraps;
        p.t1 = 1.0;
        p.t2 = 1.0;
        const Loop loop = Loop::pacman(p, w);
        const PhasePair base = phase_integrals(loop, PhaseMethod::line, 32);
        const CMatrix U = phase_gate(loop.direction_vector(), base.alpha1, base.alpha2, Arity::two);
        for (double eps : epsilon_list) {
            const DeltaAlpha da = delta_alpha_bound(loop, LoopPerturbation::amplitude(eps));
            const CMatrix Ut = phase_gate(loop.direction_vector(), base.alpha1 + da.exact1, base.alpha2 + da.exact2,
                                          Arity::two);
            rows.push_back({R, p.arc_angle(), eps, da.exact1, da.exact2, da.bound1, da.bound2, gate_fidelity(Ut, U),
                            fidelity_expansion(cfg.d, da.exact1, da.exact2)});
        }
    }
    return rows;
}

std::string coherent_csv_header() { return "R,beta,epsilon,dalpha1,dalpha2,bound1,bound2,F_exact,F_expansion"; }

std::string coherent_csv_row(const CoherentRow& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.6f,%.12f,%.6e,%.12e,%.12e,%.12e,%.12e,%.15f,%.15f", r.R, r.beta, r.epsilon,
                  r.dalpha1, r.dalpha2, r.bound1, r.bound2, r.F_exact, r.F_expansion);
    return buf;
}

LinearFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size() && x.size() >= 2, "loglog_fit: need at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        require(x[i] > 0.0 && y[i] > 0.0, "loglog_fit: values must be positive");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {slope, (sy - slope * sx) / n};
}

CoherentSummary summarize_coherent(const std::vector<CoherentRow>& rows) {
    CoherentSummary s;
    std::vector<double> Rs;
    for (const auto& r : rows)
        if (std::find(Rs.begin(), Rs.end(), r.R) == Rs.end()) Rs.push_back(r.R);
    for (double R : Rs) {
        std::vector<double> eps, inf;
        double beta = 0.0;
        double logc = 0.0;
        for (const auto& r : rows) {
            if (r.R != R || r.epsilon <= 0.0) continue;
            eps.push_back(r.epsilon);
            inf.push_back(1.0 - r.F_exact);
            beta = r.beta;
            logc += std::log((1.0 - r.F_exact) / (r.epsilon * r.epsilon));
        }
        if (eps.size() < 2) continue;
        s.R.push_back(R);
        s.slope.push_back(loglog_fit(eps, inf).slope);
        s.c.push_back(std::exp(logc / static_cast<double>(eps.size())) / (beta * beta));
    }
    return s;
}

// ---------------------------------------------------------------------------

void NoiseProcessSpec::validate() const {
    require(sigma2 >= 0.0, "noise: sigma2 must be >= 0");
    require(tau_c > 0.0, "noise: tau_c must be > 0");
    require(gamma >= 0.0, "noise: gamma must be >= 0");
}

std::vector<std::vector<double>> sample_ou_trajectory(const NoiseProcessSpec& spec, double dt, int n_steps,
                                                      int n_channels, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double a = std::exp(-dt / spec.tau_c);
    const double sd = std::sqrt(spec.sigma2);
    const double kick = std::sqrt(spec.sigma2 * (1.0 - a * a));
    std::vector<std::vector<double>> xi(static_cast<std::size_t>(n_channels),
                                        std::vector<double>(static_cast<std::size_t>(n_steps) + 1));
    for (auto& ch : xi) {
        ch[0] = sd * normal(rng);
        for (std::size_t k = 1; k < ch.size(); ++k) ch[k] = a * ch[k - 1] + kick * normal(rng);
    }
    return xi;
}

namespace {

int grid_steps(double T, double dt) {
    require(T > 0.0 && dt > 0.0, "noise: T and dt must be > 0");
    return std::max(1, static_cast<int>(std::lround(T / dt)));
}

}  // namespace

TrajectorySet sample_noise_trajectories(const NoiseProcessSpec& spec, double T, double dt, int n_channels,
                                        int n_traj) {
    spec.validate();
    require(n_channels >= 1 && n_traj >= 1, "noise: need at least one channel and one trajectory");
    TrajectorySet set;
    set.n_steps = grid_steps(T, dt);
    set.dt = T / set.n_steps;
    set.n_channels = n_channels;
    set.coarse_warning = set.dt > spec.tau_c / 10.0;
    for (int i = 0; i < n_traj; ++i)
        set.xi.push_back(sample_ou_trajectory(spec, set.dt, set.n_steps, n_channels, static_cast<std::uint64_t>(i)));
    return set;
}

double ou_kernel_integral(const NoiseProcessSpec& spec, double t) {
    return spec.sigma2 * spec.tau_c * (1.0 - std::exp(-t / spec.tau_c));
}

double MixedState::min_eigenvalue() const {
    const CMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

namespace {

constexpr double kGaussOffset = 0.28867513459481287;  // √3/6
constexpr double kMagnusComm = 0.14433756729740643;   // √3/12

std::vector<CMatrix> coupling_operators(int d) {
    std::vector<CMatrix> X;
    for (int a = 0; a < d; ++a) {
        CMatrix x = CMatrix::Zero(d + 2, d + 2);
        x(a, level_f(d)) = 1.0;
        x(level_f(d), a) = 1.0;
        X.push_back(x);
    }
    return X;
}

CMatrix step_generator(const CMatrix& a1, const CMatrix& a2, double h) {
    return 0.5 * h * (a1 + a2) + (kMagnusComm * h * h) * (a2 * a1 - a1 * a2);
}

// Row-major vectorization: vec(AρB) = (A ⊗ Bᵀ) vec(ρ).
CMatrix left(const CMatrix& a) { return kron(a, CMatrix::Identity(a.rows(), a.cols())); }
CMatrix right(const CMatrix& b) { return kron(CMatrix::Identity(b.rows(), b.cols()), b.transpose()); }

CVector vec(const CMatrix& m) {
    CVector v(m.size());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
    return v;
}

CMatrix unvec(const CVector& v, Index n) {
    CMatrix m(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) m(i, j) = v(i * n + j);
    return m;
}

CMatrix liouvillian(const ModelConfig& cfg, const Loop& loop, const NoiseProcessSpec& spec,
                    const std::vector<CMatrix>& X, double t, MasterMode mode) {
    const CMatrix H = single_atom_hamiltonian(cfg, loop.point(cfg, t));
    CMatrix L = -kI * (left(H) - right(H));
    const double g2 = spec.gamma * spec.gamma;
    if (g2 == 0.0) return L;
    if (mode == MasterMode::lindblad) {
        const double rate = 2.0 * g2 * ou_kernel_integral(spec, t);
        for (const CMatrix& x : X) {
            const CMatrix x2 = x * x;
            L += rate * (left(x) * right(x) - 0.5 * (left(x2) + right(x2)));
        }
        return L;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    const CMatrix& V = es.eigenvectors();
    const RVector& E = es.eigenvalues();
    const double inv_tau = 1.0 / spec.tau_c;
    for (const CMatrix& x : X) {
        const CMatrix xe = V.adjoint() * x * V;
        CMatrix k(xe.rows(), xe.cols());
        for (Index m = 0; m < xe.rows(); ++m) {
            for (Index n = 0; n < xe.cols(); ++n) {
                const cplx z = inv_tau + kI * (E(m) - E(n));
                k(m, n) = xe(m, n) * spec.sigma2 * (1.0 - std::exp(-t * z)) / z;
            }
        }
        const CMatrix K = V * k * V.adjoint();
        // −γ²[X,[K,ρ]]
        L -= g2 * (left(x) * (left(K) - right(K)) - right(x) * (left(K) - right(K)));
    }
    return L;
}

}  // namespace

MixedState master_equation_state(const ModelConfig& cfg, const Loop& loop, const NoiseProcessSpec& spec, double dt,
                                 const CVector& psi0, MasterMode mode, double* max_trace_error) {
    cfg.validate();
    spec.validate();
    require(cfg.gamma == 0.0, "master equation: requires gamma (decay) = 0");
    require(psi0.size() == cfg.d + 2, "master equation: initial state must be single-atom");
    const auto X = coupling_operators(cfg.d);
    const Index n = cfg.d + 2;
    const int steps = grid_steps(loop.duration(), dt);
    const double h = loop.duration() / steps;
    CVector r = vec(psi0 * psi0.adjoint());
    double worst = 0.0;
    for (int s = 0; s < steps; ++s) {
        const double t = s * h;
        const CMatrix l1 = liouvillian(cfg, loop, spec, X, t + (0.5 - kGaussOffset) * h, mode);
        const CMatrix l2 = liouvillian(cfg, loop, spec, X, t + (0.5 + kGaussOffset) * h, mode);
        r = step_generator(l1, l2, h).exp() * r;
        cplx tr = 0.0;
        for (Index i = 0; i < n; ++i) tr += r(i * n + i);
        worst = std::max(worst, std::abs(tr - 1.0));
    }
    if (max_trace_error) *max_trace_error = worst;
    return {unvec(r, n)};
}

StochasticReport noisy_average_vs_master(const ModelConfig& cfg, const Loop& loop, const NoiseProcessSpec& spec,
                                         int n_traj, double dt, const CVector& psi0, MasterMode mode, int threads) {
    cfg.validate();
    spec.validate();
    require(cfg.gamma == 0.0, "stochastic: requires gamma (decay) = 0");
    require(n_traj >= 2, "stochastic: need at least two trajectories");
    require(psi0.size() == cfg.d + 2, "stochastic: initial state must be single-atom");
    require(std::abs(psi0.norm() - 1.0) < 1e-12, "stochastic: initial state must be normalised");
    const int d = cfg.d;
    const Index n = d + 2;
    const int steps = grid_steps(loop.duration(), dt);
    const double h = loop.duration() / steps;
    const auto X = coupling_operators(d);

    // Deterministic Hamiltonians at the Gauss nodes, shared by all trajectories.
    std::vector<CMatrix> H1(static_cast<std::size_t>(steps)), H2(static_cast<std::size_t>(steps));
    for (int s = 0; s < steps; ++s) {
        H1[static_cast<std::size_t>(s)] = single_atom_hamiltonian(cfg, loop.point(cfg, (s + 0.5 - kGaussOffset) * h));
        H2[static_cast<std::size_t>(s)] = single_atom_hamiltonian(cfg, loop.point(cfg, (s + 0.5 + kGaussOffset) * h));
    }

    auto run = [&](std::uint64_t index) {
        const auto xi = sample_ou_trajectory(spec, h, steps, d, index);
        CVector psi = psi0;
        for (int s = 0; s < steps; ++s) {
            const auto k = static_cast<std::size_t>(s);
            CMatrix a1 = H1[k];
            CMatrix a2 = H2[k];
            for (int a = 0; a < d; ++a) {
                const auto& ch = xi[static_cast<std::size_t>(a)];
                const double x1 = ch[k] + (0.5 - kGaussOffset) * (ch[k + 1] - ch[k]);
                const double x2 = ch[k] + (0.5 + kGaussOffset) * (ch[k + 1] - ch[k]);
                a1 += spec.gamma * x1 * X[static_cast<std::size_t>(a)];
                a2 += spec.gamma * x2 * X[static_cast<std::size_t>(a)];
            }
            psi = step_generator(-kI * a1, -kI * a2, h).exp() * psi;
        }
        return psi;
    };

    const int half = n_traj / 2;
    std::vector<CMatrix> partial_first, partial_all;
    std::vector<CVector> finals(static_cast<std::size_t>(n_traj));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < n_traj; i = next++) finals[static_cast<std::size_t>(i)] = run(static_cast<std::uint64_t>(i));
    };
    unsigned nthreads = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
    nthreads = std::max(1u, std::min<unsigned>(nthreads, static_cast<unsigned>(n_traj)));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    // Summation in index order keeps the average independent of scheduling.
    CMatrix sum_half = CMatrix::Zero(n, n);
    CMatrix sum_all = CMatrix::Zero(n, n);
    for (int i = 0; i < n_traj; ++i) {
        const CMatrix p = finals[static_cast<std::size_t>(i)] * finals[static_cast<std::size_t>(i)].adjoint();
        sum_all += p;
        if (i < half) sum_half += p;
    }

    StochasticReport rep;
    rep.n_traj = n_traj;
    rep.dt = h;
    rep.coarse_warning = h > spec.tau_c / 10.0;
    rep.rho_avg.rho = sum_all / static_cast<double>(n_traj);
    rep.rho_master = master_equation_state(cfg, loop, spec, h, psi0, mode, &rep.max_trace_error);
    rep.trace_distance = trace_distance(rep.rho_avg.rho, rep.rho_master.rho);
    rep.trace_distance_half = trace_distance(sum_half / static_cast<double>(half), rep.rho_master.rho);
    rep.relative_change =
        rep.trace_distance > 0.0 ? std::abs(rep.trace_distance - rep.trace_distance_half) / rep.trace_distance : 0.0;
    return rep;
}

}  // namespace holo
