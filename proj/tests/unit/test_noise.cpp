#include "holo/noise.hpp"

#include <doctest.h>

#include <cmath>

using namespace holo;

namespace {

Loop pacman(double R, double beta) {
    PacmanParams p;
    p.R = R;
    p.beta = beta;
    p.t1 = 1.0;
    p.t2 = 1.0;
    return Loop::pacman(p, {0.0, 1.0});
}

}  // namespace

TEST_CASE("perturbed loop scales the profile") {
    const Loop loop = pacman(3.0, 2.0);
    const Loop pert = perturb_loop(loop, LoopPerturbation::amplitude(0.01));
    for (double t : {0.3, 1.4, 2.7}) {
        CHECK(std::abs(pert.f(t) - 1.01 * loop.f(t)) < 1e-14);
        CHECK(std::abs(pert.fdot(t) - 1.01 * loop.fdot(t)) < 1e-14);
    }
    const auto phase = LoopPerturbation::general(TimeFunction::constant(0.0), {[](double t) { return 0.1 * t; },
                                                                               [](double) { return 0.1; }});
    const Loop rot = perturb_loop(loop, phase);
    const double t = 1.5;
    CHECK(std::abs(rot.fdot(t) - (loop.fdot(t) + kI * 0.1 * loop.f(t)) * std::polar(1.0, 0.1 * t)) < 1e-13);
}

TEST_CASE("phase errors: exact, bound and leading order") {
    const Loop loop = pacman(5.0, 3.0);
    for (double eps : {1e-3, 2e-3}) {
        const auto da = delta_alpha_bound(loop, LoopPerturbation::amplitude(eps));
        REQUIRE(da.bound_available);
        CHECK(std::abs(da.exact1) <= da.bound1 * (1 + 1e-9));
        CHECK(std::abs(da.exact2) <= da.bound2 * (1 + 1e-9));
        CHECK(da.leading1 == doctest::Approx(leading_dalpha1(5.0, 3.0, eps)));
        CHECK(da.exact1 == doctest::Approx(da.leading1).epsilon(10 * eps));
        CHECK(da.exact2 == doctest::Approx(da.leading2).epsilon(10 * eps));
    }
    const double r1 = delta_alpha_bound(loop, LoopPerturbation::amplitude(2e-3)).exact1 - leading_dalpha1(5.0, 3.0, 2e-3);
    const double r2 = delta_alpha_bound(loop, LoopPerturbation::amplitude(1e-3)).exact1 - leading_dalpha1(5.0, 3.0, 1e-3);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("fidelity expansion is second order in the phase errors") {
    CVector w(2);
    w << 0.0, 1.0;
    const CMatrix u = phase_gate(w, 0.3, 1.1, Arity::two);
    const CMatrix ut = phase_gate(w, 0.3 + 1e-3, 1.1 - 2e-3, Arity::two);
    CHECK(fidelity_expansion(2, 1e-3, -2e-3) == doctest::Approx(gate_fidelity(ut, u)).epsilon(1e-11));
    CHECK(fidelity_expansion(2, 0.0, 0.0) == 1.0);
}

TEST_CASE("log-log fit") {
    const auto fit = loglog_fit({1.0, 2.0, 4.0}, {3.0, 12.0, 48.0});
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(std::exp(fit.intercept) == doctest::Approx(3.0));
    CHECK_THROWS(loglog_fit({1.0}, {1.0}));
}

TEST_CASE("coherent sweep rows") {
    ModelConfig cfg;
    const auto rows = coherent_error_sweep(cfg, {5.0}, {1e-3, 2e-3});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].F_exact < 1.0);
    CHECK(rows[1].F_exact < rows[0].F_exact);
    CHECK((1 - rows[1].F_exact) / (1 - rows[0].F_exact) == doctest::Approx(4.0).epsilon(0.01));
    CHECK(rows[0].F_expansion == doctest::Approx(rows[0].F_exact).epsilon(1e-10));
    CHECK(coherent_csv_header() == "R,beta,epsilon,dalpha1,dalpha2,bound1,bound2,F_exact,F_expansion");
}

TEST_CASE("OU trajectories: statistics and reproducibility") {
    NoiseProcessSpec spec;
    spec.sigma2 = 2.0;
    spec.tau_c = 0.5;
    const double dt = 0.05;
    const int n = 20000;
    const auto a = sample_ou_trajectory(spec, dt, n, 1, 3);
    const auto b = sample_ou_trajectory(spec, dt, n, 1, 3);
    const auto c = sample_ou_trajectory(spec, dt, n, 1, 4);
    CHECK(a == b);
    CHECK(a != c);
    const auto& x = a[0];
    double mean = 0, var = 0, lag = 0;
    for (int k = 0; k <= n; ++k) mean += x[static_cast<std::size_t>(k)];
    mean /= n + 1;
    for (int k = 0; k <= n; ++k) var += std::pow(x[static_cast<std::size_t>(k)] - mean, 2);
    var /= n + 1;
    for (int k = 0; k < n; ++k)
        lag += (x[static_cast<std::size_t>(k)] - mean) * (x[static_cast<std::size_t>(k) + 1] - mean);
    lag /= n * var;
    CHECK(std::abs(mean) < 0.15);
    CHECK(var == doctest::Approx(2.0).epsilon(0.1));
    CHECK(lag == doctest::Approx(std::exp(-dt / spec.tau_c)).epsilon(0.02));
}

TEST_CASE("coarse noise grids are flagged") {
    NoiseProcessSpec spec;
    CHECK(sample_noise_trajectories(spec, 2.0, 0.01, 2, 2).coarse_warning == false);
    CHECK(sample_noise_trajectories(spec, 2.0, 0.2, 2, 2).coarse_warning == true);
}

TEST_CASE("kernel integral") {
    NoiseProcessSpec spec;
    spec.sigma2 = 1.5;
    spec.tau_c = 0.4;
    const double t = 1.3;
    double s = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) s += spec.sigma2 * std::exp(-(t - (i + 0.5) * t / n) / spec.tau_c) * t / n;
    CHECK(ou_kernel_integral(spec, t) == doctest::Approx(s).epsilon(1e-8));
}

TEST_CASE("master equation preserves trace and positivity") {
    ModelConfig cfg;
    NoiseProcessSpec spec;
    CVector psi = CVector::Zero(4);
    psi(0) = psi(1) = std::sqrt(0.5);
    double err = 1.0;
    const auto rho = master_equation_state(cfg, pacman(2.0, kPi), spec, 0.02, psi, MasterMode::lindblad, &err);
    CHECK(err < 1e-10);
    CHECK(rho.trace() == doctest::Approx(1.0));
    CHECK(rho.hermiticity_defect() < 1e-10);
    CHECK(rho.min_eigenvalue() > -1e-10);
    CHECK(rho.purity() < 1.0);
}

TEST_CASE("without noise the average equals the master state") {
    ModelConfig cfg;
    NoiseProcessSpec spec;
    spec.gamma = 0.0;
    CVector psi = CVector::Zero(4);
    psi(1) = 1.0;
    const auto rep = noisy_average_vs_master(cfg, pacman(2.0, kPi), spec, 4, 0.02, psi, MasterMode::lindblad, 2);
    CHECK(rep.trace_distance < 1e-10);
}

TEST_CASE("trajectory average is independent of the thread count") {
    ModelConfig cfg;
    NoiseProcessSpec spec;
    CVector psi = CVector::Zero(4);
    psi(0) = 1.0;
    const auto one = noisy_average_vs_master(cfg, pacman(2.0, kPi), spec, 16, 0.05, psi, MasterMode::lindblad, 1);
    const auto three = noisy_average_vs_master(cfg, pacman(2.0, kPi), spec, 16, 0.05, psi, MasterMode::lindblad, 3);
    CHECK(one.rho_avg.rho == three.rho_avg.rho);
}
