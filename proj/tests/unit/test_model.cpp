#include "holo/errors.hpp"
#include "holo/model.hpp"

#include <doctest.h>

#include <random>

using namespace holo;

namespace {

ParameterPoint random_point(std::mt19937_64& rng, int d) {
    std::normal_distribution<double> n;
    std::vector<double> lam(static_cast<std::size_t>(2 * d));
    for (auto& x : lam) x = n(rng);
    return ParameterPoint(lam);
}

int null_dimension(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    int n = 0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) n += std::abs(es.eigenvalues()(i)) < 1e-9;
    return n;
}

}  // namespace

TEST_CASE("config validation") {
    ModelConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.d = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.d = 2;
    cfg.omega_d = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.omega_d = 1.0;
    cfg.W = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("parameter point coordinates") {
    const std::vector<cplx> amp = {{1.0, 2.0}, {-0.5, 0.25}};
    const auto p = ParameterPoint::from_amplitudes(amp);
    CHECK(p.d() == 2);
    CHECK(p.omega(0) == amp[0]);
    CHECK(p.omega(1) == amp[1]);
    CHECK(p.drive_norm_sq() == doctest::Approx(5.3125));
    CHECK_THROWS(ParameterPoint(std::vector<double>{1.0, 2.0, 3.0}));
}

TEST_CASE("hamiltonians are hermitian with the expected null dimensions") {
    std::mt19937_64 rng(11);
    for (int d : {2, 3, 4}) {
        ModelConfig cfg;
        cfg.d = d;
        cfg.omega_d = std::polar(1.3, 0.4);
        const auto p = random_point(rng, d);
        const CMatrix h1 = single_atom_hamiltonian(cfg, p);
        const CMatrix h2 = two_atom_hamiltonian(cfg, p);
        CHECK(h1.rows() == d + 2);
        CHECK(h2.rows() == (d + 2) * (d + 2));
        CHECK(operator_norm(h1 - h1.adjoint()) == 0.0);
        CHECK(operator_norm(h2 - h2.adjoint()) < 1e-14);
        CHECK(null_dimension(h1) == d);
        CHECK(null_dimension(h2) == d * d + 1);
        const Index dd = pair_index(d, d, d);
        CHECK(h2(dd, dd).real() == doctest::Approx(cfg.W));
    }
}

TEST_CASE("decay adds an anti-hermitian term on |d>") {
    ModelConfig cfg;
    cfg.gamma = 0.02;
    const auto p = ParameterPoint::base(2);
    const CMatrix h = single_atom_hamiltonian(cfg, p, Decay::on);
    CHECK(h(2, 2).imag() == doctest::Approx(-0.01));
    CHECK_THROWS(single_atom_null_frame(cfg, p));
}

TEST_CASE("null frames annihilate and match their gram closed forms") {
    std::mt19937_64 rng(5);
    for (int d : {2, 3}) {
        ModelConfig cfg;
        cfg.d = d;
        cfg.omega_d = std::polar(0.8, -1.1);
        for (int k = 0; k < 5; ++k) {
            const auto p = random_point(rng, d);
            for (const NullFrame& fr : {single_atom_null_frame(cfg, p), two_atom_null_frame(cfg, p)}) {
                const CMatrix h = fr.kind == FrameKind::single ? single_atom_hamiltonian(cfg, p) : two_atom_hamiltonian(cfg, p);
                CHECK((h * fr.basis).norm() < 1e-11);
                const CMatrix g = fr.basis.adjoint() * fr.basis;
                CHECK((g - fr.gram).norm() / g.norm() < 1e-13);
                CHECK((fr.gram * fr.gram_inv - CMatrix::Identity(fr.size(), fr.size())).norm() < 1e-10);
            }
        }
    }
}

TEST_CASE("two-atom frame ordering and blocks") {
    ModelConfig cfg;
    cfg.d = 3;
    const auto p = ParameterPoint::base(3);
    const NullFrame fr = two_atom_null_frame(cfg, p);
    CHECK(fr.size() == 10);
    CHECK(fr.labels.front().block == FrameBlock::zero);
    CHECK(fr.block_range(FrameBlock::minus).size == 3);
    CHECK(fr.block_range(FrameBlock::plus).size == 6);
    CHECK(antisymmetric_pairs(3).size() == 3);
    CHECK(symmetric_pairs(3).size() == 6);
    ModelConfig free = cfg;
    free.W = 0.0;
    CHECK_THROWS(two_atom_null_frame(free, p));
}

TEST_CASE("quintic roots match the dense spectrum") {
    std::mt19937_64 rng(17);
    for (double W : {10.0, 20.0}) {
        ModelConfig cfg;
        cfg.W = W;
        for (int k = 0; k < 4; ++k) {
            const auto rep = spectral_gap(cfg, random_point(rng, 2));
            CHECK(rep.quintic_roots.size() == 5);
            CHECK(rep.max_root_mismatch < 1e-8);
            CHECK(rep.gap > 0.0);
        }
    }
}

TEST_CASE("vanishing interaction collapses the quintic") {
    ModelConfig cfg;
    cfg.W = 0.0;
    const auto p = ParameterPoint::from_amplitudes(std::vector<cplx>{{0.3, 0.0}, {1.5, -2.0}});
    const double om = std::sqrt(total_drive_sq(cfg, p));
    const auto r = quintic_roots(cfg, p);
    const std::vector<double> expect = {-2 * om, -om, 0.0, om, 2 * om};
    for (std::size_t i = 0; i < 5; ++i) CHECK(r[i] == doctest::Approx(expect[i]).epsilon(1e-10));
}

TEST_CASE("gap approaches its large-W form") {
    ModelConfig cfg;
    cfg.W = 1e4;
    const auto p = ParameterPoint::from_amplitudes(std::vector<cplx>{0.0, {5.0, 0.0}});
    const auto rep = spectral_gap(cfg, p);
    CHECK(rep.gap == doctest::Approx(rep.asymptotic_gap).epsilon(1e-3));
}
