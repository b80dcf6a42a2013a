#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "fiberqed/dynamics.hpp"

using namespace fiberqed;
using cd = std::complex<double>;

namespace {

Eigen::MatrixXcd random_hermitian(int dim, std::mt19937& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = cd(n(rng), n(rng));
    return (a + a.adjoint()) / 2.0;
}

Eigen::VectorXcd random_state(int dim, std::mt19937& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = cd(n(rng), n(rng));
    return v / v.norm();
}

HermitianMatrix transfer_h1(double r) {
    SystemConfig cfg;
    cfg.nu = r;  // N = 1, g = 1: tau equals raw time
    return build_full_hamiltonian(cfg, enumerate_basis(cfg, 1));
}

}  // namespace

TEST_CASE("propagation at t=0 is the identity and preserves norm") {
    std::mt19937 rng(3);
    const Eigen::MatrixXcd h = random_hermitian(7, rng);
    const Eigen::VectorXcd psi = random_state(7, rng);
    const Propagator prop(h);
    CHECK((prop.apply(psi, 0.0) - psi).norm() < 1e-12);
    CHECK(std::abs(prop.apply(psi, 2.37).norm() - 1.0) < 1e-10);
}

TEST_CASE("group property and time reversal") {
    std::mt19937 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        const Eigen::MatrixXcd h = random_hermitian(6, rng);
        const Eigen::VectorXcd psi = random_state(6, rng);
        const Propagator prop(h);
        const double t1 = 0.8, t2 = 1.9;
        CHECK((prop.apply(psi, t1 + t2) - prop.apply(prop.apply(psi, t1), t2)).norm() < 1e-9);
        CHECK((prop.apply(prop.apply(psi, t1), -t1) - psi).norm() < 1e-9);
    }
}

TEST_CASE("propagate rejects a dimension mismatch") {
    SystemConfig cfg;
    const HermitianMatrix h = build_full_hamiltonian(cfg, enumerate_basis(cfg, 1));
    CHECK_THROWS(propagate(h, Eigen::VectorXcd::Ones(3), 1.0));
}

TEST_CASE("closed-form transfer amplitudes: initial condition and resonance") {
    const auto c0 = transfer_amplitudes(std::sqrt(1.5), 0.0);
    CHECK(std::abs(c0[1] - 1.0) < 1e-14);
    for (int i : {0, 2, 3, 4}) CHECK(std::abs(c0[i]) < 1e-14);

    const double pi = std::acos(-1.0);
    const auto cpi = transfer_amplitudes(std::sqrt(1.5), pi);
    CHECK(std::abs(cpi[0] - 1.0) < 1e-9);
    for (int i : {1, 2, 3, 4}) CHECK(std::abs(cpi[i]) < 1e-9);
}

TEST_CASE("closed-form transfer amplitudes match the eigendecomposition propagator") {
    const double pi = std::acos(-1.0);
    for (double r : {0.5, std::sqrt(1.5), 3.0}) {
        const Propagator prop(transfer_h1(r).mat);
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(5);
        psi0[1] = 1.0;
        for (double tau = 0.0; tau <= 4.0 * pi; tau += 0.1) {
            const auto c = transfer_amplitudes(r, tau);
            const Eigen::VectorXcd psi = prop.apply(psi0, tau);
            double norm2 = 0.0;
            for (int i = 0; i < 5; ++i) {
                CHECK(std::abs(c[i] - psi[i]) < 1e-8);
                norm2 += std::norm(c[i]);
            }
            CHECK(std::abs(norm2 - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("on-resonance transfer revives the initial state at tau = 2 pi") {
    const double pi = std::acos(-1.0);
    for (int k : {1, 2, 3}) {
        const auto c = transfer_amplitudes(transfer_condition(k), 2.0 * pi);
        CHECK(std::abs(std::abs(c[1]) - 1.0) < 1e-9);
    }
}

TEST_CASE("entangling amplitudes start at the ensemble-1 excitation") {
    const auto a = entangle_amplitudes(1.0, 2.4142, 1, 0.0);
    CHECK(std::abs(a[0]) < 1e-14);
    CHECK(std::abs(a[1] - 1.0) < 1e-14);
    CHECK(std::abs(a[2]) < 1e-14);
}

TEST_CASE("entangling amplitudes: regression pin against the 3x3 propagator") {
    // Basis order: (ensemble-2 excited, ensemble-1 excited, photon in c).
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.3, 2.5);
    for (int rep = 0; rep < 20; ++rep) {
        SystemConfig cfg;
        cfg.model = Model::Reduced;
        cfg.N1 = cfg.N2 = 1 + static_cast<int>(rng() % 4);
        cfg.g1 = u(rng);
        cfg.g2 = u(rng);
        const HermitianMatrix h = build_reduced_hamiltonian(cfg, enumerate_basis(cfg, 1));
        const Propagator prop(h.mat);
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(3);
        psi0[1] = 1.0;
        for (double t : {0.3, 1.1, 2.6}) {
            const auto a = entangle_amplitudes(cfg.g1, cfg.g2, cfg.N1, t);
            const Eigen::VectorXcd psi = prop.apply(psi0, t);
            for (int i = 0; i < 3; ++i) CHECK(std::abs(a[i] - psi[i]) < 1e-10);
            CHECK(std::abs(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]) - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("entangling conditions produce the Bell-type superpositions") {
    const double pi = std::acos(-1.0);
    const double root2 = std::sqrt(2.0);

    // g2 = (1 + sqrt 2) g1 at tau = pi / sqrt(2 + sqrt 2): (phi1 + phi2)/sqrt 2.
    {
        const auto a = entangle_amplitudes(1.0, 1.0 + root2, 1, pi / std::sqrt(2.0 + root2));
        CHECK(std::abs(a[0] - 1.0 / root2) < 1e-12);
        CHECK(std::abs(a[1] - 1.0 / root2) < 1e-12);
        CHECK(std::abs(a[2]) < 1e-12);
    }
    // g2 = (sqrt 2 - 1) g1 at tau = pi / sqrt(2 - sqrt 2): (phi1 - phi2)/sqrt 2.
    {
        const auto a = entangle_amplitudes(1.0, root2 - 1.0, 1, pi / std::sqrt(2.0 - root2));
        CHECK(std::abs(a[0] - 1.0 / root2) < 1e-12);
        CHECK(std::abs(a[1] + 1.0 / root2) < 1e-12);
        CHECK(std::abs(a[2]) < 1e-12);
    }
}

TEST_CASE("entangle_amplitudes rejects vanishing couplings") {
    CHECK_THROWS(entangle_amplitudes(0.0, 0.0, 1, 1.0));
}
