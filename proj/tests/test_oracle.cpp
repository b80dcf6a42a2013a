#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fiberqed/oracle.hpp"

using namespace fiberqed;

namespace {

double max_series_diff(const FidelitySeries& a, const FidelitySeries& b) {
    REQUIRE(a.fidelity.size() == b.fidelity.size());
    double d = 0.0;
    for (size_t k = 0; k < a.fidelity.size(); ++k)
        d = std::max(d, std::abs(a.fidelity[k] - b.fidelity[k]));
    return d;
}

}  // namespace

TEST_CASE("one atom per ensemble: tensor product equals the symmetric pipeline") {
    Scenario sc = Scenario::defaults(Protocol::Transfer);
    sc.tau_max = 4.0;
    sc.tau_step = 0.05;
    CHECK(max_series_diff(small_n_oracle(sc), run_scenario(sc)) < 1e-8);
}

TEST_CASE("two atoms per ensemble confirm the sqrt(2) coupling enhancement") {
    Scenario sc = Scenario::defaults(Protocol::Transfer);
    sc.n_atoms = 2;
    sc.tau_max = 4.0;
    sc.tau_step = 0.01;
    const FidelitySeries series = small_n_oracle(sc);
    // tau = sqrt(N) g t, so the perfect-transfer peak sits at tau = pi for
    // every N only if the coupling really gains sqrt(N).
    CHECK(std::abs(series.peak_tau - std::acos(-1.0)) < 0.011);
    CHECK(series.peak_value > 1.0 - 1e-4);
}

TEST_CASE("dissipative transfer: oracle matches the pipeline for N = 2") {
    Scenario sc = Scenario::defaults(Protocol::Transfer);
    sc.n_atoms = 2;
    sc.dissipative = true;
    sc.kappa = sc.gamma = sc.beta = 0.1;
    sc.tau_max = 3.5;
    sc.tau_step = 0.25;
    CHECK(max_series_diff(small_n_oracle(sc), run_scenario(sc)) < 1e-6);
}

TEST_CASE("single shared excitation decays at an N-independent rate") {
    std::vector<double> taus;
    for (int k = 0; k <= 20; ++k) taus.push_back(0.1 * k);
    const auto c1 = collective_decay_curve(1, 0.15, taus);
    const auto c2 = collective_decay_curve(2, 0.15, taus);
    const auto c3 = collective_decay_curve(3, 0.15, taus);
    for (size_t k = 0; k < taus.size(); ++k) {
        CHECK(std::abs(c1[k] - c2[k]) < 1e-8);
        CHECK(std::abs(c1[k] - c3[k]) < 1e-8);
        CHECK(std::abs(c1[k] - std::exp(-2.0 * 0.15 * taus[k])) < 1e-7);
    }
}

TEST_CASE("the oracle refuses exponential atom counts") {
    Scenario sc = Scenario::defaults(Protocol::Transfer);
    sc.n_atoms = 4;
    CHECK_THROWS_AS(small_n_oracle(sc), std::invalid_argument);
    CHECK_THROWS_AS(collective_decay_curve(4, 0.1, {0.1}), std::invalid_argument);
}
