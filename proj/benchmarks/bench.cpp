#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "fiberqed/hamiltonian.hpp"
#include "fiberqed/lindblad.hpp"
#include "fiberqed/protocols.hpp"

namespace {

using namespace fiberqed;

void BM_BuildTwoExcitationHamiltonian(benchmark::State& state) {
    SystemConfig cfg;
    cfg.N1 = cfg.N2 = 10;
    cfg.nu = 1.2;
    const Subspace sub = enumerate_basis(cfg, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_full_hamiltonian(cfg, sub));
    }
}
BENCHMARK(BM_BuildTwoExcitationHamiltonian);

void BM_ClosedSwapSeries(benchmark::State& state) {
    Scenario sc = Scenario::defaults(Protocol::Swap);
    sc.tau_max = 4.5;
    sc.tau_step = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_swap(sc));
    }
}
BENCHMARK(BM_ClosedSwapSeries)->Unit(benchmark::kMillisecond);

void BM_LindbladGeneratorApply(benchmark::State& state) {
    SystemConfig cfg;
    cfg.N1 = cfg.N2 = 20;
    cfg.nu = 1.2;
    cfg.kappa = cfg.gamma = cfg.beta = 0.1;
    const LindbladGenerator gen = build_generator(cfg, {0, 1, 2});
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(gen.layout.dim, gen.layout.dim);
    rho(0, 0) = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gen.apply(rho));
    }
}
BENCHMARK(BM_LindbladGeneratorApply);

void BM_DissipativeTransferSeries(benchmark::State& state) {
    Scenario sc = Scenario::defaults(Protocol::Transfer);
    sc.dissipative = true;
    sc.kappa = sc.gamma = sc.beta = 0.1;
    sc.n_atoms = 20;
    sc.tau_max = 4.5;
    sc.tau_step = 0.05;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_transfer(sc));
    }
}
BENCHMARK(BM_DissipativeTransferSeries)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
