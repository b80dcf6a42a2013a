#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "fiberqed/basis.hpp"
#include "fiberqed/ode.hpp"

namespace fiberqed {

// Stacked excitation sectors sharing one index space. Dissipative jumps
// couple the sectors downward, so the density matrix lives on the direct sum.
struct DirectSum {
    std::vector<Subspace> sectors;
    std::vector<int> offsets;
    int dim = 0;

    // Global index of local state `i` within the sector of excitation `exc`;
    // throws if the sector is absent.
    int global_index(int exc, int local) const;
    const Subspace& sector(int exc) const;
};

struct JumpOperator {
    std::string name;
    double rate = 0.0;
    Eigen::MatrixXcd op;         // lowers the excitation number by one
    Eigen::MatrixXcd op_dag_op;  // cached op^+ op
};

// Hamiltonian part plus dissipative channels, all on the direct-sum space.
// The bracket convention is L[o] rho = 2 o rho o^+ - o^+ o rho - rho o^+ o,
// applied with the configured rates.
struct LindbladGenerator {
    SystemConfig config;
    DirectSum layout;
    Eigen::MatrixXcd hamiltonian;
    std::vector<JumpOperator> jumps;

    // d rho / dt for an arbitrary matrix (linearity is used to evolve
    // non-Hermitian dyads as well as density matrices).
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
};

// Builds the generator on the requested excitation sectors.
// Photon channels: each cavity mode at rate gamma, the fiber at rate beta
// (full model), or mode c at rate gamma (reduced model), with sqrt(n)
// elements. Atomic spontaneous emission is a sum of individual-atom jumps;
// restricted to the symmetric sector with m <= 1 it closes onto the retained
// basis as a collective jump with matrix element exactly 1 -- not sqrt(N):
//   sum_i sigma_i^- |1,N-1><1,N-1| sigma_i^+ = |0,N><0,N|,
//   sum_i sigma_i^+ sigma_i^- = m on the retained states,
// so the collective coupling gains sqrt(N) but the decay does not.
// Requires blockade for any sector with excitation 2.
LindbladGenerator build_generator(const SystemConfig& cfg, const std::vector<int>& sectors);

// Integrates d rho/dt = gen(rho) and returns rho at each grid time.
// The grid must be ascending and start at 0; rho0 must be Hermitian with
// unit trace. Trace and Hermiticity are checked at every output time
// (1e-7 / 1e-9); violations and step-size failures throw.
std::vector<Eigen::MatrixXcd> evolve_master(const LindbladGenerator& gen,
                                            const Eigen::MatrixXcd& rho0,
                                            const std::vector<double>& t_grid,
                                            const OdeOptions& opt = {});

// Evolves a stack of matrices jointly under the generator, invoking
// `on_grid(k, stack)` at each grid time. No density-matrix validity checks;
// used for dyad bookkeeping where individual entries are not states.
void evolve_matrices(const LindbladGenerator& gen, std::vector<Eigen::MatrixXcd> stack,
                     const std::vector<double>& t_grid,
                     const std::function<void(int, const std::vector<Eigen::MatrixXcd>&)>& on_grid,
                     const OdeOptions& opt = {});

}  // namespace fiberqed
