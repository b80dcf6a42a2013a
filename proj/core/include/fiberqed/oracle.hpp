#pragma once

#include <vector>

#include "fiberqed/protocols.hpp"

namespace fiberqed {

// Brute-force cross-check: every atom is an individually labeled two-level
// system (no symmetric-sector shortcut), fields are Fock spaces truncated at
// two quanta, and atomic dissipation is the literal sum of per-atom jumps.
// The state space is restricted to total excitation <= 2, which is exact for
// the protocols here (the Hamiltonian conserves excitation and jumps only
// lower it). Refuses n_atoms > 3 to cap the exponential atom space.
FidelitySeries small_n_oracle(const Scenario& sc);

// Survival probability <W|rho(tau)|W> of one shared (W-state) excitation in
// an ensemble of n_atoms decaying by individual spontaneous emission at rate
// kappa, no field coupling. Used to pin that a single collective excitation
// decays at an N-independent rate.
std::vector<double> collective_decay_curve(int n_atoms, double kappa,
                                           const std::vector<double>& taus);

}  // namespace fiberqed
