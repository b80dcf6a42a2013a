#pragma once

#include <Eigen/Dense>

#include "fiberqed/basis.hpp"

namespace fiberqed {

// Dense Hermitian matrix together with the subspace it acts on.
struct HermitianMatrix {
    Eigen::MatrixXcd mat;
    Subspace space;

    int dim() const { return static_cast<int>(mat.rows()); }
};

// Interaction Hamiltonian of the full chain (two cavities + fiber) on one
// excitation sector:
//   H = sum_j g_j (J_j^- a_j^+ + h.c.) + nu (b (a_1^+ + a_2^+) + h.c.)
// with collective lowering matrix elements sqrt(m (N_j - m + 1)) and the
// usual sqrt(n+1) photon factors.
// Throws on model mismatch or if the basis contains an m=2 state for a
// one-atom ensemble.
HermitianMatrix build_full_hamiltonian(const SystemConfig& cfg, const Subspace& sub);

// Interaction Hamiltonian of the resonant-mode limit on one sector:
//   H = (1/sqrt(2)) (g1 J_1^- c^+ - g2 J_2^- c^+ + h.c.)
// Note the relative minus sign on the g2 term.
HermitianMatrix build_reduced_hamiltonian(const SystemConfig& cfg, const Subspace& sub);

// Closed-form spectrum of the full-model single-excitation sector for
// g1 = g2 = g, N1 = N2 = N:
//   E = {0, -sqrt(N) g, +sqrt(N) g, -sqrt(N g^2 + 2 nu^2), +sqrt(N g^2 + 2 nu^2)}
// together with the real orthogonal matrix S whose rows are the eigenvectors,
// so that S H S^T = diag(E).
struct AnalyticSpectrum {
    std::array<double, 5> eigenvalues{};
    Eigen::Matrix<double, 5, 5> s;
};

// Requires g1 == g2 and N1 == N2; otherwise throws std::invalid_argument.
AnalyticSpectrum analytic_spectrum(const SystemConfig& cfg);

// The coupling ratio r = nu/(sqrt(N) g) at which the single-excitation
// transfer returns a perfect state at tau = pi: r = sqrt((4 k^2 - 1)/2).
// k must be a positive integer.
double transfer_condition(int k);

}  // namespace fiberqed
