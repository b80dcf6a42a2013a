#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "fiberqed/hamiltonian.hpp"

namespace fiberqed {

// Cached eigendecomposition of a Hermitian matrix; evaluates U(t) = exp(-iHt)
// exactly for any real t.
class Propagator {
  public:
    explicit Propagator(const Eigen::MatrixXcd& h);
    explicit Propagator(const HermitianMatrix& h) : Propagator(h.mat) {}

    Eigen::VectorXcd apply(const Eigen::VectorXcd& psi, double t) const;
    Eigen::MatrixXcd matrix(double t) const;

    const Eigen::VectorXd& eigenvalues() const { return evals_; }

  private:
    Eigen::VectorXd evals_;
    Eigen::MatrixXcd evecs_;
};

// exp(-iHt) psi0 by eigendecomposition; norm preserved to machine precision,
// t may be negative. Throws on dimension mismatch.
Eigen::VectorXcd propagate(const HermitianMatrix& h, const Eigen::VectorXcd& psi0, double t);

// Closed-form single-excitation transfer amplitudes for the full chain with
// equal couplings, starting from one collective excitation in ensemble 1.
// Arguments are the coupling ratio r and the dimensionless time
// tau = sqrt(N) g t; returned in the canonical single-excitation order.
std::array<std::complex<double>, 5> transfer_amplitudes(double r, double tau);

// Closed-form single-excitation amplitudes of the resonant-mode model,
// starting from one collective excitation in ensemble 1 (second basis state).
// With Omega = sqrt(N (g1^2 + g2^2) / 2):
//   C_1 = g1 g2 (1 - cos(Omega t)) / (g1^2 + g2^2)        (ensemble 2 excited)
//   C_2 = (g2^2 + g1^2 cos(Omega t)) / (g1^2 + g2^2)      (ensemble 1 excited)
//   C_3 = -i g1 sin(Omega t) / sqrt(g1^2 + g2^2)          (photon in mode c)
// This labeling is pinned against the numeric 3x3 propagator in the tests.
std::array<std::complex<double>, 3> entangle_amplitudes(double g1, double g2, int n_atoms,
                                                        double t);

}  // namespace fiberqed
