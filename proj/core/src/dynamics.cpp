#include "fiberqed/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace fiberqed {

using cd = std::complex<double>;
namespace {
constexpr cd kI{0.0, 1.0};
}

Propagator::Propagator(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("Propagator: matrix is not square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("Propagator: eigendecomposition failed");
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
}

Eigen::VectorXcd Propagator::apply(const Eigen::VectorXcd& psi, double t) const {
    if (psi.size() != evals_.size())
        throw std::invalid_argument("Propagator: state dimension mismatch");
    Eigen::VectorXcd coeffs = evecs_.adjoint() * psi;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
        coeffs[k] *= std::exp(-kI * evals_[k] * t);
    return evecs_ * coeffs;
}

Eigen::MatrixXcd Propagator::matrix(double t) const {
    Eigen::VectorXcd phases(evals_.size());
    for (Eigen::Index k = 0; k < evals_.size(); ++k)
        phases[k] = std::exp(-kI * evals_[k] * t);
    return evecs_ * phases.asDiagonal() * evecs_.adjoint();
}

Eigen::VectorXcd propagate(const HermitianMatrix& h, const Eigen::VectorXcd& psi0, double t) {
    return Propagator(h.mat).apply(psi0, t);
}

std::array<cd, 5> transfer_amplitudes(double r, double tau) {
    const double w = 1.0 + 2.0 * r * r;
    const double q = std::sqrt(w);
    const double c1 = std::cos(tau);
    const double cq = std::cos(q * tau);
    const double s1 = std::sin(tau);
    const double sq = std::sin(q * tau);

    std::array<cd, 5> c;
    c[0] = r * r / w - 0.5 * c1 + cq / (2.0 * w);
    c[1] = r * r / w + 0.5 * c1 + cq / (2.0 * w);
    c[2] = 0.5 * kI * s1 - kI * sq / (2.0 * q);
    c[3] = -r / w + r * cq / w;
    c[4] = -0.5 * kI * s1 - kI * sq / (2.0 * q);
    return c;
}

std::array<cd, 3> entangle_amplitudes(double g1, double g2, int n_atoms, double t) {
    const double gg = g1 * g1 + g2 * g2;
    if (gg <= 0.0)
        throw std::invalid_argument("entangle_amplitudes: g1^2 + g2^2 must be > 0");
    const double omega = std::sqrt(n_atoms * gg / 2.0);
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);

    std::array<cd, 3> a;
    a[0] = g1 * g2 * (1.0 - c) / gg;
    a[1] = (g2 * g2 + g1 * g1 * c) / gg;
    a[2] = -kI * g1 * s / std::sqrt(gg);
    return a;
}

}  // namespace fiberqed
