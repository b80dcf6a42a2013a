#include "fiberqed/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace fiberqed {

namespace {

// Collective lowering element <m-1, N-m+1| J^- |m, N-m> = sqrt(m (N - m + 1)).
double dicke_lower(int m, int n_atoms) {
    if (m > n_atoms)
        throw std::invalid_argument("hamiltonian: basis holds m=" + std::to_string(m) +
                                    " excited atoms but the ensemble has only " +
                                    std::to_string(n_atoms));
    return std::sqrt(static_cast<double>(m) * (n_atoms - m + 1));
}

void add_hc(Eigen::MatrixXcd& h) {
    h = (h + h.adjoint()).eval();
}

}  // namespace

HermitianMatrix build_full_hamiltonian(const SystemConfig& cfg, const Subspace& sub) {
    cfg.validate();
    if (sub.model != Model::Full)
        throw std::invalid_argument("build_full_hamiltonian: subspace is not a full-model basis");

    const int d = sub.size();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);

    for (int col = 0; col < d; ++col) {
        const BasisState& s = sub.states[col];
        // g_j J_j^- a_j^+ : de-excite ensemble j, create a cavity-j photon.
        if (s.m1 >= 1) {
            BasisState t = s;
            --t.m1;
            ++t.photons[0];
            if (int row = sub.index_of(t); row >= 0)
                h(row, col) += cfg.g1 * dicke_lower(s.m1, cfg.N1) * std::sqrt(s.n1() + 1.0);
        }
        if (s.m2 >= 1) {
            BasisState t = s;
            --t.m2;
            ++t.photons[2];
            if (int row = sub.index_of(t); row >= 0)
                h(row, col) += cfg.g2 * dicke_lower(s.m2, cfg.N2) * std::sqrt(s.n2() + 1.0);
        }
        // nu b (a_1^+ + a_2^+) : move a fiber photon into either cavity.
        if (s.nf() >= 1) {
            BasisState t = s;
            --t.photons[1];
            ++t.photons[0];
            if (int row = sub.index_of(t); row >= 0)
                h(row, col) += cfg.nu * std::sqrt(static_cast<double>(s.nf())) *
                               std::sqrt(s.n1() + 1.0);
            t = s;
            --t.photons[1];
            ++t.photons[2];
            if (int row = sub.index_of(t); row >= 0)
                h(row, col) += cfg.nu * std::sqrt(static_cast<double>(s.nf())) *
                               std::sqrt(s.n2() + 1.0);
        }
    }
    add_hc(h);
    return HermitianMatrix{std::move(h), sub};
}

HermitianMatrix build_reduced_hamiltonian(const SystemConfig& cfg, const Subspace& sub) {
    cfg.validate();
    if (sub.model != Model::Reduced)
        throw std::invalid_argument("build_reduced_hamiltonian: subspace is not a reduced-model basis");

    const int d = sub.size();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);

    for (int col = 0; col < d; ++col) {
        const BasisState& s = sub.states[col];
        if (s.m1 >= 1) {
            BasisState t = s;
            --t.m1;
            ++t.photons[0];
            if (int row = sub.index_of(t); row >= 0)
                h(row, col) += inv_sqrt2 * cfg.g1 * dicke_lower(s.m1, cfg.N1) *
                               std::sqrt(s.nc() + 1.0);
        }
        if (s.m2 >= 1) {
            BasisState t = s;
            --t.m2;
            ++t.photons[0];
            if (int row = sub.index_of(t); row >= 0)
                h(row, col) -= inv_sqrt2 * cfg.g2 * dicke_lower(s.m2, cfg.N2) *
                               std::sqrt(s.nc() + 1.0);
        }
    }
    add_hc(h);
    return HermitianMatrix{std::move(h), sub};
}

AnalyticSpectrum analytic_spectrum(const SystemConfig& cfg) {
    cfg.validate();
    if (cfg.g1 != cfg.g2)
        throw std::invalid_argument("analytic_spectrum: requires g1 == g2");
    if (cfg.N1 != cfg.N2)
        throw std::invalid_argument("analytic_spectrum: requires N1 == N2");

    const double sg = std::sqrt(static_cast<double>(cfg.N1)) * cfg.g1;
    const double r = cfg.ratio_r();
    const double q = std::sqrt(1.0 + 2.0 * r * r);  // sqrt(N g^2 + 2 nu^2) / (sqrt(N) g)

    AnalyticSpectrum spec;
    spec.eigenvalues = {0.0, -sg, sg, -sg * q, sg * q};

    Eigen::Matrix<double, 5, 5> s;
    s << -r / q, -r / q, 0.0, 1.0 / q, 0.0,
         0.5, -0.5, -0.5, 0.0, 0.5,
         -0.5, 0.5, -0.5, 0.0, 0.5,
         -0.5 / q, -0.5 / q, 0.5, -r / q, 0.5,
         0.5 / q, 0.5 / q, 0.5, r / q, 0.5;
    spec.s = s;
    return spec;
}

double transfer_condition(int k) {
    if (k < 1)
        throw std::domain_error("transfer_condition: k must be a positive integer");
    return std::sqrt((4.0 * k * k - 1.0) / 2.0);
}

}  // namespace fiberqed
