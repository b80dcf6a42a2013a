#include "fiberqed/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "fiberqed/dynamics.hpp"
#include "fiberqed/hamiltonian.hpp"
#include "fiberqed/lindblad.hpp"

namespace fiberqed {

using cd = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> time_grid(const Scenario& sc) {
    const double tmax = sc.resolved_tau_max();
    if (tmax <= 0.0 || sc.tau_step <= 0.0)
        throw std::invalid_argument("Scenario: tau_max and tau_step must be positive");
    const int n = static_cast<int>(std::floor(tmax / sc.tau_step + 1e-9));
    std::vector<double> taus(n + 1);
    for (int k = 0; k <= n; ++k) taus[k] = k * sc.tau_step;
    return taus;
}

HermitianMatrix build_hamiltonian(const SystemConfig& cfg, int excitation) {
    const Subspace sub = enumerate_basis(cfg, excitation);
    return cfg.model == Model::Full ? build_full_hamiltonian(cfg, sub)
                                    : build_reduced_hamiltonian(cfg, sub);
}

// Indices of the logical atomic states within the single-excitation sector:
// state 0 has the excitation in ensemble 2, state 1 in ensemble 1. Both
// canonical orderings put them first, but look them up explicitly.
std::pair<int, int> atomic_indices_1(const Subspace& sub) {
    BasisState e2{sub.model, {}, 0, 1};
    BasisState e1{sub.model, {}, 1, 0};
    const int i2 = sub.index_of(e2);
    const int i1 = sub.index_of(e1);
    if (i2 < 0 || i1 < 0)
        throw std::logic_error("single-excitation sector lacks the atomic states");
    return {i2, i1};
}

int atomic_index_2(const Subspace& sub) {
    BasisState both{sub.model, {}, 1, 1};
    const int i = sub.index_of(both);
    if (i < 0) throw std::logic_error("two-excitation sector lacks the |1,1> state");
    return i;
}

std::pair<cd, cd> qubit_amplitudes(const Scenario& sc) {
    cd a(sc.qubit_alpha, 0.0), b(sc.qubit_beta, 0.0);
    if (sc.qubit_alpha == 0.0 && sc.qubit_beta == 0.0) {
        a = b = 1.0 / std::sqrt(2.0);
    }
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-10)
        throw std::invalid_argument("Scenario: qubit amplitudes must satisfy |a|^2+|b|^2 = 1");
    return {a, b};
}

// ---- transfer -------------------------------------------------------------

std::vector<double> transfer_values(const Scenario& sc, const std::vector<double>& taus) {
    const SystemConfig cfg = sc.config();
    const auto [alpha, beta] = qubit_amplitudes(sc);
    std::vector<double> out(taus.size());

    if (!sc.dissipative) {
        const HermitianMatrix h = build_hamiltonian(cfg, 1);
        const auto [i_target, i_start] = atomic_indices_1(h.space);
        const Propagator prop(h.mat);
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(h.dim());
        psi0[i_start] = 1.0;
        for (size_t k = 0; k < taus.size(); ++k) {
            const cd u = prop.apply(psi0, taus[k])[i_target];
            out[k] = std::norm(std::norm(alpha) + std::conj(beta) * beta * u);
        }
        return out;
    }

    const LindbladGenerator gen = build_generator(cfg, {0, 1});
    const int i_vac = gen.layout.global_index(0, 0);
    const auto [l2, l1] = atomic_indices_1(gen.layout.sector(1));
    const int i_start = gen.layout.global_index(1, l1);
    const int i_target = gen.layout.global_index(1, l2);

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(gen.layout.dim);
    psi0[i_vac] = alpha;
    psi0[i_start] = beta;
    Eigen::VectorXcd target = Eigen::VectorXcd::Zero(gen.layout.dim);
    target[i_vac] = alpha;
    target[i_target] = beta;

    if (taus.front() == 0.0) out[0] = std::norm(target.dot(psi0));
    std::vector<double> grid(taus.begin() + (taus.front() == 0.0 ? 1 : 0), taus.end());
    if (grid.empty()) return out;

    const Eigen::MatrixXcd rho0 = psi0 * psi0.adjoint();
    const size_t base = taus.size() - grid.size();
    evolve_matrices(gen, {rho0}, grid, [&](int k, const std::vector<Eigen::MatrixXcd>& st) {
        out[base + k] = std::real(target.dot(st[0] * target));
    });
    return out;
}

// ---- swap -----------------------------------------------------------------

const std::array<double, 256>& cached_swap_tensor(int order) {
    static int cached_order = -1;
    static std::array<double, 256> tensor{};
    if (order != cached_order) {
        tensor = swap_angle_tensor(order);
        cached_order = order;
    }
    return tensor;
}

// Contracts the angle tensor with the logical transition matrix m(k,i) =
// <L_k|U|L_i> of a closed evolution.
double swap_fidelity_closed(const std::array<double, 256>& t, const Eigen::Matrix4cd& m) {
    cd f = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const double w = t[((i * 4 + j) * 4 + k) * 4 + l];
                    if (w != 0.0) f += w * m(k, i) * std::conj(m(l, j));
                }
    return std::real(f);
}

struct SwapOpenContext {
    LindbladGenerator gen;
    std::array<int, 4> logical{};  // global indices of vac, e2, e1, both
};

SwapOpenContext make_swap_open(const SystemConfig& cfg) {
    SwapOpenContext ctx{build_generator(cfg, {0, 1, 2}), {}};
    ctx.logical[0] = ctx.gen.layout.global_index(0, 0);
    const auto [l2, l1] = atomic_indices_1(ctx.gen.layout.sector(1));
    ctx.logical[1] = ctx.gen.layout.global_index(1, l2);
    ctx.logical[2] = ctx.gen.layout.global_index(1, l1);
    ctx.logical[3] = ctx.gen.layout.global_index(2, atomic_index_2(ctx.gen.layout.sector(2)));
    return ctx;
}

double swap_fidelity_open(const std::array<double, 256>& t, const SwapOpenContext& ctx,
                          const std::vector<Eigen::MatrixXcd>& dyads) {
    cd f = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Eigen::MatrixXcd& rho = dyads[i * 4 + j];
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const double w = t[((i * 4 + j) * 4 + k) * 4 + l];
                    if (w != 0.0) f += w * rho(ctx.logical[k], ctx.logical[l]);
                }
        }
    return std::real(f);
}

std::vector<double> swap_values(const Scenario& sc, const std::vector<double>& taus) {
    if (!sc.blockade)
        throw std::invalid_argument("swap protocol requires the dipole blockade");
    const SystemConfig cfg = sc.config();
    const auto& tensor = cached_swap_tensor(sc.quadrature_order);
    std::vector<double> out(taus.size());

    if (!sc.dissipative) {
        const HermitianMatrix h1 = build_hamiltonian(cfg, 1);
        const HermitianMatrix h2 = build_hamiltonian(cfg, 2);
        const auto [i2, i1] = atomic_indices_1(h1.space);
        const int ib = atomic_index_2(h2.space);
        const Propagator p1(h1.mat), p2(h2.mat);
        for (size_t k = 0; k < taus.size(); ++k) {
            const Eigen::MatrixXcd u1 = p1.matrix(taus[k]);
            Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
            m(0, 0) = 1.0;
            m(1, 1) = u1(i2, i2);
            m(1, 2) = u1(i2, i1);
            m(2, 1) = u1(i1, i2);
            m(2, 2) = u1(i1, i1);
            m(3, 3) = p2.matrix(taus[k])(ib, ib);
            out[k] = swap_fidelity_closed(tensor, m);
        }
        return out;
    }

    const SwapOpenContext ctx = make_swap_open(cfg);
    const int d = ctx.gen.layout.dim;
    std::vector<Eigen::MatrixXcd> dyads;
    dyads.reserve(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Eigen::MatrixXcd dy = Eigen::MatrixXcd::Zero(d, d);
            dy(ctx.logical[i], ctx.logical[j]) = 1.0;
            dyads.push_back(std::move(dy));
        }

    if (taus.front() == 0.0) out[0] = swap_fidelity_open(tensor, ctx, dyads);
    std::vector<double> grid(taus.begin() + (taus.front() == 0.0 ? 1 : 0), taus.end());
    if (grid.empty()) return out;
    const size_t base = taus.size() - grid.size();
    evolve_matrices(ctx.gen, dyads, grid, [&](int k, const std::vector<Eigen::MatrixXcd>& st) {
        out[base + k] = swap_fidelity_open(tensor, ctx, st);
    });
    return out;
}

// ---- entangling gate ------------------------------------------------------

std::vector<double> entangle_values(const Scenario& sc, const std::vector<double>& taus) {
    const SystemConfig cfg = sc.config();
    const double sign = (sc.protocol == Protocol::EntangleE2) ? -1.0 : 1.0;
    std::vector<double> out(taus.size());

    if (!sc.dissipative) {
        const HermitianMatrix h = build_hamiltonian(cfg, 1);
        const auto [i2, i1] = atomic_indices_1(h.space);
        const Propagator prop(h.mat);
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(h.dim());
        psi0[i1] = 1.0;
        Eigen::VectorXcd target = Eigen::VectorXcd::Zero(h.dim());
        target[i2] = 1.0 / std::sqrt(2.0);
        target[i1] = sign / std::sqrt(2.0);
        for (size_t k = 0; k < taus.size(); ++k)
            out[k] = std::norm(target.dot(prop.apply(psi0, taus[k])));
        return out;
    }

    const LindbladGenerator gen = build_generator(cfg, {0, 1});
    const auto [l2, l1] = atomic_indices_1(gen.layout.sector(1));
    const int i2 = gen.layout.global_index(1, l2);
    const int i1 = gen.layout.global_index(1, l1);
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(gen.layout.dim);
    psi0[i1] = 1.0;
    Eigen::VectorXcd target = Eigen::VectorXcd::Zero(gen.layout.dim);
    target[i2] = 1.0 / std::sqrt(2.0);
    target[i1] = sign / std::sqrt(2.0);

    if (taus.front() == 0.0) out[0] = std::norm(target.dot(psi0));
    std::vector<double> grid(taus.begin() + (taus.front() == 0.0 ? 1 : 0), taus.end());
    if (grid.empty()) return out;
    const Eigen::MatrixXcd rho0 = psi0 * psi0.adjoint();
    const size_t base = taus.size() - grid.size();
    evolve_matrices(gen, {rho0}, grid, [&](int k, const std::vector<Eigen::MatrixXcd>& st) {
        out[base + k] = std::real(target.dot(st[0] * target));
    });
    return out;
}

// ---- controlled-Z ---------------------------------------------------------

std::vector<double> cz_values(const Scenario& sc, const std::vector<double>& taus) {
    if (!sc.blockade)
        throw std::invalid_argument("controlled-Z protocol requires the dipole blockade");
    const SystemConfig cfg = sc.config();
    std::vector<double> out(taus.size());

    if (!sc.dissipative) {
        const HermitianMatrix h1 = build_hamiltonian(cfg, 1);
        const HermitianMatrix h2 = build_hamiltonian(cfg, 2);
        const auto [i2, i1] = atomic_indices_1(h1.space);
        const int ib = atomic_index_2(h2.space);
        const Propagator p1(h1.mat), p2(h2.mat);
        for (size_t k = 0; k < taus.size(); ++k) {
            const Eigen::MatrixXcd u1 = p1.matrix(taus[k]);
            const cd s1 = u1(i2, i2) + u1(i2, i1) + u1(i1, i2) + u1(i1, i1);
            const cd s2 = p2.matrix(taus[k])(ib, ib);
            out[k] = std::norm(0.25 * (1.0 + s1 - s2));
        }
        return out;
    }

    const LindbladGenerator gen = build_generator(cfg, {0, 1, 2});
    const int iv = gen.layout.global_index(0, 0);
    const auto [l2, l1] = atomic_indices_1(gen.layout.sector(1));
    const int i2 = gen.layout.global_index(1, l2);
    const int i1 = gen.layout.global_index(1, l1);
    const int ib = gen.layout.global_index(2, atomic_index_2(gen.layout.sector(2)));

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(gen.layout.dim);
    psi0[iv] = psi0[i1] = psi0[i2] = psi0[ib] = 0.5;
    Eigen::VectorXcd target = Eigen::VectorXcd::Zero(gen.layout.dim);
    target[iv] = target[i1] = target[i2] = 0.5;
    target[ib] = -0.5;

    if (taus.front() == 0.0) out[0] = std::norm(target.dot(psi0));
    std::vector<double> grid(taus.begin() + (taus.front() == 0.0 ? 1 : 0), taus.end());
    if (grid.empty()) return out;
    const Eigen::MatrixXcd rho0 = psi0 * psi0.adjoint();
    const size_t base = taus.size() - grid.size();
    evolve_matrices(gen, {rho0}, grid, [&](int k, const std::vector<Eigen::MatrixXcd>& st) {
        out[base + k] = std::real(target.dot(st[0] * target));
    });
    return out;
}

std::vector<double> fidelity_values(const Scenario& sc, const std::vector<double>& taus) {
    switch (sc.protocol) {
        case Protocol::Transfer: return transfer_values(sc, taus);
        case Protocol::Swap: return swap_values(sc, taus);
        case Protocol::EntangleE1:
        case Protocol::EntangleE2: return entangle_values(sc, taus);
        case Protocol::ControlledZ: return cz_values(sc, taus);
    }
    throw std::logic_error("fidelity_values: unknown protocol");
}

FidelitySeries make_series(const Scenario& sc, std::vector<double> taus,
                           std::vector<double> values) {
    FidelitySeries series;
    series.tau = std::move(taus);
    series.fidelity = std::move(values);
    series.scenario = sc;
    const auto [pt, pv] = find_peak(series);
    series.peak_tau = pt;
    series.peak_value = pv;
    return series;
}

}  // namespace

const char* protocol_name(Protocol p) {
    switch (p) {
        case Protocol::Transfer: return "transfer";
        case Protocol::Swap: return "swap";
        case Protocol::EntangleE1: return "entangle-e1";
        case Protocol::EntangleE2: return "entangle-e2";
        case Protocol::ControlledZ: return "cz";
    }
    return "unknown";
}

Scenario Scenario::defaults(Protocol p) {
    Scenario sc;
    sc.protocol = p;
    switch (p) {
        case Protocol::Transfer:
            sc.model = Model::Full;
            sc.transfer_k = 1;
            break;
        case Protocol::Swap:
            sc.model = Model::Full;
            sc.r = 1.2;
            break;
        case Protocol::EntangleE1:
            sc.model = Model::Reduced;
            sc.delta = std::sqrt(2.0);  // g2 = (1 + sqrt 2) g1
            break;
        case Protocol::EntangleE2:
            sc.model = Model::Reduced;
            sc.delta = std::sqrt(2.0) - 2.0;  // g2 = (sqrt 2 - 1) g1
            break;
        case Protocol::ControlledZ:
            sc.model = Model::Reduced;
            sc.delta = 0.07;
            break;
    }
    return sc;
}

double Scenario::effective_r() const {
    return transfer_k > 0 ? transfer_condition(transfer_k) : r;
}

double Scenario::resolved_tau_max() const {
    if (tau_max > 0.0) return tau_max;
    return protocol == Protocol::ControlledZ ? 60.0 : 4.0 * kPi;
}

SystemConfig Scenario::config() const {
    if (n_atoms < 1) throw std::invalid_argument("Scenario: n_atoms must be >= 1");
    const double root_n = std::sqrt(static_cast<double>(n_atoms));
    SystemConfig cfg;
    cfg.N1 = cfg.N2 = n_atoms;
    // g1 = 1/sqrt(N) makes tau = sqrt(N) g1 t coincide with raw time t, and
    // rates quoted in units of g1 become rate/sqrt(N).
    cfg.g1 = 1.0 / root_n;
    cfg.g2 = (1.0 + delta) / root_n;
    cfg.nu = effective_r();
    cfg.kappa = kappa / root_n;
    cfg.gamma = gamma / root_n;
    cfg.beta = beta / root_n;
    cfg.blockade = blockade;
    cfg.model = model;
    cfg.validate();
    return cfg;
}

double evaluate_fidelity(const Scenario& sc, double tau) {
    if (tau < 0.0) throw std::invalid_argument("evaluate_fidelity: tau must be >= 0");
    return fidelity_values(sc, {tau})[0];
}

FidelitySeries run_transfer(const Scenario& sc) {
    auto taus = time_grid(sc);
    auto values = transfer_values(sc, taus);
    return make_series(sc, std::move(taus), std::move(values));
}

FidelitySeries run_swap(const Scenario& sc) {
    auto taus = time_grid(sc);
    auto values = swap_values(sc, taus);
    return make_series(sc, std::move(taus), std::move(values));
}

FidelitySeries run_entangle(const Scenario& sc) {
    auto taus = time_grid(sc);
    auto values = entangle_values(sc, taus);
    return make_series(sc, std::move(taus), std::move(values));
}

FidelitySeries run_cz(const Scenario& sc) {
    auto taus = time_grid(sc);
    auto values = cz_values(sc, taus);
    return make_series(sc, std::move(taus), std::move(values));
}

FidelitySeries run_scenario(const Scenario& sc) {
    auto taus = time_grid(sc);
    auto values = fidelity_values(sc, taus);
    return make_series(sc, std::move(taus), std::move(values));
}

std::pair<double, double> find_peak(const FidelitySeries& series,
                                    const std::function<double(double)>& eval) {
    if (series.tau.empty() || series.tau.size() != series.fidelity.size())
        throw std::invalid_argument("find_peak: empty or inconsistent series");

    size_t best = 0;
    for (size_t k = 1; k < series.tau.size(); ++k)
        if (series.fidelity[k] > series.fidelity[best]) best = k;

    double lo = series.tau[best > 0 ? best - 1 : best];
    double hi = series.tau[best + 1 < series.tau.size() ? best + 1 : best];
    double grid_tau = series.tau[best];
    double grid_val = series.fidelity[best];
    if (hi - lo < 1e-12) return {grid_tau, grid_val};

    // Golden-section maximization on [lo, hi] to a tau tolerance of 1e-4.
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = eval(x1);
    double f2 = eval(x2);
    while (hi - lo > 1e-4) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = eval(x2);
        }
    }

    const double ref_tau = (f1 >= f2) ? x1 : x2;
    const double ref_val = std::max(f1, f2);
    // Keep the grid point on ties so a flat series reports its earliest time.
    if (ref_val > grid_val + 1e-15) return {ref_tau, ref_val};
    return {grid_tau, grid_val};
}

std::pair<double, double> find_peak(const FidelitySeries& series) {
    const Scenario sc = series.scenario;
    return find_peak(series, [&sc](double tau) { return evaluate_fidelity(sc, tau); });
}

std::array<double, 256> swap_angle_tensor(int order) {
    if (order < 2) throw std::invalid_argument("swap_angle_tensor: order must be >= 2");
    std::array<double, 256> t{};
    const double w = 1.0 / (static_cast<double>(order) * order);
    for (int m1 = 0; m1 < order; ++m1) {
        const double th1 = 2.0 * kPi * m1 / order;
        const double c1 = std::cos(th1), s1 = std::sin(th1);
        for (int m2 = 0; m2 < order; ++m2) {
            const double th2 = 2.0 * kPi * m2 / order;
            const double c2 = std::cos(th2), s2 = std::sin(th2);
            // Input coefficients over {vac, e2, e1, both} and the coefficients
            // of the same vectors in the swapped target state.
            const std::array<double, 4> in{c1 * c2, c1 * s2, s1 * c2, s1 * s2};
            const std::array<double, 4> tg{c1 * c2, s1 * c2, c1 * s2, s1 * s2};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        for (int l = 0; l < 4; ++l)
                            t[((i * 4 + j) * 4 + k) * 4 + l] +=
                                w * in[i] * in[j] * tg[k] * tg[l];
        }
    }
    return t;
}

}  // namespace fiberqed
