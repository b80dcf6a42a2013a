#include "fiberqed/oracle.hpp"

#include <Eigen/Dense>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "fiberqed/dynamics.hpp"
#include "fiberqed/ode.hpp"

namespace fiberqed {

using cd = std::complex<double>;

namespace {

constexpr cd kI{0.0, 1.0};

// One tensor-product basis vector: per-mode photon numbers and one bit per
// atom in each ensemble.
struct ProductState {
    std::array<int, 3> ph{};
    unsigned b1 = 0;
    unsigned b2 = 0;

    bool operator==(const ProductState&) const = default;
};

int total_excitation(const ProductState& s) {
    return s.ph[0] + s.ph[1] + s.ph[2] + std::popcount(s.b1) + std::popcount(s.b2);
}

struct ProductSpace {
    Model model = Model::Full;
    int n_atoms = 1;
    std::vector<ProductState> states;

    int dim() const { return static_cast<int>(states.size()); }

    int index_of(const ProductState& s) const {
        for (int k = 0; k < dim(); ++k)
            if (states[k] == s) return k;
        return -1;
    }
};

ProductSpace enumerate_product_space(Model model, int n_atoms, bool blockade) {
    ProductSpace space;
    space.model = model;
    space.n_atoms = n_atoms;
    const int n_modes = (model == Model::Full) ? 3 : 1;
    const unsigned masks = 1u << n_atoms;
    for (int p0 = 0; p0 <= 2; ++p0)
        for (int p1 = 0; p1 <= (n_modes > 1 ? 2 : 0); ++p1)
            for (int p2 = 0; p2 <= (n_modes > 1 ? 2 : 0); ++p2)
                for (unsigned b1 = 0; b1 < masks; ++b1)
                    for (unsigned b2 = 0; b2 < masks; ++b2) {
                        ProductState s{{p0, p1, p2}, b1, b2};
                        if (total_excitation(s) > 2) continue;
                        if (blockade &&
                            (std::popcount(b1) > 1 || std::popcount(b2) > 1))
                            continue;
                        space.states.push_back(s);
                    }
    return space;
}

// Annihilation operator of one field mode on the truncated space.
Eigen::MatrixXcd mode_lowering(const ProductSpace& space, int mode) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int col = 0; col < space.dim(); ++col) {
        ProductState s = space.states[col];
        if (s.ph[mode] < 1) continue;
        const double amp = std::sqrt(static_cast<double>(s.ph[mode]));
        --s.ph[mode];
        const int row = space.index_of(s);
        if (row >= 0) op(row, col) = amp;
    }
    return op;
}

// sigma^- of one labeled atom.
Eigen::MatrixXcd atom_lowering(const ProductSpace& space, bool first, int atom) {
    const unsigned bit = 1u << atom;
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int col = 0; col < space.dim(); ++col) {
        ProductState s = space.states[col];
        unsigned& bits = first ? s.b1 : s.b2;
        if (!(bits & bit)) continue;
        bits &= ~bit;
        const int row = space.index_of(s);
        if (row >= 0) op(row, col) = 1.0;
    }
    return op;
}

struct OracleSystem {
    ProductSpace space;
    Eigen::MatrixXcd h;
    std::vector<std::pair<double, Eigen::MatrixXcd>> jumps;  // (rate, op)

    Eigen::MatrixXcd lindblad(const Eigen::MatrixXcd& rho) const {
        Eigen::MatrixXcd out = -kI * (h * rho - rho * h);
        for (const auto& [rate, op] : jumps) {
            if (rate == 0.0) continue;
            out.noalias() += rate * (2.0 * (op * rho * op.adjoint()));
            const Eigen::MatrixXcd dd = op.adjoint() * op;
            out.noalias() -= rate * (dd * rho);
            out.noalias() -= rate * (rho * dd);
        }
        return out;
    }
};

OracleSystem build_oracle_system(const Scenario& sc) {
    if (sc.n_atoms > 3)
        throw std::invalid_argument(
            "small_n_oracle: refused for more than 3 atoms per ensemble");
    const SystemConfig cfg = sc.config();
    OracleSystem sys;
    sys.space = enumerate_product_space(sc.model, sc.n_atoms, sc.blockade);
    const int d = sys.space.dim();

    Eigen::MatrixXcd s1 = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd s2 = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < sc.n_atoms; ++i) {
        s1 += atom_lowering(sys.space, true, i);
        s2 += atom_lowering(sys.space, false, i);
    }

    Eigen::MatrixXcd half = Eigen::MatrixXcd::Zero(d, d);
    if (sc.model == Model::Full) {
        const Eigen::MatrixXcd a1 = mode_lowering(sys.space, 0);
        const Eigen::MatrixXcd b = mode_lowering(sys.space, 1);
        const Eigen::MatrixXcd a2 = mode_lowering(sys.space, 2);
        half = cfg.g1 * a1.adjoint() * s1 + cfg.g2 * a2.adjoint() * s2 +
               cfg.nu * (a1.adjoint() + a2.adjoint()) * b;
        if (sc.dissipative) {
            sys.jumps.emplace_back(cfg.gamma, a1);
            sys.jumps.emplace_back(cfg.gamma, a2);
            sys.jumps.emplace_back(cfg.beta, b);
        }
    } else {
        const Eigen::MatrixXcd c = mode_lowering(sys.space, 0);
        half = (cfg.g1 * c.adjoint() * s1 - cfg.g2 * c.adjoint() * s2) / std::sqrt(2.0);
        if (sc.dissipative) sys.jumps.emplace_back(cfg.gamma, c);
    }
    sys.h = half + half.adjoint();

    if (sc.dissipative) {
        for (int i = 0; i < sc.n_atoms; ++i) {
            sys.jumps.emplace_back(cfg.kappa, atom_lowering(sys.space, true, i));
            sys.jumps.emplace_back(cfg.kappa, atom_lowering(sys.space, false, i));
        }
    }
    return sys;
}

// Symmetric one-excitation (W) state of one ensemble, all other occupations 0.
Eigen::VectorXcd w_state(const ProductSpace& space, bool first) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
    for (int i = 0; i < space.n_atoms; ++i) {
        ProductState s;
        (first ? s.b1 : s.b2) = 1u << i;
        const int k = space.index_of(s);
        if (k < 0) throw std::logic_error("w_state: basis state missing");
        v[k] = 1.0;
    }
    return v / std::sqrt(static_cast<double>(space.n_atoms));
}

Eigen::VectorXcd vacuum_state(const ProductSpace& space) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
    const int k = space.index_of(ProductState{});
    if (k < 0) throw std::logic_error("vacuum_state: basis state missing");
    v[k] = 1.0;
    return v;
}

// Product of the two single-ensemble W states (one excitation each side).
Eigen::VectorXcd double_w_state(const ProductSpace& space) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
    for (int i = 0; i < space.n_atoms; ++i)
        for (int j = 0; j < space.n_atoms; ++j) {
            ProductState s;
            s.b1 = 1u << i;
            s.b2 = 1u << j;
            const int k = space.index_of(s);
            if (k < 0) throw std::logic_error("double_w_state: basis state missing");
            v[k] = 1.0;
        }
    return v / static_cast<double>(space.n_atoms);
}

std::vector<double> evolve_closed(const OracleSystem& sys, const Eigen::VectorXcd& psi0,
                                  const std::vector<double>& taus,
                                  const std::function<double(const Eigen::VectorXcd&)>& fid) {
    const Propagator prop(sys.h);
    std::vector<double> out(taus.size());
    for (size_t k = 0; k < taus.size(); ++k) out[k] = fid(prop.apply(psi0, taus[k]));
    return out;
}

std::vector<double> evolve_open(
    const OracleSystem& sys, std::vector<Eigen::MatrixXcd> stack,
    const std::vector<double>& taus,
    const std::function<double(const std::vector<Eigen::MatrixXcd>&)>& fid) {
    const int d = sys.space.dim();
    const size_t m = stack.size();
    std::vector<double> out(taus.size());

    size_t start = 0;
    if (!taus.empty() && taus.front() == 0.0) {
        out[0] = fid(stack);
        start = 1;
    }
    if (start == taus.size()) return out;

    Eigen::VectorXcd y(static_cast<Eigen::Index>(m) * d * d);
    for (size_t k = 0; k < m; ++k)
        Eigen::Map<Eigen::MatrixXcd>(y.data() + k * d * d, d, d) = stack[k];
    auto rhs = [&](double, const Eigen::VectorXcd& v, Eigen::VectorXcd& dv) {
        for (size_t k = 0; k < m; ++k) {
            Eigen::Map<const Eigen::MatrixXcd> rho(v.data() + k * d * d, d, d);
            Eigen::Map<Eigen::MatrixXcd>(dv.data() + k * d * d, d, d) = sys.lindblad(rho);
        }
    };

    double t = 0.0;
    for (size_t k = start; k < taus.size(); ++k) {
        integrate_adaptive(rhs, t, taus[k], y);
        t = taus[k];
        for (size_t j = 0; j < m; ++j)
            stack[j] = Eigen::Map<Eigen::MatrixXcd>(y.data() + j * d * d, d, d);
        out[k] = fid(stack);
    }
    return out;
}

std::vector<double> oracle_values(const Scenario& sc, const std::vector<double>& taus) {
    const OracleSystem sys = build_oracle_system(sc);
    const Eigen::VectorXcd vac = vacuum_state(sys.space);
    const Eigen::VectorXcd w1 = w_state(sys.space, true);
    const Eigen::VectorXcd w2 = w_state(sys.space, false);

    auto pure_overlap = [](const Eigen::VectorXcd& target) {
        return [target](const Eigen::VectorXcd& psi) { return std::norm(target.dot(psi)); };
    };
    auto mixed_overlap = [](const Eigen::VectorXcd& target) {
        return [target](const std::vector<Eigen::MatrixXcd>& st) {
            return std::real(target.dot(st[0] * target));
        };
    };

    switch (sc.protocol) {
        case Protocol::Transfer: {
            cd a(sc.qubit_alpha, 0.0), b(sc.qubit_beta, 0.0);
            if (sc.qubit_alpha == 0.0 && sc.qubit_beta == 0.0) a = b = 1.0 / std::sqrt(2.0);
            const Eigen::VectorXcd psi0 = a * vac + b * w1;
            const Eigen::VectorXcd target = a * vac + b * w2;
            if (!sc.dissipative) return evolve_closed(sys, psi0, taus, pure_overlap(target));
            return evolve_open(sys, {psi0 * psi0.adjoint()}, taus, mixed_overlap(target));
        }
        case Protocol::EntangleE1:
        case Protocol::EntangleE2: {
            const double sign = (sc.protocol == Protocol::EntangleE2) ? -1.0 : 1.0;
            const Eigen::VectorXcd target = (w2 + sign * w1) / std::sqrt(2.0);
            if (!sc.dissipative) return evolve_closed(sys, w1, taus, pure_overlap(target));
            return evolve_open(sys, {w1 * w1.adjoint()}, taus, mixed_overlap(target));
        }
        case Protocol::ControlledZ: {
            if (!sc.blockade)
                throw std::invalid_argument("small_n_oracle: controlled-Z requires blockade");
            const Eigen::VectorXcd ww = double_w_state(sys.space);
            const Eigen::VectorXcd psi0 = 0.5 * (vac + w1 + w2 + ww);
            const Eigen::VectorXcd target = 0.5 * (vac + w1 + w2 - ww);
            if (!sc.dissipative) return evolve_closed(sys, psi0, taus, pure_overlap(target));
            return evolve_open(sys, {psi0 * psi0.adjoint()}, taus, mixed_overlap(target));
        }
        case Protocol::Swap: {
            if (!sc.blockade)
                throw std::invalid_argument("small_n_oracle: swap requires blockade");
            const std::array<Eigen::VectorXcd, 4> logical{vac, w2, w1,
                                                          double_w_state(sys.space)};
            const std::array<double, 256> t = swap_angle_tensor(sc.quadrature_order);
            if (!sc.dissipative) {
                const Propagator prop(sys.h);
                std::vector<double> out(taus.size());
                for (size_t n = 0; n < taus.size(); ++n) {
                    Eigen::Matrix4cd m;
                    for (int i = 0; i < 4; ++i) {
                        const Eigen::VectorXcd evolved = prop.apply(logical[i], taus[n]);
                        for (int k = 0; k < 4; ++k) m(k, i) = logical[k].dot(evolved);
                    }
                    cd f = 0.0;
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j)
                            for (int k = 0; k < 4; ++k)
                                for (int l = 0; l < 4; ++l) {
                                    const double w = t[((i * 4 + j) * 4 + k) * 4 + l];
                                    if (w != 0.0) f += w * m(k, i) * std::conj(m(l, j));
                                }
                    out[n] = std::real(f);
                }
                return out;
            }
            std::vector<Eigen::MatrixXcd> dyads;
            dyads.reserve(16);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    dyads.push_back(logical[i] * logical[j].adjoint());
            auto fid = [&](const std::vector<Eigen::MatrixXcd>& st) {
                cd f = 0.0;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        for (int k = 0; k < 4; ++k)
                            for (int l = 0; l < 4; ++l) {
                                const double w = t[((i * 4 + j) * 4 + k) * 4 + l];
                                if (w != 0.0)
                                    f += w * logical[k].dot(st[i * 4 + j] * logical[l]);
                            }
                return std::real(f);
            };
            return evolve_open(sys, std::move(dyads), taus, fid);
        }
    }
    throw std::logic_error("small_n_oracle: unknown protocol");
}

}  // namespace

FidelitySeries small_n_oracle(const Scenario& sc) {
    const double tmax = sc.resolved_tau_max();
    if (tmax <= 0.0 || sc.tau_step <= 0.0)
        throw std::invalid_argument("small_n_oracle: tau_max and tau_step must be positive");
    const int n = static_cast<int>(std::floor(tmax / sc.tau_step + 1e-9));
    std::vector<double> taus(n + 1);
    for (int k = 0; k <= n; ++k) taus[k] = k * sc.tau_step;

    FidelitySeries series;
    series.scenario = sc;
    series.fidelity = oracle_values(sc, taus);
    series.tau = std::move(taus);
    size_t best = 0;
    for (size_t k = 1; k < series.fidelity.size(); ++k)
        if (series.fidelity[k] > series.fidelity[best]) best = k;
    series.peak_tau = series.tau[best];
    series.peak_value = series.fidelity[best];
    return series;
}

std::vector<double> collective_decay_curve(int n_atoms, double kappa,
                                           const std::vector<double>& taus) {
    if (n_atoms < 1 || n_atoms > 3)
        throw std::invalid_argument("collective_decay_curve: n_atoms must be in [1, 3]");
    if (kappa < 0.0) throw std::invalid_argument("collective_decay_curve: kappa must be >= 0");

    // Atoms only: ground state plus the single-excitation states.
    const int d = n_atoms + 1;
    std::vector<Eigen::MatrixXcd> jumps;
    for (int i = 0; i < n_atoms; ++i) {
        Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(d, d);
        op(0, 1 + i) = 1.0;
        jumps.push_back(std::move(op));
    }
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(d);
    for (int i = 0; i < n_atoms; ++i) w[1 + i] = 1.0 / std::sqrt(static_cast<double>(n_atoms));

    Eigen::VectorXcd y(d * d);
    Eigen::Map<Eigen::MatrixXcd>(y.data(), d, d) = w * w.adjoint();
    auto rhs = [&](double, const Eigen::VectorXcd& v, Eigen::VectorXcd& dv) {
        Eigen::Map<const Eigen::MatrixXcd> rho(v.data(), d, d);
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
        for (const auto& op : jumps) {
            out.noalias() += kappa * (2.0 * (op * rho * op.adjoint()));
            const Eigen::MatrixXcd dd = op.adjoint() * op;
            out.noalias() -= kappa * (dd * rho);
            out.noalias() -= kappa * (rho * dd);
        }
        Eigen::Map<Eigen::MatrixXcd>(dv.data(), d, d) = out;
    };

    std::vector<double> out(taus.size());
    double t = 0.0;
    for (size_t k = 0; k < taus.size(); ++k) {
        if (taus[k] < t) throw std::invalid_argument("collective_decay_curve: grid not ascending");
        integrate_adaptive(rhs, t, taus[k], y);
        t = taus[k];
        Eigen::Map<const Eigen::MatrixXcd> rho(y.data(), d, d);
        out[k] = std::real(w.dot(rho * w));
    }
    return out;
}

}  // namespace fiberqed
