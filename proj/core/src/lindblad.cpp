#include "fiberqed/lindblad.hpp"

#include "fiberqed/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace fiberqed {

using cd = std::complex<double>;
namespace {
constexpr cd kI{0.0, 1.0};
}

int DirectSum::global_index(int exc, int local) const {
    for (size_t k = 0; k < sectors.size(); ++k)
        if (sectors[k].excitation == exc) return offsets[k] + local;
    throw std::invalid_argument("DirectSum: sector with excitation " + std::to_string(exc) +
                                " is not part of this layout");
}

const Subspace& DirectSum::sector(int exc) const {
    for (const auto& s : sectors)
        if (s.excitation == exc) return s;
    throw std::invalid_argument("DirectSum: sector with excitation " + std::to_string(exc) +
                                " is not part of this layout");
}

Eigen::MatrixXcd LindbladGenerator::apply(const Eigen::MatrixXcd& rho) const {
    Eigen::MatrixXcd out = -kI * (hamiltonian * rho - rho * hamiltonian);
    for (const auto& j : jumps) {
        if (j.rate == 0.0) continue;
        out.noalias() += j.rate * (2.0 * (j.op * rho * j.op.adjoint()));
        out.noalias() -= j.rate * (j.op_dag_op * rho);
        out.noalias() -= j.rate * (rho * j.op_dag_op);
    }
    return out;
}

namespace {

// Applies a single-quantum lowering rule to every basis state of the layout
// and collects the matrix elements.
Eigen::MatrixXcd lowering_operator(
    const DirectSum& layout,
    const std::function<bool(const BasisState&, BasisState&, double&)>& rule) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(layout.dim, layout.dim);
    for (size_t k = 0; k < layout.sectors.size(); ++k) {
        const Subspace& sub = layout.sectors[k];
        for (int i = 0; i < sub.size(); ++i) {
            BasisState target;
            double amp = 0.0;
            if (!rule(sub.states[i], target, amp)) continue;
            const int texc = conserved_excitation(target);
            for (size_t k2 = 0; k2 < layout.sectors.size(); ++k2) {
                if (layout.sectors[k2].excitation != texc) continue;
                const int row = layout.sectors[k2].index_of(target);
                if (row >= 0) op(layout.offsets[k2] + row, layout.offsets[k] + i) = amp;
            }
        }
    }
    return op;
}

}  // namespace

LindbladGenerator build_generator(const SystemConfig& cfg, const std::vector<int>& sectors) {
    cfg.validate();

    LindbladGenerator gen;
    gen.config = cfg;
    for (int exc : sectors) {
        if (exc == 2 && !cfg.blockade)
            throw std::invalid_argument(
                "build_generator: two-excitation sector requires the dipole blockade "
                "(individual atomic decay closes on the symmetric sector only for m <= 1)");
        gen.layout.sectors.push_back(enumerate_basis(cfg, exc));
        gen.layout.offsets.push_back(gen.layout.dim);
        gen.layout.dim += gen.layout.sectors.back().size();
    }

    // Block-diagonal Hamiltonian.
    gen.hamiltonian = Eigen::MatrixXcd::Zero(gen.layout.dim, gen.layout.dim);
    for (size_t k = 0; k < gen.layout.sectors.size(); ++k) {
        const Subspace& sub = gen.layout.sectors[k];
        const HermitianMatrix h = (cfg.model == Model::Full)
                                      ? build_full_hamiltonian(cfg, sub)
                                      : build_reduced_hamiltonian(cfg, sub);
        gen.hamiltonian.block(gen.layout.offsets[k], gen.layout.offsets[k], sub.size(),
                              sub.size()) = h.mat;
    }

    auto photon = [](int slot) {
        return [slot](const BasisState& s, BasisState& t, double& amp) {
            if (s.photons[slot] < 1) return false;
            t = s;
            --t.photons[slot];
            amp = std::sqrt(static_cast<double>(s.photons[slot]));
            return true;
        };
    };
    // Effective collective decay of one symmetric excitation: unit element.
    auto atom = [](bool first) {
        return [first](const BasisState& s, BasisState& t, double& amp) {
            const int m = first ? s.m1 : s.m2;
            if (m != 1) return false;
            t = s;
            (first ? t.m1 : t.m2) = 0;
            amp = 1.0;
            return true;
        };
    };

    auto add_jump = [&](const std::string& name, double rate, const auto& rule) {
        JumpOperator j;
        j.name = name;
        j.rate = rate;
        j.op = lowering_operator(gen.layout, rule);
        j.op_dag_op = j.op.adjoint() * j.op;
        gen.jumps.push_back(std::move(j));
    };

    if (cfg.model == Model::Full) {
        add_jump("a1", cfg.gamma, photon(0));
        add_jump("a2", cfg.gamma, photon(2));
        add_jump("b", cfg.beta, photon(1));
    } else {
        add_jump("c", cfg.gamma, photon(0));
    }
    add_jump("atoms1", cfg.kappa, atom(true));
    add_jump("atoms2", cfg.kappa, atom(false));
    return gen;
}

void evolve_matrices(const LindbladGenerator& gen, std::vector<Eigen::MatrixXcd> stack,
                     const std::vector<double>& t_grid,
                     const std::function<void(int, const std::vector<Eigen::MatrixXcd>&)>& on_grid,
                     const OdeOptions& opt) {
    if (t_grid.empty()) return;
    if (t_grid.front() < 0.0)
        throw std::invalid_argument("evolve_matrices: grid must start at t >= 0");
    for (size_t k = 1; k < t_grid.size(); ++k)
        if (t_grid[k] <= t_grid[k - 1])
            throw std::invalid_argument("evolve_matrices: grid must be strictly ascending");

    const int d = gen.layout.dim;
    const size_t m = stack.size();
    for (const auto& mat : stack)
        if (mat.rows() != d || mat.cols() != d)
            throw std::invalid_argument("evolve_matrices: matrix dimension mismatch");

    Eigen::VectorXcd y(static_cast<Eigen::Index>(m) * d * d);
    for (size_t k = 0; k < m; ++k)
        Eigen::Map<Eigen::MatrixXcd>(y.data() + k * d * d, d, d) = stack[k];

    auto rhs = [&](double, const Eigen::VectorXcd& v, Eigen::VectorXcd& dv) {
        for (size_t k = 0; k < m; ++k) {
            Eigen::Map<const Eigen::MatrixXcd> rho(v.data() + k * d * d, d, d);
            Eigen::Map<Eigen::MatrixXcd>(dv.data() + k * d * d, d, d) = gen.apply(rho);
        }
    };

    double t = 0.0;
    for (size_t k = 0; k < t_grid.size(); ++k) {
        integrate_adaptive(rhs, t, t_grid[k], y, opt);
        t = t_grid[k];
        for (size_t j = 0; j < m; ++j)
            stack[j] = Eigen::Map<Eigen::MatrixXcd>(y.data() + j * d * d, d, d);
        on_grid(static_cast<int>(k), stack);
    }
}

std::vector<Eigen::MatrixXcd> evolve_master(const LindbladGenerator& gen,
                                            const Eigen::MatrixXcd& rho0,
                                            const std::vector<double>& t_grid,
                                            const OdeOptions& opt) {
    const double herm0 = (rho0 - rho0.adjoint()).cwiseAbs().maxCoeff();
    if (herm0 > 1e-10)
        throw std::invalid_argument("evolve_master: rho0 is not Hermitian");
    if (std::abs(rho0.trace().real() - 1.0) > 1e-8 || std::abs(rho0.trace().imag()) > 1e-8)
        throw std::invalid_argument("evolve_master: rho0 does not have unit trace");

    std::vector<Eigen::MatrixXcd> out(t_grid.size());
    evolve_matrices(
        gen, {rho0}, t_grid,
        [&](int k, const std::vector<Eigen::MatrixXcd>& stack) {
            const Eigen::MatrixXcd& rho = stack[0];
            if (std::abs(rho.trace().real() - 1.0) > 1e-7)
                throw std::runtime_error("evolve_master: trace drift beyond tolerance at t=" +
                                         std::to_string(t_grid[k]));
            if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
                throw std::runtime_error("evolve_master: Hermiticity drift at t=" +
                                         std::to_string(t_grid[k]));
            out[k] = rho;
        },
        opt);
    return out;
}

}  // namespace fiberqed
