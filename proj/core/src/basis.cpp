#include "fiberqed/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace fiberqed {

void SystemConfig::validate() const {
    if (N1 < 1 || N2 < 1)
        throw std::invalid_argument("SystemConfig: atom counts must be >= 1");
    if (g1 <= 0.0)
        throw std::invalid_argument("SystemConfig: g1 must be > 0");
    if (nu < 0.0 || kappa < 0.0 || gamma < 0.0 || beta < 0.0)
        throw std::invalid_argument("SystemConfig: rates must be >= 0");
}

double SystemConfig::ratio_r() const {
    return nu / (std::sqrt(static_cast<double>(N1)) * g1);
}

int conserved_excitation(const BasisState& s) {
    return s.photons[0] + s.photons[1] + s.photons[2] + s.m1 + s.m2;
}

std::string BasisState::label() const {
    if (model == Model::Full) {
        return "|" + std::to_string(n1()) + std::to_string(nf()) +
               std::to_string(n2()) + ">_f m1=" + std::to_string(m1) +
               " m2=" + std::to_string(m2);
    }
    return "|" + std::to_string(nc()) + ">_c m1=" + std::to_string(m1) +
           " m2=" + std::to_string(m2);
}

int Subspace::index_of(const BasisState& s) const {
    auto it = std::find(states.begin(), states.end(), s);
    if (it == states.end()) return -1;
    return static_cast<int>(it - states.begin());
}

namespace {

BasisState full_state(int n1, int nf, int n2, int m1, int m2) {
    return BasisState{Model::Full, {n1, nf, n2}, m1, m2};
}

BasisState reduced_state(int nc, int m1, int m2) {
    return BasisState{Model::Reduced, {nc, 0, 0}, m1, m2};
}

}  // namespace

Subspace enumerate_basis(const SystemConfig& cfg, int excitation) {
    cfg.validate();
    if (excitation < 0 || excitation > 2)
        throw std::invalid_argument("enumerate_basis: unsupported excitation sector " +
                                    std::to_string(excitation));

    Subspace sub;
    sub.model = cfg.model;
    sub.excitation = excitation;
    sub.blockade = cfg.blockade;

    const int m1_max = cfg.blockade ? 1 : std::min(2, cfg.N1);
    const int m2_max = cfg.blockade ? 1 : std::min(2, cfg.N2);

    if (cfg.model == Model::Full) {
        if (excitation == 0) {
            sub.states = {full_state(0, 0, 0, 0, 0)};
        } else if (excitation == 1) {
            // Canonical single-excitation order: atoms of ensemble 2, atoms of
            // ensemble 1, photon in cavity 2, fiber, cavity 1.
            sub.states = {full_state(0, 0, 0, 0, 1), full_state(0, 0, 0, 1, 0),
                          full_state(0, 0, 1, 0, 0), full_state(0, 1, 0, 0, 0),
                          full_state(1, 0, 0, 0, 0)};
        } else {
            for (int m1 = 0; m1 <= std::min(2, m1_max); ++m1)
                for (int m2 = 0; m2 <= std::min(2, m2_max); ++m2)
                    for (int n1 = 0; n1 <= 2; ++n1)
                        for (int nf = 0; nf <= 2; ++nf)
                            for (int n2 = 0; n2 <= 2; ++n2)
                                if (n1 + nf + n2 + m1 + m2 == 2)
                                    sub.states.push_back(full_state(n1, nf, n2, m1, m2));
            std::sort(sub.states.begin(), sub.states.end(),
                      [](const BasisState& a, const BasisState& b) {
                          return std::tie(a.m1, a.m2, a.photons[0], a.photons[1], a.photons[2]) >
                                 std::tie(b.m1, b.m2, b.photons[0], b.photons[1], b.photons[2]);
                      });
        }
        return sub;
    }

    // Reduced model.
    if (excitation == 0) {
        sub.states = {reduced_state(0, 0, 0)};
    } else if (excitation == 1) {
        sub.states = {reduced_state(0, 0, 1), reduced_state(0, 1, 0),
                      reduced_state(1, 0, 0)};
    } else {
        sub.states = {reduced_state(0, 1, 1), reduced_state(1, 0, 1),
                      reduced_state(1, 1, 0), reduced_state(2, 0, 0)};
        if (m1_max >= 2) sub.states.push_back(reduced_state(0, 2, 0));
        if (m2_max >= 2) sub.states.push_back(reduced_state(0, 0, 2));
    }
    return sub;
}

}  // namespace fiberqed
