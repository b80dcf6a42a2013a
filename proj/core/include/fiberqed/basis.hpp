#pragma once

#include <array>
#include <string>
#include <vector>

namespace fiberqed {

// Which field content is kept: the full chain (cavity 1, fiber, cavity 2)
// or the single resonant normal mode c that survives in the strong
// fiber-coupling limit.
enum class Model { Full, Reduced };

// All physical parameters of one scenario. Rates are angular frequencies;
// the dimensionless ratio r = nu/(sqrt(N) g1) is always derived, never stored.
struct SystemConfig {
    int N1 = 1;             // atoms in cavity 1
    int N2 = 1;             // atoms in cavity 2
    double g1 = 1.0;        // atom-cavity coupling, cavity 1
    double g2 = 1.0;        // atom-cavity coupling, cavity 2
    double nu = 0.0;        // cavity-fiber coupling
    double kappa = 0.0;     // atomic spontaneous emission rate
    double gamma = 0.0;     // cavity photon leakage rate
    double beta = 0.0;      // fiber leakage rate
    bool blockade = true;   // dipole blockade: drop doubly excited Dicke states
    Model model = Model::Full;

    // Throws std::invalid_argument on N < 1, negative rates, or g1 <= 0.
    void validate() const;

    // r = nu / (sqrt(N1) g1).
    double ratio_r() const;

    // g2 - g1, the controlled-Z tuning knob.
    double delta() const { return g2 - g1; }
};

// One excitation-conserving basis vector in the symmetric (Dicke) sector.
// Atomic ensembles are labeled only by their excitation counts m1, m2;
// atom number enters through matrix elements, never through the label.
struct BasisState {
    Model model = Model::Full;
    // Full: {n1, nf, n2} photons in cavity 1, fiber, cavity 2.
    // Reduced: {nc, 0, 0} photons in the resonant mode c.
    std::array<int, 3> photons{};
    int m1 = 0;  // excited atoms in ensemble 1
    int m2 = 0;  // excited atoms in ensemble 2

    int n1() const { return photons[0]; }
    int nf() const { return photons[1]; }
    int n2() const { return photons[2]; }
    int nc() const { return photons[0]; }

    bool operator==(const BasisState&) const = default;

    std::string label() const;
};

// Total excitation number of a basis label: photons plus excited atoms.
int conserved_excitation(const BasisState& state);

// An ordered excitation sector. Ordering is canonical: sectors whose basis
// appears explicitly in the underlying treatment keep that order (see
// enumerate_basis); the remaining two-excitation full-model sector is sorted
// lexicographically descending by (m1, m2, n1, nf, n2).
struct Subspace {
    Model model = Model::Full;
    int excitation = 0;
    bool blockade = true;
    std::vector<BasisState> states;

    int size() const { return static_cast<int>(states.size()); }
    // Index of a state in this subspace, or -1 if absent.
    int index_of(const BasisState& s) const;
};

// Enumerates the excitation sector for the configured model.
// Supported sectors are 0, 1, 2; anything else throws std::invalid_argument.
// Under blockade any state with m1 >= 2 or m2 >= 2 is dropped; without
// blockade m_j is additionally capped at N_j (a one-atom ensemble has no
// doubly excited Dicke state).
Subspace enumerate_basis(const SystemConfig& cfg, int excitation);

}  // namespace fiberqed
