#pragma once

#include <array>
#include <functional>
#include <vector>

#include "fiberqed/basis.hpp"

namespace fiberqed {

enum class Protocol { Transfer, Swap, EntangleE1, EntangleE2, ControlledZ };

const char* protocol_name(Protocol p);

// One protocol run, parametrized in dimensionless units: time is
// tau = sqrt(N) g1 t and all rates are quoted in units of g1.
struct Scenario {
    Protocol protocol = Protocol::Transfer;
    Model model = Model::Full;
    int n_atoms = 1;           // N, both ensembles
    double r = 0.0;            // nu / (sqrt(N) g1), full model only
    double delta = 0.0;        // (g2 - g1) / g1
    bool blockade = true;
    bool dissipative = false;
    double kappa = 0.0;        // atomic decay / g1
    double gamma = 0.0;        // cavity leakage / g1
    double beta = 0.0;         // fiber leakage / g1
    double tau_max = 0.0;      // 0 selects the protocol default
    double tau_step = 0.01;
    double qubit_alpha = 0.0;  // transfer input amplitudes; 0,0 selects 1/sqrt(2) each
    double qubit_beta = 0.0;
    int quadrature_order = 32; // swap angle average
    int transfer_k = 0;        // if > 0, r is taken from transfer_condition(k)

    // Scenario with per-protocol defaults filled in.
    static Scenario defaults(Protocol p);

    // The equivalent SystemConfig in tau units (g1 = 1/sqrt(N), so that one
    // unit of time is one unit of sqrt(N) g1 t).
    SystemConfig config() const;

    double effective_r() const;
    double resolved_tau_max() const;
};

struct FidelitySeries {
    std::vector<double> tau;
    std::vector<double> fidelity;
    double peak_tau = 0.0;
    double peak_value = 0.0;
    Scenario scenario;
};

// Fidelity of the scenario at a single dimensionless time. For dissipative
// scenarios this integrates the master equation from 0 to tau.
double evaluate_fidelity(const Scenario& sc, double tau);

FidelitySeries run_transfer(const Scenario& sc);
FidelitySeries run_swap(const Scenario& sc);
FidelitySeries run_entangle(const Scenario& sc);
FidelitySeries run_cz(const Scenario& sc);
FidelitySeries run_scenario(const Scenario& sc);

// Grid argmax refined by golden-section search on `eval` to a time
// tolerance of 1e-4; ties break toward the earliest time.
std::pair<double, double> find_peak(const FidelitySeries& series,
                                    const std::function<double(double)>& eval);
// Convenience overload: the evaluator is rebuilt from the series' scenario.
std::pair<double, double> find_peak(const FidelitySeries& series);

// Angle-averaging tensor for the swap gate: the average fidelity is a
// bilinear form in the evolved logical dyads, so the double angle integral
// reduces to one fixed fourth-order tensor computed by periodic trapezoid
// quadrature (exact: the integrand is a trigonometric polynomial).
// Logical order: {both ground, ensemble-2 excited, ensemble-1 excited,
// both excited}. Element (i,j,k,l) is flattened as ((i*4+j)*4+k)*4+l.
std::array<double, 256> swap_angle_tensor(int order);

}  // namespace fiberqed
