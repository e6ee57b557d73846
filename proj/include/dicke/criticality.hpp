// criticality.hpp: closed-form critical couplings, ground and ESQPT energies, phase classifier

#pragma once

#include <optional>
#include <string_view>

#include "dicke/model.hpp"

namespace dicke {

struct CriticalSet {
    double lambda_c = 0.0;
    double lambda_0 = 0.0;        // +inf at delta = 1
    double lambda_prime_c = 0.0;  // single-M subspace, delta = 0
};

CriticalSet critical_couplings(const ModelParams& params);

double ground_energy(const ModelParams& params, double lambda);

struct EsqptEnergies {
    std::optional<double> e_c1;
    std::optional<double> e_c2;
    double e_c3 = 0.0;
};

EsqptEnergies esqpt_energies(const ModelParams& params, double lambda);

enum class QuantumPhase { below_ground, D, TC, N, S };

std::string_view to_string(QuantumPhase p);

/// Lower-closed intervals between consecutive critical energies.
QuantumPhase quantum_phase(const ModelParams& params, double lambda, double energy);

}  // namespace dicke
