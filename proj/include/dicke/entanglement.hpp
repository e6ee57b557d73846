// entanglement.hpp: atom-field entropy, wave-function entropy, two-atom density and concurrence

#pragma once

#include <Eigen/Dense>

#include "dicke/model.hpp"

namespace dicke {

/// Normalized atom-field entanglement entropy -Tr[rho_A ln rho_A] / ln(2j+1),
/// from the atomic reduction. Zero when 2j+1 = 1.
double af_entropy(const QuantumState& state);

/// Same quantity from the field-side reduction rho_F.
double af_entropy_field(const QuantumState& state);

/// Shannon entropy of the product-basis weights over ln(2j+1).
double wavefunction_entropy(const QuantumState& state);

/// Two-atom reduced density matrix in {|00>, |01>, |10>, |11>}, 0 = lower level.
struct PairDensity {
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    double trace = 0.0;
    bool swap_symmetric = true;  // fixed by construction from the symmetric sector
};

/// Requires j = N/2 and N >= 2.
PairDensity pair_density(const QuantumState& state, const ModelParams& params);

/// Wootters concurrence of the pair density, scaled by N - 1.
double concurrence(const PairDensity& pd, int n_atoms);
double concurrence(const QuantumState& state, const ModelParams& params);

/// Entanglement of formation of one atom pair from the scaled concurrence.
double pair_entropy(double scaled_c, int n_atoms);

}  // namespace dicke
