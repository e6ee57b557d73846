// spectra.hpp: diagonalization, truncation convergence, level flows and NPC

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "dicke/model.hpp"

namespace dicke {

struct EigenPairs {
    Eigen::VectorXd energies;  // ascending
    Eigen::MatrixXd vectors;   // columns; empty when only values were requested
    double max_residual = 0.0;  // max ||Hv - Ev|| / ||H||
};

/// Largest block any solver accepts.
inline constexpr std::size_t kMaxSolverDimension = 20000;
/// Above this dimension eigenvectors come from band inverse iteration.
inline constexpr std::size_t kDenseVectorLimit = 600;

enum class EigenMethod { automatic, dense, inverse_iteration };

/// k lowest eigenpairs of a symmetric matrix. Residuals are certified below
/// 1e-9 ||H|| when vectors are requested. Each vector's largest component is
/// positive. A diagonal matrix yields coordinate vectors in stable order.
EigenPairs diagonalize(const SymmetricMatrixRep& h, std::size_t k, bool want_vectors = true,
                       EigenMethod method = EigenMethod::automatic);

struct EigenSystem {
    ModelParams params;
    Parity parity = Parity::both;
    std::vector<double> energies;
    std::vector<QuantumState> states;  // empty when vectors were not requested
    std::vector<Parity> level_parity;  // block of each level
    int n_max_used = 0;
    std::size_t k_converged = 0;
    double last_deviation = 0.0;  // largest shift of the k levels at the final comparison

    std::size_t size() const { return energies.size(); }
};

struct TruncationControl {
    int n_max_start = 64;
    double growth = 1.5;
    int n_max_ceiling = 16384;
    bool want_vectors = true;
};

/// Lowest k_levels eigenpairs at a fixed Fock truncation.
EigenSystem spectrum_at(const ModelParams& params, int n_max, std::size_t k_levels, Parity parity,
                        bool want_vectors = true);

/// Grows n_max geometrically until the k_levels lowest energies move by less
/// than tol between consecutive truncations. The returned spectrum is the one
/// at the smaller truncation of the converged pair.
EigenSystem converged_spectrum(const ModelParams& params, std::size_t k_levels, double tol,
                               Parity parity, const TruncationControl& control = {});

struct LevelFlow {
    std::vector<double> lambda_grid;
    Parity parity = Parity::both;
    // [lambda point][level index]
    std::vector<std::vector<double>> energy;
    std::vector<std::vector<double>> jz;
    std::vector<std::vector<double>> n;
    std::vector<int> n_max_used;
};

/// Converged spectra along a strictly increasing lambda grid. Levels are
/// labelled by energy order inside the parity block.
LevelFlow level_flow(const ModelParams& base, const std::vector<double>& lambda_grid,
                     std::size_t k_levels, double tol, Parity parity,
                     const TruncationControl& control = {}, unsigned threads = 1);

/// Eigenbasis at lambda = 0+ from first-order degenerate perturbation theory:
/// H_int is diagonalized inside every degenerate shell of H_free. Ordered by
/// (free energy, first-order shift); the first k are returned.
std::vector<QuantumState> zero_plus_basis(const ModelParams& params, std::size_t k, Parity parity,
                                          int n_max);

/// Number of principal components 1 / sum |<ref|state>|^4. Throws
/// CoverageError when the reference captures less than 1 - 1e-8 of the state.
double npc(const QuantumState& state, const std::vector<QuantumState>& reference);

/// npc for many states at once through one overlap matrix. Reference vectors
/// are mapped onto the basis of each state.
std::vector<double> npc(const std::vector<QuantumState>& states,
                        const std::vector<QuantumState>& reference);

}  // namespace dicke
