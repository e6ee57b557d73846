// model.hpp: model parameters, parity-blocked product basis and Hamiltonian assembly

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace dicke {

enum class Parity { even, odd, both };

std::string_view to_string(Parity p);
Parity parse_parity(std::string_view s);

/// Parameter tuple of one model instance. The quasispin is stored as 2j so
/// half-integer values are exact.
struct ModelParams {
    double omega = 1.0;   // field photon energy
    double omega0 = 1.0;  // atomic level splitting
    double lambda = 0.0;  // coupling strength
    double delta = 0.0;   // 0 = Tavis-Cummings, 1 = Dicke
    int n_atoms = 2;
    int two_j = 2;

    /// Fully symmetric subspace, j = N/2.
    static ModelParams symmetric(double omega, double omega0, double lambda, double delta,
                                 int n_atoms);

    double j() const { return 0.5 * two_j; }
    double sqrt_n() const;
    bool is_symmetric() const { return two_j == n_atoms; }
    ModelParams with_lambda(double l) const;

    /// Throws ParameterError when any invariant fails.
    void validate() const;
};

/// One product state |m>_A |n>_F; k = m + j counts excited atoms.
struct BasisEntry {
    int k = 0;
    int n = 0;
    int excitations() const { return k + n; }  // M = n + m + j
};

/// Ordered product basis, lexicographic in (n, m).
class BasisIndex {
public:
    BasisIndex(int two_j, int n_max, Parity parity, std::vector<BasisEntry> entries);

    int two_j() const { return two_j_; }
    int n_max() const { return n_max_; }
    Parity parity() const { return parity_; }
    std::size_t size() const { return entries_.size(); }
    std::span<const BasisEntry> entries() const { return entries_; }
    const BasisEntry& operator[](std::size_t i) const { return entries_[i]; }
    double m(std::size_t i) const { return entries_[i].k - 0.5 * two_j_; }

    std::optional<std::size_t> find(int k, int n) const;

private:
    int two_j_;
    int n_max_;
    Parity parity_;
    std::vector<BasisEntry> entries_;
    std::vector<long> lookup_;  // (n, k) -> entry index or -1
};

using BasisPtr = std::shared_ptr<const BasisIndex>;

BasisPtr build_basis(const ModelParams& params, int n_max, Parity parity);

/// Basis of the fixed-M subspace for delta = 0, in the same (n, m) order.
/// Entry e corresponds to tridiagonal index i = d - 1 - e.
BasisPtr single_m_basis(const ModelParams& params, int M);

/// Dimension min{2j, M} + 1 of the fixed-M subspace.
int single_m_dimension(int two_j, int M);

/// Real amplitude table over a basis.
struct QuantumState {
    BasisPtr basis;
    Eigen::VectorXd coeffs;

    double norm_squared() const { return coeffs.squaredNorm(); }
    /// Throws ParameterError unless |norm^2 - 1| <= tol.
    void require_normalized(double tol = 1e-12) const;
    /// (2j+1) x n_max amplitude table alpha(k, n).
    Eigen::MatrixXd amplitude_table() const;
};

/// <J_z> and <b+b>, both diagonal in the product basis.
double expect_jz(const QuantumState& s);
double expect_n(const QuantumState& s);

/// Overlap <a|b> of states that may live on different bases.
double overlap(const QuantumState& a, const QuantumState& b);

/// Maps a tridiagonal single-M eigenvector (index i) onto its product basis.
QuantumState single_m_state(const ModelParams& params, int M, const Eigen::VectorXd& by_i);

struct BlockTag {
    Parity parity = Parity::both;
    std::optional<int> M;  // set for fixed-M tridiagonal blocks
};

/// Real symmetric banded matrix; only the lower band is stored, so
/// H(a, b) and H(b, a) read the same word.
class SymmetricMatrixRep {
public:
    SymmetricMatrixRep(std::size_t dim, std::size_t bandwidth, BlockTag tag = {});

    std::size_t dim() const { return dim_; }
    std::size_t bandwidth() const { return kd_; }
    const BlockTag& tag() const { return tag_; }

    double operator()(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, double v);
    void add(std::size_t r, std::size_t c, double v);

    /// LAPACK 'L' band layout, leading dimension bandwidth + 1.
    const std::vector<double>& band() const { return band_; }

    Eigen::MatrixXd dense() const;
    Eigen::VectorXd multiply(const Eigen::VectorXd& v) const;
    double quadratic_form(const Eigen::VectorXd& v) const;
    /// Max absolute row sum.
    double norm_inf() const;

private:
    std::size_t dim_;
    std::size_t kd_;
    BlockTag tag_;
    std::vector<double> band_;
};

/// Full single-j Hamiltonian H_free + (lambda / sqrt N) H_int on the basis.
SymmetricMatrixRep build_hamiltonian(const ModelParams& params, const BasisIndex& basis);

/// Interaction operator H_int = b+J- + bJ+ + delta (b+J+ + bJ-), unscaled.
SymmetricMatrixRep build_interaction(const ModelParams& params, const BasisIndex& basis);

/// Tridiagonal delta = 0 Hamiltonian of the fixed-M subspace in the index
/// i = 0..min{2j, M} with m = -j + i, n = M - i.
SymmetricMatrixRep build_single_m_hamiltonian(const ModelParams& params, int M);

/// Number R_j of replicas of the quasispin-j subspace among N qubits.
double replica_count(int n_atoms, int two_j);

}  // namespace dicke
