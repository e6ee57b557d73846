// support.hpp: shared helpers for the unit tests

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "dicke/model.hpp"

namespace dicke::testing {

inline QuantumState random_state(const BasisPtr& basis, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    QuantumState s{basis, Eigen::VectorXd(static_cast<Eigen::Index>(basis->size()))};
    for (Eigen::Index i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] = g(rng);
    s.coeffs.normalize();
    return s;
}

inline QuantumState product_state(const BasisPtr& basis, int k, int n) {
    QuantumState s{basis, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis->size()))};
    s.coeffs[static_cast<Eigen::Index>(*basis->find(k, n))] = 1.0;
    return s;
}

inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

// Two-qubit reduction of the explicit 2^N embedding; qubits 0 and 1 form the pair.
inline Eigen::Matrix4d brute_pair(const QuantumState& s, int N) {
    const Eigen::MatrixXd t = s.amplitude_table();
    const int dim = 1 << N;
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    for (Eigen::Index n = 0; n < t.cols(); ++n) {
        Eigen::VectorXd psi = Eigen::VectorXd::Zero(dim);
        for (int bits = 0; bits < dim; ++bits) {
            const int k = __builtin_popcount(static_cast<unsigned>(bits));
            psi[bits] = t(k, n) / std::sqrt(binom(N, k));
        }
        for (int rest = 0; rest < (dim >> 2); ++rest)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    const int ia = ((a >> 1) & 1) | ((a & 1) << 1) | (rest << 2);
                    const int ib = ((b >> 1) & 1) | ((b & 1) << 1) | (rest << 2);
                    rho(a, b) += psi[ia] * psi[ib];
                }
    }
    return rho;
}

/// Dense H from Kronecker products of ladder matrices on the full (k, n) grid,
/// index k * n_max + n.
inline Eigen::MatrixXd kron_hamiltonian(const ModelParams& p, int n_max) {
    const int d = p.two_j + 1;
    const double j = p.j();
    Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(d, d), jp = Eigen::MatrixXd::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = k - j;
        jz(k, k) = m;
        if (k + 1 < d) jp(k + 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n_max, n_max), nb = Eigen::MatrixXd::Zero(n_max, n_max);
    for (int n = 0; n < n_max; ++n) {
        nb(n, n) = n;
        if (n + 1 < n_max) b(n, n + 1) = std::sqrt(n + 1.0);
    }
    auto kron = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& c) {
        Eigen::MatrixXd out(a.rows() * c.rows(), a.cols() * c.cols());
        for (Eigen::Index r = 0; r < a.rows(); ++r)
            for (Eigen::Index s = 0; s < a.cols(); ++s)
                out.block(r * c.rows(), s * c.cols(), c.rows(), c.cols()) = a(r, s) * c;
        return out;
    };
    const Eigen::MatrixXd ia = Eigen::MatrixXd::Identity(d, d), ib = Eigen::MatrixXd::Identity(n_max, n_max);
    const Eigen::MatrixXd jm = jp.transpose(), bd = b.transpose();
    Eigen::MatrixXd hint = kron(jm, bd) + kron(jp, b) + p.delta * (kron(jp, bd) + kron(jm, b));
    return p.omega * kron(ia, nb) + p.omega0 * kron(jz, ib) +
           p.lambda / std::sqrt(static_cast<double>(p.n_atoms)) * hint;
}

}  // namespace dicke::testing
