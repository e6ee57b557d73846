// entanglement.cpp: reductions of eigenstates to atomic and pair subsystems

#include "dicke/entanglement.hpp"

#include <cmath>
#include <sstream>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

constexpr double kEigenFloor = 1e-14;

double entropy_of(const Eigen::MatrixXd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()[i];
        if (p > kEigenFloor) s -= p * std::log(p);
    }
    return s;
}

double log_dim(const QuantumState& state) { return std::log(state.basis->two_j() + 1.0); }

void require_symmetric(const ModelParams& params, const QuantumState& state) {
    if (!params.is_symmetric())
        throw UnsupportedError("pair density requires the fully symmetric subspace j = N/2");
    if (params.n_atoms < 2) throw UnsupportedError("pair density requires N >= 2");
    if (state.basis->two_j() != params.two_j)
        throw ConsistencyError("state basis does not match the model parameters");
}

}  // namespace

double af_entropy(const QuantumState& state) {
    state.require_normalized();
    if (state.basis->two_j() == 0) return 0.0;
    const Eigen::MatrixXd t = state.amplitude_table();
    return entropy_of(t * t.transpose()) / log_dim(state);
}

double af_entropy_field(const QuantumState& state) {
    state.require_normalized();
    if (state.basis->two_j() == 0) return 0.0;
    const Eigen::MatrixXd t = state.amplitude_table();
    return entropy_of(t.transpose() * t) / log_dim(state);
}

double wavefunction_entropy(const QuantumState& state) {
    state.require_normalized();
    if (state.basis->two_j() == 0) return 0.0;
    double s = 0.0;
    for (Eigen::Index i = 0; i < state.coeffs.size(); ++i) {
        const double p = state.coeffs[i] * state.coeffs[i];
        if (p > 0.0) s -= p * std::log(p);
    }
    return s / log_dim(state);
}

PairDensity pair_density(const QuantumState& state, const ModelParams& params) {
    require_symmetric(params, state);
    state.require_normalized();
    const int n = params.n_atoms;
    const double nn = static_cast<double>(n) * (n - 1);
    // |k>_N = sum_a A_a(k) |a>_pair |k-a>_rest
    auto amp = [&](int a, int k) {
        switch (a) {
            case 0: return std::sqrt((n - k) * (n - k - 1.0) / nn);
            case 1: return std::sqrt(2.0 * k * (n - k) / nn);
            default: return std::sqrt(k * (k - 1.0) / nn);
        }
    };
    const Eigen::MatrixXd t = state.amplitude_table();
    Eigen::Matrix3d sym = Eigen::Matrix3d::Zero();
    for (Eigen::Index f = 0; f < t.cols(); ++f)
        for (int r = 0; r <= n - 2; ++r)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    sym(a, b) += t(r + a, f) * t(r + b, f) * amp(a, r + a) * amp(b, r + b);

    Eigen::Matrix<double, 4, 3> e = Eigen::Matrix<double, 4, 3>::Zero();
    e(0, 0) = 1.0;
    e(1, 1) = e(2, 1) = 1.0 / std::sqrt(2.0);
    e(3, 2) = 1.0;
    PairDensity pd;
    pd.rho = e * sym * e.transpose();
    pd.trace = pd.rho.trace();
    return pd;
}

double concurrence(const PairDensity& pd, int n_atoms) {
    Eigen::Matrix4d yy = Eigen::Matrix4d::Zero();
    yy(0, 3) = yy(3, 0) = -1.0;
    yy(1, 2) = yy(2, 1) = 1.0;
    const Eigen::Matrix4d flipped = yy * pd.rho * yy;  // rho is real, rho* = rho

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> er(pd.rho);
    if (er.eigenvalues().minCoeff() < -1e-10)
        throw NumericalError("pair density is not positive semidefinite",
                             er.eigenvalues().minCoeff());
    const Eigen::Vector4d sq = er.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix4d root = er.eigenvectors() * sq.asDiagonal() * er.eigenvectors().transpose();
    const Eigen::Matrix4d r = root * flipped * root;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(0.5 * (r + r.transpose()),
                                                      Eigen::EigenvaluesOnly);
    Eigen::Vector4d mu = es.eigenvalues();  // ascending
    for (int i = 0; i < 4; ++i) {
        if (mu[i] < -1e-12) {
            std::ostringstream os;
            os << "negative eigenvalue " << mu[i] << " of rho rho~";
            throw NumericalError(os.str(), mu[i]);
        }
        mu[i] = std::sqrt(std::max(mu[i], 0.0));
    }
    const double c = mu[3] - mu[2] - mu[1] - mu[0];
    return (n_atoms - 1) * std::max(c, 0.0);
}

double concurrence(const QuantumState& state, const ModelParams& params) {
    return concurrence(pair_density(state, params), params.n_atoms);
}

double pair_entropy(double scaled_c, int n_atoms) {
    if (n_atoms < 2) throw ParameterError("pair entropy requires N >= 2");
    if (!(scaled_c >= 0.0 && scaled_c <= n_atoms - 1.0))
        throw ParameterError("scaled concurrence outside [0, N-1]");
    const double c = scaled_c / (n_atoms - 1.0);
    const double root = std::sqrt(std::max(0.0, 1.0 - c * c));
    double s = 0.0;
    for (double a : {0.5 * (1.0 + root), 0.5 * (1.0 - root)})
        if (a > 0.0) s -= a * std::log(a);
    return s;
}

}  // namespace dicke
