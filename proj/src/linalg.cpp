// linalg.cpp: LAPACKE calls behind the eigen-solver policy

#include "linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "dicke/errors.hpp"

namespace dicke::linalg {

namespace {

void check_info(lapack_int info, const char* routine) {
    if (info != 0)
        throw NumericalError(std::string(routine) + " failed with info = " + std::to_string(info),
                             static_cast<double>(info));
}

}  // namespace

Eigen::VectorXd band_eigenvalues(const SymmetricMatrixRep& h) {
    const auto n = static_cast<lapack_int>(h.dim());
    const auto kd = static_cast<lapack_int>(h.bandwidth());
    std::vector<double> ab = h.band();  // destroyed by the driver
    Eigen::VectorXd w(n);
    if (n == 0) return w;
    double dummy = 0.0;
    check_info(LAPACKE_dsbev(LAPACK_COL_MAJOR, 'N', 'L', n, kd, ab.data(), kd + 1, w.data(),
                             &dummy, 1),
               "dsbev");
    return w;
}

void dense_lowest_eigenpairs(const SymmetricMatrixRep& h, std::size_t k, Eigen::VectorXd& values,
                             Eigen::MatrixXd& vectors) {
    // Eigen's own Householder reduction; the level-3 BLAS path is avoided on purpose.
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense());
    if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed", 1.0);
    values = es.eigenvalues().head(kk);
    vectors = es.eigenvectors().leftCols(kk);
}

void tridiagonal_eigenpairs(const SymmetricMatrixRep& h, Eigen::VectorXd& values,
                            Eigen::MatrixXd& vectors) {
    const auto n = static_cast<lapack_int>(h.dim());
    if (h.bandwidth() > 1) throw ConsistencyError("matrix is not tridiagonal");
    values.resize(n);
    vectors.resize(n, n);
    if (n == 0) return;
    Eigen::VectorXd off = Eigen::VectorXd::Zero(n);
    for (lapack_int i = 0; i < n; ++i) {
        values[i] = h(i, i);
        if (i + 1 < n) off[i] = h(i + 1, i);
    }
    check_info(LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', n, values.data(), off.data(), vectors.data(),
                             n),
               "dstev");
}

Eigen::MatrixXd band_inverse_iteration(const SymmetricMatrixRep& h, const Eigen::VectorXd& values,
                                       double cluster_gap) {
    const auto n = static_cast<lapack_int>(h.dim());
    const auto kd = static_cast<lapack_int>(h.bandwidth());
    const Eigen::Index k = values.size();
    Eigen::MatrixXd z(n, k);
    if (k == 0) return z;

    const lapack_int ldab = 3 * kd + 1;  // general band storage with room for fill-in
    std::vector<double> ab(static_cast<std::size_t>(ldab) * n);
    std::vector<lapack_int> ipiv(n);
    const double scale = std::max(h.norm_inf(), 1.0);
    const double eps = std::numeric_limits<double>::epsilon();

    auto factor = [&](double sigma) {
        std::fill(ab.begin(), ab.end(), 0.0);
        for (lapack_int c = 0; c < n; ++c)
            for (lapack_int r = std::max<lapack_int>(0, c - kd); r <= std::min(n - 1, c + kd); ++r)
                ab[(2 * kd + r - c) + static_cast<std::size_t>(c) * ldab] =
                    h(r, c) - (r == c ? sigma : 0.0);
        return LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kd, kd, ab.data(), ldab, ipiv.data());
    };

    Eigen::Index cluster_begin = 0;
    double prev_sigma = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < k; ++i) {
        if (i > 0 && values[i] - values[i - 1] >= cluster_gap) cluster_begin = i;
        double sigma = values[i];
        const double pert = 10.0 * eps * scale;
        if (sigma - prev_sigma < pert) sigma = prev_sigma + pert;
        lapack_int info = factor(sigma);
        for (int retry = 0; info > 0 && retry < 8; ++retry) {
            sigma += pert * (1 << retry);
            info = factor(sigma);
        }
        check_info(info, "dgbtrf");
        prev_sigma = sigma;

        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        Eigen::VectorXd x(n);
        for (lapack_int r = 0; r < n; ++r) x[r] = uni(rng);
        x.normalize();

        double residual = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 6; ++it) {
            check_info(LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kd, kd, 1, ab.data(), ldab,
                                      ipiv.data(), x.data(), n),
                       "dgbtrs");
            for (int pass = 0; pass < 2; ++pass)
                for (Eigen::Index c = cluster_begin; c < i; ++c) x -= z.col(c).dot(x) * z.col(c);
            x.normalize();
            residual = (h.multiply(x) - values[i] * x).norm() / scale;
            if (it >= 1 && residual < 1e-13) break;
        }
        if (!(residual < 1e-9))
            throw NumericalError("inverse iteration did not converge (residual " +
                                     std::to_string(residual) + ")",
                                 residual);
        z.col(i) = x;
    }
    return z;
}

}  // namespace dicke::linalg
