#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "dicke/errors.hpp"
#include "dicke/spectra.hpp"
#include "support.hpp"

using namespace dicke;

namespace {

double residual(const SymmetricMatrixRep& h, const EigenPairs& e) {
    double r = 0.0;
    for (Eigen::Index c = 0; c < e.vectors.cols(); ++c) {
        const Eigen::VectorXd v = e.vectors.col(c);
        r = std::max(r, (h.multiply(v) - e.energies[c] * v).norm());
    }
    return r / h.norm_inf();
}

}  // namespace

TEST_CASE("diagonal input") {
    SymmetricMatrixRep h(5, 2);
    const double d[] = {3.0, -1.0, 2.0, -1.0, 0.5};
    for (std::size_t i = 0; i < 5; ++i) h.set(i, i, d[i]);
    const auto e = diagonalize(h, 5);
    CHECK(e.energies[0] == -1.0);
    CHECK(e.energies[1] == -1.0);
    CHECK(e.energies[4] == 3.0);
    CHECK(e.vectors(1, 0) == 1.0);  // stable order among equal entries
    CHECK(e.vectors(3, 1) == 1.0);
    CHECK(e.vectors(0, 4) == 1.0);
    CHECK_THROWS_AS(diagonalize(h, 6), ParameterError);
}

TEST_CASE("tuned single-M spectra") {
    auto p = ModelParams::symmetric(1, 1, 1.3, 0, 12);
    auto h1 = build_single_m_hamiltonian(p, 1);
    const auto e1 = diagonalize(h1, 2);
    const double split = 1.3 * std::sqrt(12.0 / 12.0);
    CHECK(e1.energies[0] == doctest::Approx(1 - 6 - split).epsilon(1e-14));
    CHECK(e1.energies[1] == doctest::Approx(1 - 6 + split).epsilon(1e-14));
    for (int M : {2, 7, 12, 19}) {
        auto h = build_single_m_hamiltonian(p, M);
        const auto e = diagonalize(h, h.dim());
        const double centre = M - 6.0;
        const auto d = static_cast<Eigen::Index>(h.dim());
        for (Eigen::Index i = 0; i < d; ++i)
            CHECK(e.energies[i] - centre == doctest::Approx(centre - e.energies[d - 1 - i]).epsilon(1e-12));
        CHECK(e.max_residual < 1e-12);
    }
}

TEST_CASE("band eigenvalues and both vector paths agree with a full dense solve") {
    auto p = ModelParams::symmetric(1, 1, 2.5, 0.3, 10);
    auto basis = build_basis(p, 120, Parity::even);
    auto h = build_hamiltonian(p, *basis);
    REQUIRE(h.dim() > kDenseVectorLimit);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(h.dense());
    const std::size_t k = 120;
    const auto values = diagonalize(h, k, false);
    const auto dense = diagonalize(h, k, true, EigenMethod::dense);
    const auto inv = diagonalize(h, k, true, EigenMethod::inverse_iteration);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(k); ++i) {
        CHECK(std::abs(values.energies[i] - ref.eigenvalues()[i]) < 1e-11 * h.norm_inf());
        CHECK(std::abs(inv.energies[i] - ref.eigenvalues()[i]) < 1e-11 * h.norm_inf());
        CHECK(std::abs(std::abs(dense.vectors.col(i).dot(inv.vectors.col(i))) - 1.0) < 1e-10);
    }
    CHECK(residual(h, inv) < 1e-12);
    CHECK(residual(h, dense) < 1e-12);
    const Eigen::MatrixXd gram = inv.vectors.transpose() * inv.vectors;
    CHECK((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-11);
    for (Eigen::Index c = 0; c < inv.vectors.cols(); ++c) {
        Eigen::Index r = 0;
        inv.vectors.col(c).cwiseAbs().maxCoeff(&r);
        CHECK(inv.vectors(r, c) > 0.0);
    }
}

TEST_CASE("inverse iteration on exact degeneracies") {
    // delta = 0 at tuned frequencies has crossings between M sectors
    auto p = ModelParams::symmetric(1, 1, 0.0001, 0, 8);
    auto basis = build_basis(p, 90, Parity::both);
    auto h = build_hamiltonian(p, *basis);
    const auto inv = diagonalize(h, 200, true, EigenMethod::inverse_iteration);
    const Eigen::MatrixXd gram = inv.vectors.transpose() * inv.vectors;
    CHECK((gram - Eigen::MatrixXd::Identity(200, 200)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(residual(h, inv) < 1e-9);
}

TEST_CASE("truncation convergence") {
    auto free = ModelParams::symmetric(1, 1, 0, 0.5, 4);
    const auto es = converged_spectrum(free, 10, 1e-10, Parity::both);
    CHECK(es.n_max_used == 64);
    const double expect[] = {-2, -1, -1, 0, 0, 0, 1, 1, 1, 1};
    for (std::size_t i = 0; i < 10; ++i) CHECK(es.energies[i] == doctest::Approx(expect[i]));
    CHECK(es.k_converged == 10);

    auto p = ModelParams::symmetric(1, 1, 2.0, 0.6, 6);
    const auto c = converged_spectrum(p, 30, 1e-9, Parity::both);
    const auto deep = spectrum_at(p, 400, 30, Parity::both, false);
    for (std::size_t i = 0; i < 30; ++i) CHECK(std::abs(c.energies[i] - deep.energies[i]) < 1e-9);
    CHECK(c.states.size() == 30);
    for (std::size_t i = 0; i < 30; ++i) {
        REQUIRE(c.states[i].basis->parity() == c.level_parity[i]);
        CHECK(c.states[i].norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    }

    TruncationControl tight;
    tight.n_max_ceiling = 80;
    CHECK_THROWS_AS(converged_spectrum(ModelParams::symmetric(1, 1, 4, 1, 6), 300, 1e-12,
                                       Parity::both, tight),
                    TruncationError);
}

TEST_CASE("delta = 0 spectrum is the union of single-M spectra") {
    auto p = ModelParams::symmetric(1, 1.3, 1.5, 0, 8);
    const auto full = converged_spectrum(p, 150, 1e-11, Parity::both, {64, 1.5, 16384, false});
    std::vector<double> uni;
    for (int M = 0; M < 200; ++M) {
        auto h = build_single_m_hamiltonian(p, M);
        const auto e = diagonalize(h, h.dim(), false);
        for (Eigen::Index i = 0; i < e.energies.size(); ++i) uni.push_back(e.energies[i]);
    }
    std::sort(uni.begin(), uni.end());
    for (std::size_t i = 0; i < 150; ++i) CHECK(std::abs(full.energies[i] - uni[i]) < 1e-10);
}

TEST_CASE("level flow") {
    auto p = ModelParams::symmetric(1, 1, 0, 0, 6);
    std::vector<double> grid;
    for (int i = 0; i <= 30; ++i) grid.push_back(0.1 * i);
    const auto flow = level_flow(p, grid, 5, 1e-10, Parity::both);
    REQUIRE(flow.energy.size() == grid.size());
    // tuned delta = 0: each M sector is linear in lambda, the ground level is their minimum
    std::vector<double> base, slope;
    for (int M = 0; M <= 40; ++M) {
        auto h = build_single_m_hamiltonian(p.with_lambda(1.0), M);
        base.push_back(M - 3.0);
        slope.push_back(diagonalize(h, 1, false).energies[0] - (M - 3.0));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double lo = 1e300;
        for (std::size_t M = 0; M < base.size(); ++M) lo = std::min(lo, base[M] + grid[i] * slope[M]);
        CHECK(flow.energy[i][0] == doctest::Approx(lo).epsilon(1e-10));
    }
    const auto one = level_flow(p, {0.7}, 5, 1e-10, Parity::even);
    CHECK(one.energy.size() == 1);
    CHECK_THROWS_AS(level_flow(p, {0.7, 0.5}, 5, 1e-10, Parity::even), ParameterError);
}

TEST_CASE("zero-plus basis and participation numbers") {
    auto irr = ModelParams::symmetric(1, std::sqrt(2.0), 0.3, 0.4, 4);
    const auto bare = zero_plus_basis(irr, 20, Parity::both, 30);
    for (const auto& s : bare) CHECK(s.coeffs.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    CHECK(bare[0].coeffs[static_cast<Eigen::Index>(*bare[0].basis->find(0, 0))] == doctest::Approx(1.0));

    auto tuned = ModelParams::symmetric(1, 1, 0.3, 0.4, 4);
    const auto zp = zero_plus_basis(tuned, 40, Parity::even, 30);
    CHECK(std::abs(zp[0].coeffs[static_cast<Eigen::Index>(*zp[0].basis->find(0, 0))]) == doctest::Approx(1.0));
    const auto hint = build_interaction(tuned, *zp[0].basis);
    for (std::size_t a = 0; a < zp.size(); ++a)
        for (std::size_t b = 0; b < a; ++b) {
            const double fa = expect_n(zp[a]) + expect_jz(zp[a]);
            const double fb = expect_n(zp[b]) + expect_jz(zp[b]);
            if (std::abs(fa - fb) < 1e-12)  // same shell
                CHECK(std::abs(zp[a].coeffs.dot(hint.multiply(zp[b].coeffs))) < 1e-10);
        }

    CHECK(npc(zp[3], zp) == doctest::Approx(1.0));
    QuantumState mix{zp[0].basis, (zp[1].coeffs + zp[4].coeffs + zp[7].coeffs) / std::sqrt(3.0)};
    CHECK(npc(mix, zp) == doctest::Approx(3.0));
    const auto batch = npc(std::vector<QuantumState>{zp[3], mix}, zp);
    CHECK(batch[0] == doctest::Approx(1.0));
    CHECK(batch[1] == doctest::Approx(3.0));
    const std::vector<QuantumState> partial(zp.begin(), zp.begin() + 3);
    CHECK_THROWS_AS(npc(mix, partial), CoverageError);
}
