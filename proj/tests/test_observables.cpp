#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dicke/errors.hpp"
#include "dicke/observables.hpp"
#include "dicke/spectra.hpp"

using namespace dicke;

TEST_CASE("Peres lattice at zero coupling carries quantum numbers") {
    auto p = ModelParams::symmetric(1, std::sqrt(3.0), 0, 0.3, 6);
    const auto es = converged_spectrum(p, 40, 1e-10, Parity::both);
    const auto jz = peres_lattice(es, Observable::Jz);
    const auto n = peres_lattice(es, Observable::n);
    for (std::size_t i = 0; i < es.size(); ++i) {
        CHECK(jz.value[i] == doctest::Approx(std::round(jz.value[i])).epsilon(1e-12));
        CHECK(n.value[i] == doctest::Approx(std::round(n.value[i])).epsilon(1e-12));
        CHECK(es.energies[i] == doctest::Approx(n.value[i] + std::sqrt(3.0) * jz.value[i]));
    }
    CHECK(parse_observable("hint") == Observable::Hint);
    CHECK_THROWS_AS(parse_observable("spin"), ParameterError);
}

TEST_CASE("lattice smoothing") {
    PeresLattice lat;
    for (int i = 0; i < 10; ++i) {
        lat.energy.push_back(i);
        lat.value.push_back(i * i);
    }
    const auto id = smooth_lattice(lat, 1);
    CHECK(id.lattice.value == lat.value);
    CHECK(id.lattice.energy == lat.energy);
    const auto w3 = smooth_lattice(lat, 3);
    REQUIRE(w3.lattice.size() == 8);
    CHECK(w3.lattice.energy[0] == doctest::Approx(1.0));
    CHECK(w3.lattice.value[0] == doctest::Approx(5.0 / 3.0));
    CHECK(w3.lattice.value[7] == doctest::Approx((49 + 64 + 81) / 3.0));
    PeresLattice flat = lat;
    std::fill(flat.value.begin(), flat.value.end(), 2.5);
    for (double v : smooth_lattice(flat, 4).lattice.value) CHECK(v == doctest::Approx(2.5));
    const auto big = smooth_lattice(lat, 11);
    CHECK(big.warning);
    CHECK(big.lattice.size() == 0);
    CHECK_THROWS_AS(smooth_lattice(lat, 0), ParameterError);
}

TEST_CASE("level slopes: both forms and finite differences") {
    auto p = ModelParams::symmetric(1, 1, 1.1, 0.4, 8);
    const double h = 1e-4;
    const std::size_t k = 60;
    const auto es = converged_spectrum(p, k, 1e-11, Parity::even);
    const auto hi = converged_spectrum(p.with_lambda(p.lambda + h), k, 1e-11, Parity::even);
    const auto lo = converged_spectrum(p.with_lambda(p.lambda - h), k, 1e-11, Parity::even);
    const auto slopes = level_slope(es);
    int checked = 0;
    for (std::size_t i = 1; i + 1 < k; ++i) {
        const auto& s = slopes[i];
        CHECK(std::abs(s.hellmann_feynman - s.energy_form) <= 1e-8 * std::abs(s.hellmann_feynman) + 1e-10);
        const double gap = std::min(es.energies[i] - es.energies[i - 1], es.energies[i + 1] - es.energies[i]);
        if (gap < 0.15) continue;  // O(h^2) curvature error grows as 1/gap^2
        CHECK(std::abs((hi.energies[i] - lo.energies[i]) / (2 * h) - s.hellmann_feynman) < 1e-4);
        ++checked;
    }
    CHECK(checked > 20);

    const auto zero = converged_spectrum(p.with_lambda(0.0), 10, 1e-11, Parity::even);
    for (const auto& s : level_slope(zero)) CHECK(std::isnan(s.energy_form));
}

TEST_CASE("smoothed density") {
    std::vector<double> grid;
    for (int i = -400; i <= 400; ++i) grid.push_back(0.01 * i);
    const auto one = smoothed_density({0.3}, 0.2, grid);
    double area = 0.0;
    for (double r : one.rho) area += 0.01 * r;
    CHECK(area == doctest::Approx(1.0).epsilon(1e-9));
    std::size_t peak = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (one.rho[i] > one.rho[peak]) peak = i;
    CHECK(grid[peak] == doctest::Approx(0.3));
    CHECK(one.rho[peak] == doctest::Approx(1.0 / (0.2 * std::sqrt(2 * std::numbers::pi))).epsilon(1e-12));
    // analytic derivative against a difference quotient
    for (std::size_t i = 1; i + 1 < grid.size(); i += 37)
        CHECK(one.drho_de[i] == doctest::Approx((one.rho[i + 1] - one.rho[i - 1]) / 0.02).epsilon(1e-3));

    std::vector<double> ladder;
    for (int i = -5000; i <= 5000; ++i) ladder.push_back(0.01 * i);
    const auto flat = smoothed_density(ladder, 0.5, {-2.0, 0.0, 1.7});
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(flat.rho[i] == doctest::Approx(100.0).epsilon(1e-6));
        CHECK(std::abs(flat.drho_de[i]) < 1e-6 * 100.0);
    }
    CHECK_THROWS_AS(smoothed_density(ladder, 0.0, grid), ParameterError);
}

TEST_CASE("line, hinge and segment fits") {
    std::vector<double> x, y;
    for (int i = 0; i < 200; ++i) {
        x.push_back(0.05 * i);
        y.push_back(x.back() < 4.0 ? 1.0 + 2.0 * x.back() : 9.0 - 0.5 * (x.back() - 4.0));
    }
    const auto line = fit_line(std::vector<double>(x.begin(), x.begin() + 50), std::vector<double>(y.begin(), y.begin() + 50));
    CHECK(line.slope == doctest::Approx(2.0));
    CHECK(line.intercept == doctest::Approx(1.0));
    CHECK(line.sse < 1e-20);
    std::vector<double> cand;
    for (int i = 10; i < 190; ++i) cand.push_back(0.05 * i + 0.01);
    const auto hinge = hinge_fit(x, y, cand);
    CHECK(std::abs(hinge.breakpoint - 4.0) < 0.06);
    CHECK(hinge.slope_left == doctest::Approx(2.0).epsilon(1e-2));
    CHECK(hinge.slope_right == doctest::Approx(-0.5).epsilon(1e-2));

    PeresLattice lat;
    lat.energy = x;
    lat.value = y;
    const auto segs = segment_fits(lat, {4.0});
    REQUIRE(segs.size() == 2);
    CHECK(segs[0].slope == doctest::Approx(2.0));
    CHECK(segs[1].slope == doctest::Approx(-0.5));
    CHECK_THROWS_AS(fit_line({1.0, 1.0}, {0.0, 1.0}), ParameterError);
}
