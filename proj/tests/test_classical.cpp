#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dicke/classical.hpp"
#include "dicke/criticality.hpp"
#include "dicke/errors.hpp"
#include "dicke/spectra.hpp"

using namespace dicke;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams at(double lambda, double delta, int n = 40) { return ModelParams::symmetric(1, 1, lambda, delta, n); }

double grid_minimum(const ModelParams& p) {
    const double j = p.j();
    double best = 1e300, bp = 0, bj = 0;
    for (int a = 0; a < 400; ++a)
        for (int b = 0; b <= 2000; ++b) {
            const double phi = 2 * kPi * a / 400, jz = -j + 2 * j * b / 2000;
            const double h = h_reduced(p, phi, jz);
            if (h < best) best = h, bp = phi, bj = jz;
        }
    // golden-section refinement along jz
    double lo = std::max(-j, bj - 2 * j / 2000), hi = std::min(j, bj + 2 * j / 2000);
    for (int it = 0; it < 100; ++it) {
        const double m1 = lo + 0.382 * (hi - lo), m2 = lo + 0.618 * (hi - lo);
        (h_reduced(p, bp, m1) < h_reduced(p, bp, m2) ? hi : lo) = (h_reduced(p, bp, m1) < h_reduced(p, bp, m2) ? m2 : m1);
    }
    return std::min(best, h_reduced(p, bp, 0.5 * (lo + hi)));
}

}  // namespace

TEST_CASE("classical Hamiltonians") {
    auto free = at(0, 0.3);
    CHECK(h_classical(free, {0.4, -20, 0, 0}) == -20.0);
    auto p = at(2.1, 0.6);
    CHECK(h_classical(p, {1.1, 20, 0.7, -0.3}) == doctest::Approx(0.5 * (0.49 + 0.09) + 20));
    CHECK(h_classical(p, {1.1, -20, 0.7, -0.3}) == doctest::Approx(0.5 * (0.49 + 0.09) - 20));
    for (double phi : {0.0, 1.0, 2.5}) {
        CHECK(h_reduced(at(2.1, 0.0), phi, 3.0) == doctest::Approx(h_reduced(at(2.1, 0.0), 0.0, 3.0)));
        CHECK(h_reduced(p, 0.0, -20.0) == -20.0);
    }
    // h_reduced is the minimum over the field quadratures
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 50; ++i) {
        const double phi = kPi * u(rng), jz = 20 * u(rng);
        const double hr = h_reduced(p, phi, jz);
        for (int t = 0; t < 20; ++t) CHECK(h_classical(p, {phi, jz, 8 * u(rng), 8 * u(rng)}) >= hr - 1e-12);
        const double s = 2.1 * std::sqrt(2.0 / 40) * std::sqrt(400 - jz * jz);
        const double x = -s * 1.6 * std::cos(phi), pp = s * 0.4 * std::sin(phi);
        CHECK(h_classical(p, {phi, jz, x, pp}) == doctest::Approx(hr).epsilon(1e-12));
    }
    CHECK_THROWS_AS(h_reduced(p, 0.0, 21.0), ParameterError);
}

TEST_CASE("landscape minimum is the ground energy") {
    for (double delta : {0.0, 0.3, 1.0})
        for (double lam : {0.5, 1.0, 2.5}) {
            const auto p = at(lam, delta);
            CHECK(grid_minimum(p) == doctest::Approx(ground_energy(p, lam)).epsilon(1e-9));
        }
}

TEST_CASE("equations of motion") {
    const auto free = at(0, 0.3);
    const auto d = eom(free, {0.3, 2.0, 1.5, -0.5});
    CHECK(d[0] == doctest::Approx(1.0));
    CHECK(d[1] == 0.0);
    CHECK(d[2] == doctest::Approx(-0.5));
    CHECK(d[3] == doctest::Approx(-1.5));

    const auto p = at(1.9, 0.4);
    const PhasePoint pt{0.8, -7.0, 1.3, 0.6};
    const auto e = eom(p, pt);
    const double h = 1e-6;
    auto H = [&](double a, double b, double c, double dd) {
        return h_classical(p, {pt.phi + a, pt.jz + b, pt.x + c, pt.p + dd});
    };
    CHECK(e[0] == doctest::Approx((H(0, h, 0, 0) - H(0, -h, 0, 0)) / (2 * h)).epsilon(1e-7));
    CHECK(e[1] == doctest::Approx(-(H(h, 0, 0, 0) - H(-h, 0, 0, 0)) / (2 * h)).epsilon(1e-7));
    CHECK(e[2] == doctest::Approx((H(0, 0, 0, h) - H(0, 0, 0, -h)) / (2 * h)).epsilon(1e-7));
    CHECK(e[3] == doctest::Approx(-(H(0, 0, h, 0) - H(0, 0, -h, 0)) / (2 * h)).epsilon(1e-7));
    CHECK_THROWS_AS(eom(p, {0, 20, 0, 0}), NumericalError);

    // Cartesian flow is the canonical one in other coordinates
    const auto c = to_cartesian(p, pt);
    const auto dc = eom_cartesian(p, c);
    const double r = std::sqrt(400 - pt.jz * pt.jz);
    CHECK(h_cartesian(p, c) == doctest::Approx(h_classical(p, pt)).epsilon(1e-14));
    CHECK(dc.jz == doctest::Approx(e[1]).epsilon(1e-12));
    CHECK(dc.jx == doctest::Approx(-pt.jz / r * e[1] * std::cos(pt.phi) - r * std::sin(pt.phi) * e[0]).epsilon(1e-12));
    CHECK(dc.jy == doctest::Approx(-pt.jz / r * e[1] * std::sin(pt.phi) + r * std::cos(pt.phi) * e[0]).epsilon(1e-12));
    CHECK(dc.x == doctest::Approx(e[2]).epsilon(1e-12));
    CHECK(dc.p == doctest::Approx(e[3]).epsilon(1e-12));
}

TEST_CASE("orbit invariants over T = 1000") {
    for (double delta : {0.0, 0.3}) {
        const auto p = at(2.5, delta);
        auto s = to_cartesian(p, {0.7, -3.0, 1.0, 2.0});
        const double h0 = h_cartesian(p, s);
        const double m0 = s.jz + 0.5 * (s.x * s.x + s.p * s.p);
        const double casimir = s.jx * s.jx + s.jy * s.jy + s.jz * s.jz;
        double drift = 0.0, mdrift = 0.0;
        const double dt = LyapunovControl{}.dt;
        const int steps = static_cast<int>(std::lround(1000.0 / dt));
        for (int i = 0; i < steps; ++i) {
            s = rk4_step(p, s, dt);
            drift = std::max(drift, std::abs(h_cartesian(p, s) - h0));
            mdrift = std::max(mdrift, std::abs(s.jz + 0.5 * (s.x * s.x + s.p * s.p) - m0));
        }
        CHECK(drift < 1e-8);
        CHECK(std::abs(s.jx * s.jx + s.jy * s.jy + s.jz * s.jz - casimir) < 1e-6);
        if (delta == 0.0) CHECK(mdrift < 1e-8);
    }
}

TEST_CASE("regular fraction") {
    LyapunovControl ctl;
    ctl.total_time = 150;
    const auto free = regular_fraction(at(0.0, 0.3, 10), 0.0, 100, 11, ctl);
    CHECK(free.f_reg == 1.0);
    CHECK(free.n_samples == 100);
    const auto tc = regular_fraction(at(2.0, 0.0, 10), -1.0, 100, 12, ctl);
    CHECK(tc.f_reg >= 1.0 - 2 * std::max(tc.std_error, 0.01));
    const auto a = regular_fraction(at(2.5, 0.3, 10), 0.0, 100, 99, ctl, {}, 1);
    const auto b = regular_fraction(at(2.5, 0.3, 10), 0.0, 100, 99, ctl, {}, 3);
    CHECK(a.f_reg == b.f_reg);
    CHECK(a.mean_attempts == b.mean_attempts);
    CHECK(a.f_reg < 0.9);  // chaos present; the quantitative check runs at N = 40, T = 2000
    CHECK_THROWS_AS(regular_fraction(at(2.5, 0.3, 10), 0.0, 99, 1, ctl), ParameterError);
    CHECK_THROWS_AS(regular_fraction(at(2.5, 0.3, 10), -100.0, 100, 1, ctl), ParameterError);
}

TEST_CASE("flooded area against a cell count") {
    const auto p = at(2.5, 0.3, 40);
    for (double e : {-30.0, -20.0, -5.0, 12.0}) {
        const int nphi = 600, njz = 3000;
        double count = 0;
        for (int a = 0; a < nphi; ++a)
            for (int b = 0; b < njz; ++b)
                count += h_reduced(p, 2 * kPi * (a + 0.5) / nphi, -20 + 40 * (b + 0.5) / njz) <= e;
        const double brute = count * (2 * kPi / nphi) * (40.0 / njz);
        CHECK(flooded_area(p, e) == doctest::Approx(brute).epsilon(2e-3));
    }
    CHECK(flooded_area(p, -200.0) == 0.0);
    CHECK(flooded_area(p, 20.0) == doctest::Approx(2 * kPi * 40));

    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(-60 + 2.0 * i);
    const auto d = semiclassical_density(p, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(d.rho[i] == doctest::Approx(flooded_area(p, grid[i]) / (2 * kPi)).epsilon(1e-12));
        if (grid[i] >= 20) CHECK(d.rho[i] == 40.0);
        if (grid[i] < ground_energy(p, 2.5)) CHECK(d.rho[i] == 0.0);
    }
    CHECK_THROWS_AS(semiclassical_density(p, {1.0}), ParameterError);
}

TEST_CASE("stationary point catalogue") {
    const auto below = stationary_points(at(0.5, 0.3));
    int minima = 0;
    for (const auto& s : below) {
        CHECK(s.gradient_norm < 1e-8);
        if (s.kind == StationaryKind::minimum) {
            ++minima;
            CHECK(s.jz == -20.0);
            CHECK(s.energy == -20.0);
        }
        if (s.kind == StationaryKind::maximum) CHECK(s.energy == 20.0);
    }
    CHECK(minima == 1);

    const auto p = at(2.5, 0.3);
    const auto e = esqpt_energies(p, 2.5);
    bool saddle = false, top = false;
    for (const auto& s : stationary_points(p)) {
        CHECK(s.gradient_norm < 1e-8);
        if (s.kind == StationaryKind::saddle && s.jz > -20.0) {
            CHECK(s.energy == doctest::Approx(*e.e_c1).epsilon(1e-12));
            CHECK(*s.index == 1);
            saddle = true;
        }
        if (s.kind == StationaryKind::minimum) CHECK(s.energy == doctest::Approx(ground_energy(p, 2.5)).epsilon(1e-12));
        if (s.kind == StationaryKind::maximum) {
            // above lambda_0 the lower pole turns into a maximum at E_c2
            CHECK(std::abs(s.jz) == 20.0);
            CHECK(s.energy == s.jz);
            top = top || s.jz == 20.0;
        }
    }
    CHECK(saddle);
    CHECK(top);
}

TEST_CASE("fixed-M semiclassical density") {
    auto p = ModelParams::symmetric(2, 1, 0, 0, 20);
    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i) grid.push_back(10 + 0.1 * i);  // ladder spans [10, 30]
    const auto flat = single_m_density(p, 20, grid, 40000);
    // M = 2j free ladder: 2j levels per unit of 2j (omega - omega0)
    for (std::size_t i = 20; i < 180; ++i) CHECK(flat.rho[i] == doctest::Approx(1.0).epsilon(1e-2));

    // counting function against tridiagonal eigenvalues at N = 1000
    auto q = ModelParams::symmetric(2, 1, 1.0, 0, 1000);
    auto h = build_single_m_hamiltonian(q, 1000);
    const auto ev = diagonalize(h, h.dim(), false).energies;
    std::vector<double> eg;
    for (int i = 0; i <= 400; ++i) eg.push_back(ev[0] - 5 + (ev[ev.size() - 1] - ev[0] + 10) * i / 400.0);
    const auto d = single_m_density(q, 1000, eg, 8192);
    double cum = 0.0;
    for (std::size_t i = 1; i < eg.size(); ++i) {
        cum += 0.5 * (d.rho[i] + d.rho[i - 1]) * (eg[i] - eg[i - 1]);
        const double count = static_cast<double>((ev.array() <= eg[i]).count());
        CHECK(std::abs(cum - count) < 3.0);
    }
    CHECK_THROWS_AS(single_m_density(at(1, 0.3), 40, grid), UnsupportedError);
}
