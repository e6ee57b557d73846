#include <cmath>

#include "doctest.h"
#include "dicke/errors.hpp"
#include "dicke/thermo.hpp"

using namespace dicke;

namespace {

ModelParams at(double lambda, double delta) { return ModelParams::symmetric(1, 1, lambda, delta, 40); }

Eigen::Matrix2d numeric_hessian(const ModelParams& p, const OrderParameter& a, double T) {
    const double h = 1e-4;
    auto f = [&](double u, double v) { return free_energy(p, {a.re + u, a.im + v}, T); };
    Eigen::Matrix2d H;
    H(0, 0) = (f(h, 0) - 2 * f(0, 0) + f(-h, 0)) / (h * h);
    H(1, 1) = (f(0, h) - 2 * f(0, 0) + f(0, -h)) / (h * h);
    H(0, 1) = H(1, 0) = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
    return H;
}

bool has_off_origin_minimum(const ModelParams& p, double T) {
    for (const auto& eq : stationary_alpha(p, T))
        if ((eq.alpha.re != 0.0 || eq.alpha.im != 0.0) && eq.type == StationaryType::minimum) return true;
    return false;
}

}  // namespace

TEST_CASE("free energy") {
    const auto p = at(2.5, 0.3);
    for (double T : {0.1, 1.0, 7.0})
        CHECK(free_energy(p, {0, 0}, T) == doctest::Approx(-T * std::log(2 * std::cosh(0.5 / T))).epsilon(1e-14));
    CHECK(free_energy(p, {0, 0}, 1e-4) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::isfinite(free_energy(p, {3, 2}, 1e-6)));
    CHECK_THROWS_AS(free_energy(p, {0, 0}, 0.0), ParameterError);
}

TEST_CASE("analytic derivatives against finite differences") {
    for (double delta : {0.0, 0.3, 1.0})
        for (double T : {0.2, 1.5})
            for (auto a : {OrderParameter{0.3, -0.7}, OrderParameter{0, 0}, OrderParameter{-1.2, 0.1}}) {
                const auto p = at(1.7, delta);
                const double h = 1e-6;
                const Eigen::Vector2d g = free_energy_gradient(p, a, T);
                CHECK(g[0] == doctest::Approx((free_energy(p, {a.re + h, a.im}, T) - free_energy(p, {a.re - h, a.im}, T)) / (2 * h)).epsilon(1e-7));
                CHECK(g[1] == doctest::Approx((free_energy(p, {a.re, a.im + h}, T) - free_energy(p, {a.re, a.im - h}, T)) / (2 * h)).epsilon(1e-7));
                const Eigen::Matrix2d H = free_energy_hessian(p, a, T);
                CHECK((H - numeric_hessian(p, a, T)).cwiseAbs().maxCoeff() < 1e-5 * (1 + H.norm()));
            }
}

TEST_CASE("stationary points") {
    const auto below = stationary_alpha(at(0.5, 0.3), 0.1);
    REQUIRE(below.size() == 1);
    CHECK(below[0].type == StationaryType::minimum);

    const auto p = at(2.5, 0.3);
    const auto eqs = stationary_alpha(p, 0.1);
    REQUIRE(eqs.size() == 5);
    double re = 0.0, im = 0.0;
    for (const auto& eq : eqs) {
        CHECK(free_energy_gradient(p, eq.alpha, 0.1).norm() < 1e-9);
        if (eq.alpha.im == 0.0 && eq.alpha.re != 0.0) {
            CHECK(eq.type == StationaryType::minimum);
            re = std::abs(eq.alpha.re);
        }
        if (eq.alpha.im != 0.0) {
            CHECK(eq.type == StationaryType::saddle);
            im = std::abs(eq.alpha.im);
        }
    }
    CHECK(eqs[0].type == StationaryType::maximum);
    // zero-T limit: |alpha| -> lambda (1 +- delta) / 2 omega on each axis
    CHECK(im < re);
    CHECK(re == doctest::Approx(std::sqrt(std::pow(2.5 * 2.5 * 1.69 / 2, 2) - 0.25) / (2.5 * 1.3)).epsilon(1e-9));
    CHECK(re > 0.0);

    const auto ring = stationary_alpha(at(2.0, 0.0), 0.3);
    REQUIRE(ring.size() == 2);
    CHECK(ring[1].ring);
    CHECK(ring[1].type == StationaryType::marginal);
    CHECK(classify_landscape(ring) == ThermoPhase::TC);
}

TEST_CASE("critical temperatures") {
    const auto p = at(2.5, 0.3);
    const auto ct = critical_temperatures(p, 2.5);
    CHECK(*ct.t_c == doctest::Approx(1.0 / (2 * std::atanh(0.0946745562130177))).epsilon(1e-14));
    CHECK(*ct.t_c == doctest::Approx(5.2654).epsilon(1e-4));
    // the off-origin minimum disappears at T_c
    double lo = 1.0, hi = 10.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (has_off_origin_minimum(p, mid) ? lo : hi) = mid;
    }
    CHECK(std::abs(0.5 * (lo + hi) - *ct.t_c) < 1e-6);

    const double lc = thermal_lambda_c(p);
    CHECK(*critical_temperatures(p, lc).t_c == 0.0);
    CHECK_FALSE(critical_temperatures(p, 0.99 * lc).t_c.has_value());
    CHECK(*critical_temperatures(p, 1e4).t_c > 1e6);
    CHECK_FALSE(critical_temperatures(at(3.0, 1.0), 3.0).t_0.has_value());
    const auto tc0 = critical_temperatures(at(2.0, 0.0), 2.0);
    CHECK(*tc0.t_0 == *tc0.t_c);
}

TEST_CASE("thermal phases") {
    const auto p = at(1.0, 0.3);
    for (double T : {0.01, 1.0, 20.0}) CHECK(thermal_phase(p, 0.7, T).phase == ThermoPhase::N);
    CHECK(thermal_phase(p, 2.5, 0.1).phase == ThermoPhase::TC);
    CHECK(thermal_phase(p, 2.5, 3.0).phase == ThermoPhase::D);
    CHECK(thermal_phase(p, 2.5, 6.0).phase == ThermoPhase::N);
    for (double lam : {1.0, 2.0, 5.0})
        for (double T : {0.01, 0.5, 3.0}) CHECK(thermal_phase(at(1.0, 1.0), lam, T).phase != ThermoPhase::TC);
    for (double lam : {1.5, 3.0})
        for (double T : {0.05, 0.5, 2.0}) {
            const auto pt = thermal_phase(at(1.0, 0.0), lam, T);
            CHECK(pt.phase != ThermoPhase::D);
            CHECK(classify_landscape(pt.equilibria) == pt.phase);
        }
}
