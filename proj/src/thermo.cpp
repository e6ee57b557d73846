// thermo.cpp: stationary points of F/N = omega |alpha|^2 - T ln(2 cosh(e/T))

#include "dicke/thermo.hpp"

#include <cmath>
#include <limits>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

constexpr double kMarginal = 1e-9;

void require_temperature(double T) {
    if (!(T > 0.0)) throw ParameterError("temperature must be > 0");
}

struct Couplings {
    double c1;  // lambda^2 (1+delta)^2, real axis
    double c2;  // lambda^2 (1-delta)^2, imaginary axis
};

Couplings couplings(const ModelParams& p) {
    const double l2 = p.lambda * p.lambda;
    return {l2 * (1.0 + p.delta) * (1.0 + p.delta), l2 * (1.0 - p.delta) * (1.0 - p.delta)};
}

double e_alpha(const ModelParams& p, const OrderParameter& a) {
    const auto c = couplings(p);
    return std::sqrt(0.25 * p.omega0 * p.omega0 + c.c1 * a.re * a.re + c.c2 * a.im * a.im);
}

// ln(2 cosh x) without overflow
double log_2cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax));
}

// Root e > omega0/2 of 2 omega e = c tanh(e/T), or none.
std::optional<double> radial_root(const ModelParams& p, double c, double T) {
    const double lo0 = 0.5 * p.omega0;
    auto f = [&](double e) { return 2.0 * p.omega * e - c * std::tanh(e / T); };
    if (!(f(lo0) < 0.0)) return std::nullopt;
    double lo = lo0;
    double hi = c / (2.0 * p.omega);  // f(hi) = c (1 - tanh) > 0
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

StationaryType classify(const Eigen::Matrix2d& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    if (std::abs(ev[0]) < kMarginal || std::abs(ev[1]) < kMarginal) return StationaryType::marginal;
    if (ev[0] > 0.0) return StationaryType::minimum;
    if (ev[1] < 0.0) return StationaryType::maximum;
    return StationaryType::saddle;
}

}  // namespace

std::string_view to_string(StationaryType t) {
    switch (t) {
        case StationaryType::minimum: return "minimum";
        case StationaryType::saddle: return "saddle";
        case StationaryType::maximum: return "maximum";
        case StationaryType::marginal: return "marginal";
    }
    return "?";
}

std::string_view to_string(ThermoPhase p) {
    switch (p) {
        case ThermoPhase::N: return "N";
        case ThermoPhase::TC: return "TC";
        case ThermoPhase::D: return "D";
    }
    return "?";
}

double thermal_lambda_c(const ModelParams& params) {
    return std::sqrt(params.omega * params.omega0) / (1.0 + params.delta);
}

double thermal_lambda_0(const ModelParams& params) {
    if (params.delta == 1.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(params.omega * params.omega0) / (1.0 - params.delta);
}

double free_energy(const ModelParams& params, const OrderParameter& alpha, double T) {
    require_temperature(T);
    const double a2 = alpha.re * alpha.re + alpha.im * alpha.im;
    return params.omega * a2 - T * log_2cosh(e_alpha(params, alpha) / T);
}

Eigen::Vector2d free_energy_gradient(const ModelParams& params, const OrderParameter& alpha,
                                     double T) {
    require_temperature(T);
    const auto c = couplings(params);
    const double e = e_alpha(params, alpha);
    const double g = std::tanh(e / T) / e;
    return {2.0 * params.omega * alpha.re - c.c1 * alpha.re * g,
            2.0 * params.omega * alpha.im - c.c2 * alpha.im * g};
}

Eigen::Matrix2d free_energy_hessian(const ModelParams& params, const OrderParameter& alpha,
                                    double T) {
    require_temperature(T);
    const auto c = couplings(params);
    const double e = e_alpha(params, alpha);
    const double th = std::tanh(e / T);
    const double g = th / e;
    const double dg = (1.0 - th * th) / (T * e) - th / (e * e);  // d g / d e
    const double u = c.c1 * alpha.re;  // e de/du
    const double v = c.c2 * alpha.im;
    Eigen::Matrix2d h;
    h(0, 0) = 2.0 * params.omega - c.c1 * g - u * u * dg / e;
    h(1, 1) = 2.0 * params.omega - c.c2 * g - v * v * dg / e;
    h(0, 1) = h(1, 0) = -u * v * dg / e;
    return h;
}

std::vector<Equilibrium> stationary_alpha(const ModelParams& params, double T) {
    params.validate();
    require_temperature(T);
    const auto c = couplings(params);
    std::vector<Equilibrium> out;
    auto add = [&](OrderParameter a, bool ring) {
        Equilibrium eq;
        eq.alpha = a;
        eq.ring = ring;
        eq.free_energy = free_energy(params, a, T);
        eq.type = classify(free_energy_hessian(params, a, T));
        out.push_back(eq);
    };
    add({0.0, 0.0}, false);
    const double q = 0.25 * params.omega0 * params.omega0;
    const auto re = radial_root(params, c.c1, T);
    if (params.delta == 0.0) {
        if (re) add({std::sqrt(std::max(0.0, *re * *re - q) / c.c1), 0.0}, true);
        return out;
    }
    if (re) {
        const double a = std::sqrt(std::max(0.0, *re * *re - q) / c.c1);
        add({a, 0.0}, false);
        add({-a, 0.0}, false);
    }
    if (c.c2 > 0.0) {
        if (const auto im = radial_root(params, c.c2, T)) {
            const double a = std::sqrt(std::max(0.0, *im * *im - q) / c.c2);
            add({0.0, a}, false);
            add({0.0, -a}, false);
        }
    }
    return out;
}

CriticalTemperatures critical_temperatures(const ModelParams& params, double lambda) {
    params.validate();
    if (!(lambda > 0.0)) throw ParameterError("lambda must be > 0");
    CriticalTemperatures ct;
    auto temperature = [&](double lx) { return params.omega0 / (2.0 * std::atanh(lx * lx / (lambda * lambda))); };
    const double lc = thermal_lambda_c(params);
    const double l0 = thermal_lambda_0(params);
    if (lambda >= lc) ct.t_c = temperature(lc);
    if (lambda >= l0) ct.t_0 = temperature(l0);
    return ct;
}

ThermoPhasePoint thermal_phase(const ModelParams& params, double lambda, double T) {
    if (!(lambda >= 0.0)) throw ParameterError("lambda must be >= 0");
    require_temperature(T);
    const ModelParams p = params.with_lambda(lambda);
    ThermoPhasePoint pt;
    pt.lambda = lambda;
    pt.T = T;
    pt.equilibria = stationary_alpha(p, T);
    if (lambda <= thermal_lambda_c(p)) return pt;  // N
    const auto ct = critical_temperatures(p, lambda);
    if (T >= *ct.t_c) return pt;
    pt.phase = ct.t_0 && T < *ct.t_0 ? ThermoPhase::TC : ThermoPhase::D;
    return pt;
}

ThermoPhase classify_landscape(const std::vector<Equilibrium>& equilibria) {
    bool minimum = false;
    bool saddle = false;
    bool ring = false;
    for (const auto& eq : equilibria) {
        const bool origin = eq.alpha.re == 0.0 && eq.alpha.im == 0.0;
        if (origin) continue;
        ring = ring || eq.ring;
        minimum = minimum || eq.type == StationaryType::minimum || eq.ring;
        saddle = saddle || eq.type == StationaryType::saddle;
    }
    if (!minimum) return ThermoPhase::N;
    return saddle || ring ? ThermoPhase::TC : ThermoPhase::D;
}

}  // namespace dicke
