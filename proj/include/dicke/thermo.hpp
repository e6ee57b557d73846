// thermo.hpp: all-j mean-field free energy over the scaled coherent amplitude

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "dicke/model.hpp"

namespace dicke {

struct OrderParameter {
    double re = 0.0;  // alpha'
    double im = 0.0;  // alpha''
};

enum class StationaryType { minimum, saddle, maximum, marginal };

std::string_view to_string(StationaryType t);

struct Equilibrium {
    OrderParameter alpha;
    StationaryType type = StationaryType::minimum;
    double free_energy = 0.0;  // F/N
    bool ring = false;         // delta = 0: alpha is one radial representative of |alpha| = const
};

/// Bare couplings sqrt(omega omega0) / (1 +- delta) of the all-j model.
double thermal_lambda_c(const ModelParams& params);
double thermal_lambda_0(const ModelParams& params);

/// F/N at temperature T for the coupling in params.
double free_energy(const ModelParams& params, const OrderParameter& alpha, double T);

/// Gradient and Hessian of F/N in (alpha', alpha'').
Eigen::Vector2d free_energy_gradient(const ModelParams& params, const OrderParameter& alpha,
                                     double T);
Eigen::Matrix2d free_energy_hessian(const ModelParams& params, const OrderParameter& alpha,
                                    double T);

/// Origin plus every off-origin stationary point on the two axes.
std::vector<Equilibrium> stationary_alpha(const ModelParams& params, double T);

struct CriticalTemperatures {
    std::optional<double> t_c;
    std::optional<double> t_0;
};

CriticalTemperatures critical_temperatures(const ModelParams& params, double lambda);

enum class ThermoPhase { N, TC, D };

std::string_view to_string(ThermoPhase p);

struct ThermoPhasePoint {
    double lambda = 0.0;
    double T = 0.0;
    ThermoPhase phase = ThermoPhase::N;
    std::vector<Equilibrium> equilibria;
};

/// Phase from the closed-form boundaries; equilibria from stationary_alpha.
ThermoPhasePoint thermal_phase(const ModelParams& params, double lambda, double T);

/// Phase read off the landscape alone: off-origin minima and saddles.
ThermoPhase classify_landscape(const std::vector<Equilibrium>& equilibria);

}  // namespace dicke
