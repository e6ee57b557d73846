// density.hpp: level-density curve shared by quantum smoothing and phase-space quadrature

#pragma once

#include <optional>
#include <vector>

namespace dicke {

struct DensityCurve {
    std::vector<double> energy;
    std::vector<double> rho;
    std::vector<double> drho_de;
    std::optional<double> sigma;  // Gaussian width; empty for semiclassical curves
};

/// Centered differences inside, one-sided at the ends. Needs >= 2 points.
std::vector<double> centered_derivative(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dicke
