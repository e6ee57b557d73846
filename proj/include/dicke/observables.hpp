// observables.hpp: Peres lattices, smoothed lattices, level slopes and smoothed densities

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dicke/density.hpp"
#include "dicke/spectra.hpp"

namespace dicke {

enum class Observable { Jz, n, Hint };

std::string_view to_string(Observable o);
Observable parse_observable(std::string_view s);

struct PeresLattice {
    std::vector<double> energy;  // ascending
    std::vector<double> value;
    Observable observable = Observable::Jz;
    ModelParams params;

    std::size_t size() const { return energy.size(); }
};

PeresLattice peres_lattice(const EigenSystem& eigs, Observable observable);

struct SmoothedLattice {
    PeresLattice lattice;
    bool warning = false;  // window longer than the lattice; lattice is empty
};

/// Sliding mean of window consecutive points, applied to energies and values.
SmoothedLattice smooth_lattice(const PeresLattice& lattice, int window = 20);

struct LevelSlope {
    double hellmann_feynman = 0.0;  // <H_int> / sqrt N
    double energy_form = 0.0;       // (E - omega0 <Jz> - omega <n>) / lambda; NaN at lambda ~ 0
};

/// dE_i/d lambda from both forms. Throws NumericalError when they disagree by
/// more than 1e-8 relative.
std::vector<LevelSlope> level_slope(const EigenSystem& eigs);

/// Sum of unit-area Gaussians of width sigma with its analytic derivative.
DensityCurve smoothed_density(const std::vector<double>& levels, double sigma,
                              const std::vector<double>& grid);

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double sse = 0.0;
    std::size_t count = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Continuous two-segment fit y = a + b x + c max(0, x - x_b); returns the x_b
/// among the candidates with the smallest residual.
struct HingeFit {
    double breakpoint = 0.0;
    double slope_left = 0.0;
    double slope_right = 0.0;
    double sse = 0.0;
};

HingeFit hinge_fit(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& candidates);

/// Straight-line fits of the lattice between consecutive cuts; windows never
/// straddle a cut.
std::vector<LineFit> segment_fits(const PeresLattice& lattice, const std::vector<double>& cuts);

}  // namespace dicke
