// classical.hpp: classical limit: Hamiltonian, orbits, chaos measure, semiclassical densities

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dicke/density.hpp"
#include "dicke/model.hpp"

namespace dicke {

/// (phi, jz) and (x, p) are canonical pairs.
struct PhasePoint {
    double phi = 0.0;
    double jz = 0.0;
    double x = 0.0;
    double p = 0.0;
};

double h_classical(const ModelParams& params, const PhasePoint& pt);

/// Atomic landscape after integrating out the field quadratically.
double h_reduced(const ModelParams& params, double phi, double jz);

/// Hamilton's equations (dphi, djz, dx, dp). Throws NumericalError when
/// |jz| >= j - eps_pole, where the phi equation is singular.
std::array<double, 4> eom(const ModelParams& params, const PhasePoint& pt, double eps_pole = -1.0);

/// Pole-free state: Cartesian quasispin vector plus field quadratures.
struct CartesianState {
    double jx = 0.0, jy = 0.0, jz = 0.0, x = 0.0, p = 0.0;
};

CartesianState to_cartesian(const ModelParams& params, const PhasePoint& pt);
double h_cartesian(const ModelParams& params, const CartesianState& s);
CartesianState eom_cartesian(const ModelParams& params, const CartesianState& s);

/// Classical fourth-order Runge-Kutta step.
CartesianState rk4_step(const ModelParams& params, const CartesianState& s, double dt);

struct LyapunovControl {
    double total_time = 2000.0;
    double renorm_interval = 1.0;
    double dt = 5e-4;  // RK4 energy drift stays below 1e-8 over 1000 time units at N = 40
    double d0 = 1e-8;
    // Regular iff ln(d_T / d0) - ln(T / renorm_interval) < threshold: separation
    // beyond the linear growth of shear between neighbouring tori.
    double threshold = 4.605170185988092;  // ln 100
};

/// True when the exponent marks a regular orbit under ctl.
bool is_regular(double lyapunov, const LyapunovControl& ctl);

/// Two-trajectory estimate of the largest Lyapunov exponent.
double lyapunov_exponent(const ModelParams& params, const CartesianState& start,
                         const CartesianState& offset_direction, const LyapunovControl& ctl);

struct RegularFraction {
    double f_reg = 0.0;
    double std_error = 0.0;  // binomial
    std::size_t n_samples = 0;
    double mean_attempts = 0.0;  // rejection draws per accepted sample
};

struct SamplingControl {
    double shell_width = -1.0;  // default 1e-3 omega0 j
    std::size_t max_attempts_per_sample = 50'000'000;
};

/// Microcanonical fraction of regular orbits at energy E.
RegularFraction regular_fraction(const ModelParams& params, double energy, std::size_t n_samples,
                                 std::uint64_t seed, const LyapunovControl& lyap = {},
                                 const SamplingControl& sampling = {}, unsigned threads = 1);

/// Area {(phi, jz) : h_reduced <= E}.
double flooded_area(const ModelParams& params, double energy, int n_phi = 2048);

/// rho_cl = area / (2 pi omega) on an ascending grid; derivative by centered differences.
DensityCurve semiclassical_density(const ModelParams& params, const std::vector<double>& energies,
                                   int n_phi = 2048);

enum class StationaryKind { minimum, saddle, maximum, degenerate };

std::string_view to_string(StationaryKind k);

struct StationaryPoint {
    double phi = 0.0;  // meaningless at the poles
    double jz = 0.0;
    double energy = 0.0;
    std::optional<int> index;  // Morse index from the numeric Hessian; empty when degenerate
    StationaryKind kind = StationaryKind::degenerate;
    double gradient_norm = 0.0;
};

/// Analytic catalogue of the stationary points of h_reduced, each confirmed
/// by a numeric Hessian in a regular chart (polar charts at the poles).
std::vector<StationaryPoint> stationary_points(const ModelParams& params);

/// Fixed-M level density of the delta = 0 model from the f = 1 phase space.
DensityCurve single_m_density(const ModelParams& params, int M, const std::vector<double>& energies,
                              int n_action = 4096);

}  // namespace dicke
