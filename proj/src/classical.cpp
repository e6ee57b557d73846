// classical.cpp: phase-space dynamics and quadratures of the classical Hamiltonian

#include "dicke/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dicke/criticality.hpp"
#include "dicke/errors.hpp"
#include "dicke/parallel.hpp"

namespace dicke {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double coupling(const ModelParams& p) { return p.lambda * std::sqrt(2.0 / p.n_atoms); }

// lambda^2 / (omega N) g(phi), the jz^2 coefficient of h_reduced
double landscape_a(const ModelParams& p, double phi) {
    const double g = 1.0 + 2.0 * p.delta * std::cos(2.0 * phi) + p.delta * p.delta;
    return p.lambda * p.lambda * g / (p.omega * p.n_atoms);
}

}  // namespace

std::vector<double> centered_derivative(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw ParameterError("derivative needs >= 2 matching points");
    std::vector<double> d(n);
    d[0] = (y[1] - y[0]) / (x[1] - x[0]);
    d[n - 1] = (y[n - 1] - y[n - 2]) / (x[n - 1] - x[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1]);
    return d;
}

double h_classical(const ModelParams& params, const PhasePoint& pt) {
    const double j = params.j();
    if (std::abs(pt.jz) > j) throw ParameterError("|jz| exceeds j");
    const double s = coupling(params) * std::sqrt(j * j - pt.jz * pt.jz);
    return 0.5 * params.omega * (pt.p * pt.p + pt.x * pt.x) + params.omega0 * pt.jz +
           s * ((1.0 + params.delta) * pt.x * std::cos(pt.phi) -
                (1.0 - params.delta) * pt.p * std::sin(pt.phi));
}

double h_reduced(const ModelParams& params, double phi, double jz) {
    const double j = params.j();
    if (std::abs(jz) > j) throw ParameterError("|jz| exceeds j");
    return params.omega0 * jz - landscape_a(params, phi) * (j * j - jz * jz);
}

std::array<double, 4> eom(const ModelParams& params, const PhasePoint& pt, double eps_pole) {
    const double j = params.j();
    if (eps_pole < 0.0) eps_pole = 1e-9 * j;
    if (std::abs(pt.jz) >= j - eps_pole) {
        std::ostringstream os;
        os << "phase point within " << eps_pole << " of a pole (jz = " << pt.jz << ")";
        throw NumericalError(os.str(), j - std::abs(pt.jz));
    }
    const double r = std::sqrt(j * j - pt.jz * pt.jz);
    const double c = coupling(params);
    const double cp = std::cos(pt.phi);
    const double sp = std::sin(pt.phi);
    const double a = 1.0 + params.delta;
    const double b = 1.0 - params.delta;
    const double bracket = a * pt.x * cp - b * pt.p * sp;
    return {params.omega0 - c * pt.jz / r * bracket,
            c * r * (a * pt.x * sp + b * pt.p * cp),
            params.omega * pt.p - c * r * b * sp,
            -params.omega * pt.x - c * r * a * cp};
}

CartesianState to_cartesian(const ModelParams& params, const PhasePoint& pt) {
    const double j = params.j();
    const double r = std::sqrt(std::max(0.0, j * j - pt.jz * pt.jz));
    return {r * std::cos(pt.phi), r * std::sin(pt.phi), pt.jz, pt.x, pt.p};
}

double h_cartesian(const ModelParams& params, const CartesianState& s) {
    const double c = coupling(params);
    return 0.5 * params.omega * (s.x * s.x + s.p * s.p) + params.omega0 * s.jz +
           c * ((1.0 + params.delta) * s.x * s.jx - (1.0 - params.delta) * s.p * s.jy);
}

CartesianState eom_cartesian(const ModelParams& params, const CartesianState& s) {
    const double c = coupling(params);
    const double ca = c * (1.0 + params.delta);
    const double cb = c * (1.0 - params.delta);
    // dJ/dt = grad_J H x J
    const double bx = ca * s.x;
    const double by = -cb * s.p;
    const double bz = params.omega0;
    return {by * s.jz - bz * s.jy,
            bz * s.jx - bx * s.jz,
            bx * s.jy - by * s.jx,
            params.omega * s.p - cb * s.jy,
            -params.omega * s.x - ca * s.jx};
}

namespace {

CartesianState axpy(const CartesianState& s, double h, const CartesianState& d) {
    return {s.jx + h * d.jx, s.jy + h * d.jy, s.jz + h * d.jz, s.x + h * d.x, s.p + h * d.p};
}

double distance(const CartesianState& a, const CartesianState& b) {
    const double d[5] = {a.jx - b.jx, a.jy - b.jy, a.jz - b.jz, a.x - b.x, a.p - b.p};
    double s = 0.0;
    for (double v : d) s += v * v;
    return std::sqrt(s);
}

}  // namespace

CartesianState rk4_step(const ModelParams& params, const CartesianState& s, double dt) {
    const auto k1 = eom_cartesian(params, s);
    const auto k2 = eom_cartesian(params, axpy(s, 0.5 * dt, k1));
    const auto k3 = eom_cartesian(params, axpy(s, 0.5 * dt, k2));
    const auto k4 = eom_cartesian(params, axpy(s, dt, k3));
    const double w = dt / 6.0;
    return {s.jx + w * (k1.jx + 2.0 * k2.jx + 2.0 * k3.jx + k4.jx),
            s.jy + w * (k1.jy + 2.0 * k2.jy + 2.0 * k3.jy + k4.jy),
            s.jz + w * (k1.jz + 2.0 * k2.jz + 2.0 * k3.jz + k4.jz),
            s.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            s.p + w * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)};
}

double lyapunov_exponent(const ModelParams& params, const CartesianState& start,
                         const CartesianState& offset_direction, const LyapunovControl& ctl) {
    if (!(ctl.dt > 0.0 && ctl.renorm_interval >= ctl.dt && ctl.total_time >= ctl.renorm_interval &&
          ctl.d0 > 0.0))
        throw ParameterError("invalid Lyapunov control");
    const double dn = distance(offset_direction, CartesianState{});
    if (!(dn > 0.0)) throw ParameterError("offset direction is zero");
    const int steps = static_cast<int>(std::lround(ctl.renorm_interval / ctl.dt));
    const int rounds = static_cast<int>(std::lround(ctl.total_time / ctl.renorm_interval));
    const double dt = ctl.renorm_interval / steps;
    CartesianState ref = start;
    CartesianState shadow = axpy(start, ctl.d0 / dn, offset_direction);
    double log_sum = 0.0;
    for (int r = 0; r < rounds; ++r) {
        for (int s = 0; s < steps; ++s) {
            ref = rk4_step(params, ref, dt);
            shadow = rk4_step(params, shadow, dt);
        }
        const double d = distance(ref, shadow);
        if (!(d > 0.0) || !std::isfinite(d))
            throw NumericalError("trajectory separation degenerated", d);
        log_sum += std::log(d / ctl.d0);
        const double f = ctl.d0 / d;
        shadow = {ref.jx + f * (shadow.jx - ref.jx), ref.jy + f * (shadow.jy - ref.jy),
                  ref.jz + f * (shadow.jz - ref.jz), ref.x + f * (shadow.x - ref.x),
                  ref.p + f * (shadow.p - ref.p)};
    }
    return log_sum / (rounds * ctl.renorm_interval);
}

bool is_regular(double lyapunov, const LyapunovControl& ctl) {
    return lyapunov * ctl.total_time - std::log(ctl.total_time / ctl.renorm_interval) < ctl.threshold;
}

RegularFraction regular_fraction(const ModelParams& params, double energy, std::size_t n_samples,
                                 std::uint64_t seed, const LyapunovControl& lyap,
                                 const SamplingControl& sampling, unsigned threads) {
    params.validate();
    if (n_samples < 100) throw ParameterError("regular fraction needs n_samples >= 100");
    const double j = params.j();
    const double width = sampling.shell_width > 0.0 ? sampling.shell_width : 1e-3 * params.omega0 * j;
    const double h_min = ground_energy(params, params.lambda);
    if (!(energy + width > h_min)) {
        std::ostringstream os;
        os << "energy " << energy << " lies below the classical minimum " << h_min;
        throw ParameterError(os.str());
    }
    // |x - x_shift| <= sqrt(2 (E - h_min) / omega) with |x_shift| <= c (1 +- delta) j / omega
    const double radial = std::sqrt(2.0 * (energy + width - h_min) / params.omega);
    const double c = coupling(params);
    const double box_x = radial + c * (1.0 + params.delta) * j / params.omega;
    const double box_p = radial + c * (1.0 - params.delta) * j / params.omega;

    std::vector<unsigned char> regular(n_samples);
    std::vector<double> attempts(n_samples);
    parallel_for(n_samples, threads, [&](std::size_t i) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        PhasePoint pt;
        std::size_t tries = 0;
        while (true) {
            if (++tries > sampling.max_attempts_per_sample)
                throw NumericalError("energy shell could not be sampled", static_cast<double>(tries));
            pt.phi = kTwoPi * u01(rng);
            pt.jz = j * (2.0 * u01(rng) - 1.0);
            pt.x = box_x * (2.0 * u01(rng) - 1.0);
            pt.p = box_p * (2.0 * u01(rng) - 1.0);
            if (std::abs(h_classical(params, pt) - energy) < width) break;
        }
        attempts[i] = static_cast<double>(tries);
        const CartesianState s = to_cartesian(params, pt);
        CartesianState dir{u01(rng) - 0.5, u01(rng) - 0.5, u01(rng) - 0.5, u01(rng) - 0.5,
                           u01(rng) - 0.5};
        // keep the spin offset tangent to the sphere
        const double jn2 = s.jx * s.jx + s.jy * s.jy + s.jz * s.jz;
        const double proj = (dir.jx * s.jx + dir.jy * s.jy + dir.jz * s.jz) / jn2;
        dir.jx -= proj * s.jx;
        dir.jy -= proj * s.jy;
        dir.jz -= proj * s.jz;
        const double lam = lyapunov_exponent(params, s, dir, lyap);
        regular[i] = is_regular(lam, lyap);
    });
    RegularFraction out;
    out.n_samples = n_samples;
    double reg = 0.0;
    double tries = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        reg += regular[i];
        tries += attempts[i];
    }
    out.f_reg = reg / n_samples;
    out.std_error = std::sqrt(out.f_reg * (1.0 - out.f_reg) / n_samples);
    out.mean_attempts = tries / n_samples;
    return out;
}

double flooded_area(const ModelParams& params, double energy, int n_phi) {
    if (n_phi < 1) throw ParameterError("n_phi must be >= 1");
    const double j = params.j();
    if (energy >= params.omega0 * j) return kTwoPi * 2.0 * j;
    const double dphi = kTwoPi / n_phi;
    double area = 0.0;
    for (int k = 0; k < n_phi; ++k) {
        const double a = landscape_a(params, (k + 0.5) * dphi);
        double lo = -j;
        double hi = j;
        // h(jz) = a jz^2 + omega0 jz - a j^2 <= E
        if (a * j * j < 1e-300) {
            hi = std::min(j, energy / params.omega0);
        } else {
            const double cc = a * j * j + energy;
            const double disc = params.omega0 * params.omega0 + 4.0 * a * cc;
            if (disc < 0.0) continue;
            const double q = params.omega0 + std::sqrt(disc);
            lo = std::max(lo, -q / (2.0 * a));
            hi = std::min(hi, 2.0 * cc / q);
        }
        area += std::max(0.0, hi - lo);
    }
    return area * dphi;
}

DensityCurve semiclassical_density(const ModelParams& params, const std::vector<double>& energies,
                                   int n_phi) {
    params.validate();
    if (energies.size() < 2) throw ParameterError("energy grid needs >= 2 points");
    for (std::size_t i = 1; i < energies.size(); ++i)
        if (!(energies[i] > energies[i - 1])) throw ParameterError("energy grid must ascend");
    DensityCurve out;
    out.energy = energies;
    const double full = 2.0 * params.j() / params.omega;
    for (double e : energies)
        out.rho.push_back(e >= params.omega0 * params.j()
                              ? full
                              : flooded_area(params, e, n_phi) / (kTwoPi * params.omega));
    out.drho_de = centered_derivative(out.energy, out.rho);
    return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(StationaryKind k) {
    switch (k) {
        case StationaryKind::minimum: return "minimum";
        case StationaryKind::saddle: return "saddle";
        case StationaryKind::maximum: return "maximum";
        case StationaryKind::degenerate: return "degenerate";
    }
    return "?";
}

namespace {

using Grad = std::array<double, 2>;

// gradient of h_reduced in (phi, jz)
Grad grad_angle(const ModelParams& p, double phi, double jz) {
    const double j = p.j();
    const double l2 = p.lambda * p.lambda / (p.omega * p.n_atoms);
    const double g = 1.0 + 2.0 * p.delta * std::cos(2.0 * phi) + p.delta * p.delta;
    return {l2 * (j * j - jz * jz) * 4.0 * p.delta * std::sin(2.0 * phi),
            p.omega0 + 2.0 * l2 * jz * g};
}

// gradient in the polar chart u = sqrt(2I) cos phi, v = sqrt(2I) sin phi around a pole,
// I = j + jz (south) or j - jz (north)
Grad grad_pole(const ModelParams& p, bool north, double u, double v) {
    const double j = p.j();
    const double a0 = p.lambda * p.lambda / (p.omega * p.n_atoms);
    const double c1 = (1.0 + p.delta) * (1.0 + p.delta);
    const double c2 = (1.0 - p.delta) * (1.0 - p.delta);
    const double i = 0.5 * (u * u + v * v);
    const double q = 0.5 * (c1 * u * u + c2 * v * v);
    const double w = north ? -p.omega0 : p.omega0;
    return {w * u - a0 * (-u * q + (2.0 * j - i) * c1 * u),
            w * v - a0 * (-v * q + (2.0 * j - i) * c2 * v)};
}

template <class G>
std::optional<int> morse_index(G grad, double x0, double y0, double h, double& gnorm) {
    const Grad g0 = grad(x0, y0);
    gnorm = std::hypot(g0[0], g0[1]);
    const Grad gxp = grad(x0 + h, y0), gxm = grad(x0 - h, y0);
    const Grad gyp = grad(x0, y0 + h), gym = grad(x0, y0 - h);
    Eigen::Matrix2d hess;
    hess(0, 0) = (gxp[0] - gxm[0]) / (2.0 * h);
    hess(1, 1) = (gyp[1] - gym[1]) / (2.0 * h);
    hess(0, 1) = hess(1, 0) = 0.5 * ((gxp[1] - gxm[1]) + (gyp[0] - gym[0])) / (2.0 * h);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hess, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    if (std::abs(ev[0]) < 1e-10 || std::abs(ev[1]) < 1e-10) return std::nullopt;
    return (ev[0] < 0.0) + (ev[1] < 0.0);
}

StationaryKind kind_of(std::optional<int> index) {
    if (!index) return StationaryKind::degenerate;
    return *index == 0 ? StationaryKind::minimum
                       : (*index == 1 ? StationaryKind::saddle : StationaryKind::maximum);
}

}  // namespace

std::vector<StationaryPoint> stationary_points(const ModelParams& params) {
    params.validate();
    const auto cs = critical_couplings(params);
    const double j = params.j();
    const double h = 1e-5 * std::max(1.0, std::sqrt(j));
    std::vector<StationaryPoint> out;

    auto pole = [&](bool north) {
        StationaryPoint sp;
        sp.jz = north ? j : -j;
        sp.energy = params.omega0 * sp.jz;
        sp.index = morse_index([&](double u, double v) { return grad_pole(params, north, u, v); },
                               0.0, 0.0, h, sp.gradient_norm);
        sp.kind = kind_of(sp.index);
        out.push_back(sp);
    };
    auto interior = [&](double phi, double jz, int expected) {
        StationaryPoint sp;
        sp.phi = phi;
        sp.jz = jz;
        sp.energy = h_reduced(params, phi, jz);
        sp.index = morse_index([&](double a, double b) { return grad_angle(params, a, b); }, phi, jz,
                               h, sp.gradient_norm);
        sp.kind = kind_of(sp.index);
        if (sp.index && *sp.index != expected)
            throw ConsistencyError("numeric Morse index contradicts the analytic catalogue");
        out.push_back(sp);
    };

    pole(false);
    if (params.lambda > cs.lambda_c) {
        const double jz = -j * cs.lambda_c * cs.lambda_c / (params.lambda * params.lambda);
        interior(0.0, jz, 0);
        interior(std::numbers::pi, jz, 0);
    }
    if (params.lambda > cs.lambda_0) {
        const double jz = -j * cs.lambda_0 * cs.lambda_0 / (params.lambda * params.lambda);
        interior(0.5 * std::numbers::pi, jz, 1);
        interior(1.5 * std::numbers::pi, jz, 1);
    }
    pole(true);
    return out;
}

DensityCurve single_m_density(const ModelParams& params, int M, const std::vector<double>& energies,
                              int n_action) {
    params.validate();
    if (params.delta != 0.0) throw UnsupportedError("fixed-M density requires delta = 0");
    if (M < 0) throw ParameterError("M must be >= 0");
    if (n_action < 1) throw ParameterError("n_action must be >= 1");
    if (energies.size() < 2) throw ParameterError("energy grid needs >= 2 points");
    for (std::size_t i = 1; i < energies.size(); ++i)
        if (!(energies[i] > energies[i - 1])) throw ParameterError("energy grid must ascend");
    const double j = params.j();
    const double mp = M - j;  // M' = jz + I
    const double i_lo = std::max(0.0, mp - j);
    const double i_hi = mp + j;
    const double di = (i_hi - i_lo) / n_action;
    const double c = params.lambda * std::sqrt(2.0 / params.n_atoms);

    std::vector<double> centre(n_action), swing(n_action);
    for (int k = 0; k < n_action; ++k) {
        const double act = i_lo + (k + 0.5) * di;
        const double jz = mp - act;
        centre[k] = (params.omega - params.omega0) * act + params.omega0 * mp;
        swing[k] = c * std::sqrt(2.0 * act) * std::sqrt(std::max(0.0, j * j - jz * jz));
    }
    DensityCurve out;
    out.energy = energies;
    std::vector<double> area;
    for (double e : energies) {
        double a = 0.0;
        for (int k = 0; k < n_action; ++k) {
            // theta-measure of centre + swing cos(theta) <= E
            if (e >= centre[k] + swing[k]) a += kTwoPi;
            else if (e > centre[k] - swing[k])
                a += kTwoPi - 2.0 * std::acos(std::clamp((e - centre[k]) / swing[k], -1.0, 1.0));
        }
        area.push_back(a * di);
    }
    const auto d = centered_derivative(out.energy, area);
    for (double v : d) out.rho.push_back(v / kTwoPi);
    out.drho_de = centered_derivative(out.energy, out.rho);
    return out;
}

}  // namespace dicke
