// observables.cpp: eigenstate expectation values arranged against energy

#include "dicke/observables.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "dicke/errors.hpp"

namespace dicke {

std::string_view to_string(Observable o) {
    switch (o) {
        case Observable::Jz: return "Jz";
        case Observable::n: return "n";
        case Observable::Hint: return "Hint";
    }
    return "?";
}

Observable parse_observable(std::string_view s) {
    if (s == "Jz" || s == "jz") return Observable::Jz;
    if (s == "n") return Observable::n;
    if (s == "Hint" || s == "hint") return Observable::Hint;
    throw ParameterError("unknown observable '" + std::string(s) + "'");
}

namespace {

// <H_int> per state; one interaction matrix per distinct basis
std::vector<double> interaction_values(const EigenSystem& eigs) {
    std::map<const BasisIndex*, SymmetricMatrixRep> cache;
    std::vector<double> out;
    out.reserve(eigs.states.size());
    for (const auto& s : eigs.states) {
        auto it = cache.find(s.basis.get());
        if (it == cache.end())
            it = cache.emplace(s.basis.get(), build_interaction(eigs.params, *s.basis)).first;
        out.push_back(it->second.quadratic_form(s.coeffs));
    }
    return out;
}

void require_states(const EigenSystem& eigs) {
    if (eigs.states.size() != eigs.energies.size())
        throw ConsistencyError("eigensystem carries no eigenvectors");
}

}  // namespace

PeresLattice peres_lattice(const EigenSystem& eigs, Observable observable) {
    require_states(eigs);
    PeresLattice lat;
    lat.observable = observable;
    lat.params = eigs.params;
    lat.energy = eigs.energies;
    switch (observable) {
        case Observable::Jz:
            for (const auto& s : eigs.states) lat.value.push_back(expect_jz(s));
            break;
        case Observable::n:
            for (const auto& s : eigs.states) lat.value.push_back(expect_n(s));
            break;
        case Observable::Hint: lat.value = interaction_values(eigs); break;
    }
    return lat;
}

SmoothedLattice smooth_lattice(const PeresLattice& lattice, int window) {
    if (window < 1) throw ParameterError("window must be >= 1");
    SmoothedLattice out;
    out.lattice.observable = lattice.observable;
    out.lattice.params = lattice.params;
    const std::size_t n = lattice.size();
    const auto w = static_cast<std::size_t>(window);
    if (w > n) {
        out.warning = true;
        return out;
    }
    // running sums restarted per window keep the result independent of n
    for (std::size_t start = 0; start + w <= n; ++start) {
        double se = 0.0;
        double sv = 0.0;
        for (std::size_t i = start; i < start + w; ++i) {
            se += lattice.energy[i];
            sv += lattice.value[i];
        }
        out.lattice.energy.push_back(se / window);
        out.lattice.value.push_back(sv / window);
    }
    return out;
}

std::vector<LevelSlope> level_slope(const EigenSystem& eigs) {
    require_states(eigs);
    const auto& p = eigs.params;
    const auto hint = interaction_values(eigs);
    const double sn = p.sqrt_n();
    std::vector<LevelSlope> out;
    out.reserve(hint.size());
    for (std::size_t i = 0; i < hint.size(); ++i) {
        LevelSlope s;
        s.hellmann_feynman = hint[i] / sn;
        if (p.lambda <= 1e-6) {
            s.energy_form = std::numeric_limits<double>::quiet_NaN();
        } else {
            const double jz = expect_jz(eigs.states[i]);
            const double n = expect_n(eigs.states[i]);
            s.energy_form = (eigs.energies[i] - p.omega0 * jz - p.omega * n) / p.lambda;
            // roundoff floor: the energy form subtracts terms of size |E| + omega0 j + omega <n>
            const double scale = (std::abs(eigs.energies[i]) + p.omega0 * p.j() + p.omega * n) / p.lambda;
            const double diff = std::abs(s.energy_form - s.hellmann_feynman);
            const double ref = std::max({std::abs(s.energy_form), std::abs(s.hellmann_feynman), scale});
            if (diff > 1e-8 * ref) {
                std::ostringstream os;
                os << "slope forms disagree for level " << i << ": " << s.hellmann_feynman << " vs "
                   << s.energy_form;
                throw NumericalError(os.str(), diff / ref);
            }
        }
        out.push_back(s);
    }
    return out;
}

DensityCurve smoothed_density(const std::vector<double>& levels, double sigma,
                              const std::vector<double>& grid) {
    if (!(sigma > 0.0)) throw ParameterError("sigma must be > 0");
    DensityCurve out;
    out.energy = grid;
    out.sigma = sigma;
    const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
    const double cut = 40.0 * sigma;  // exp(-800) underflows anyway
    out.rho.assign(grid.size(), 0.0);
    out.drho_de.assign(grid.size(), 0.0);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double r = 0.0;
        double d = 0.0;
        for (double e : levels) {
            const double u = grid[g] - e;
            if (std::abs(u) > cut) continue;
            const double k = norm * std::exp(-0.5 * u * u / (sigma * sigma));
            r += k;
            d -= u / (sigma * sigma) * k;
        }
        out.rho[g] = r;
        out.drho_de[g] = d;
    }
    return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ParameterError("fit arrays differ in length");
    if (x.size() < 2) throw ParameterError("line fit needs >= 2 points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw ParameterError("line fit needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.count = x.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        f.sse += r * r;
    }
    return f;
}

HingeFit hinge_fit(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& candidates) {
    if (x.size() != y.size() || x.size() < 4) throw ParameterError("hinge fit needs >= 4 points");
    if (candidates.empty()) throw ParameterError("hinge fit needs candidates");
    HingeFit best;
    best.sse = std::numeric_limits<double>::infinity();
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
    for (double xb : candidates) {
        Eigen::MatrixXd a(n, 3);
        for (Eigen::Index i = 0; i < n; ++i) {
            a(i, 0) = 1.0;
            a(i, 1) = x[i] - xb;
            a(i, 2) = std::max(0.0, x[i] - xb);
        }
        if (a.col(2).squaredNorm() == 0.0 || (a.col(1) - a.col(2)).squaredNorm() == 0.0) continue;
        const Eigen::Vector3d c = a.colPivHouseholderQr().solve(yv);
        const double sse = (a * c - yv).squaredNorm();
        if (sse < best.sse) {
            best.sse = sse;
            best.breakpoint = xb;
            best.slope_left = c[1];
            best.slope_right = c[1] + c[2];
        }
    }
    if (!std::isfinite(best.sse)) throw ParameterError("no candidate splits the data");
    return best;
}

std::vector<LineFit> segment_fits(const PeresLattice& lattice, const std::vector<double>& cuts) {
    std::vector<double> edges;
    edges.push_back(-std::numeric_limits<double>::infinity());
    edges.insert(edges.end(), cuts.begin(), cuts.end());
    edges.push_back(std::numeric_limits<double>::infinity());
    std::vector<LineFit> out;
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
        std::vector<double> x, y;
        for (std::size_t i = 0; i < lattice.size(); ++i)
            if (lattice.energy[i] >= edges[s] && lattice.energy[i] < edges[s + 1]) {
                x.push_back(lattice.energy[i]);
                y.push_back(lattice.value[i]);
            }
        out.push_back(x.size() >= 2 ? fit_line(x, y) : LineFit{});
    }
    return out;
}

}  // namespace dicke
