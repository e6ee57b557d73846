// criticality.cpp: closed forms in the scaled couplings lambda_c(j), lambda_0(j)

#include "dicke/criticality.hpp"

#include <cmath>
#include <limits>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

// -(omega0 j / 2)(l^2/x^2 + x^2/l^2): energy of the separated minima or saddles
double branch(const ModelParams& p, double lc, double lambda) {
    const double r = lc * lc / (lambda * lambda);
    return -0.5 * p.omega0 * p.j() * (r + 1.0 / r);
}

void require_lambda(double lambda) {
    if (!(lambda >= 0.0)) throw ParameterError("lambda must be >= 0");
}

}  // namespace

CriticalSet critical_couplings(const ModelParams& params) {
    params.validate();
    if (params.two_j == 0) throw UnsupportedError("critical couplings need j > 0");
    const double scale = std::sqrt(params.n_atoms / static_cast<double>(params.two_j));
    const double w = std::sqrt(params.omega * params.omega0);
    CriticalSet cs;
    cs.lambda_c = scale * w / (1.0 + params.delta);
    cs.lambda_0 = params.delta == 1.0 ? std::numeric_limits<double>::infinity()
                                      : scale * w / (1.0 - params.delta);
    cs.lambda_prime_c = scale * (params.omega - params.omega0) / 2.0;
    return cs;
}

double ground_energy(const ModelParams& params, double lambda) {
    require_lambda(lambda);
    const auto cs = critical_couplings(params);
    if (lambda < cs.lambda_c) return -params.omega0 * params.j();
    return branch(params, cs.lambda_c, lambda);
}

EsqptEnergies esqpt_energies(const ModelParams& params, double lambda) {
    require_lambda(lambda);
    const auto cs = critical_couplings(params);
    EsqptEnergies e;
    e.e_c3 = params.omega0 * params.j();
    if (lambda < cs.lambda_c) return e;
    if (lambda < cs.lambda_0) {
        e.e_c1 = -params.omega0 * params.j();
        return e;
    }
    e.e_c1 = branch(params, cs.lambda_0, lambda);
    e.e_c2 = -params.omega0 * params.j();
    return e;
}

std::string_view to_string(QuantumPhase p) {
    switch (p) {
        case QuantumPhase::below_ground: return "belowGS";
        case QuantumPhase::D: return "D";
        case QuantumPhase::TC: return "TC";
        case QuantumPhase::N: return "N";
        case QuantumPhase::S: return "S";
    }
    return "?";
}

QuantumPhase quantum_phase(const ModelParams& params, double lambda, double energy) {
    const double e0 = ground_energy(params, lambda);
    const auto e = esqpt_energies(params, lambda);
    if (energy < e0) return QuantumPhase::below_ground;
    if (energy >= e.e_c3) return QuantumPhase::S;
    if (!e.e_c1) return QuantumPhase::N;
    if (energy < *e.e_c1) return QuantumPhase::D;
    if (e.e_c2 && energy < *e.e_c2) return QuantumPhase::TC;
    return QuantumPhase::N;
}

}  // namespace dicke
