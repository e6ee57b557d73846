// spectra.cpp: eigen-solver policy, truncation ladder and lambda = 0+ analysis

#include "dicke/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "dicke/errors.hpp"
#include "dicke/parallel.hpp"
#include "linalg.hpp"

namespace dicke {

namespace {

bool is_diagonal(const SymmetricMatrixRep& h) {
    const std::vector<double>& band = h.band();
    const std::size_t ld = h.bandwidth() + 1;
    for (std::size_t i = 0; i < band.size(); ++i)
        if (i % ld != 0 && band[i] != 0.0) return false;
    return true;
}

void fix_signs(Eigen::MatrixXd& z) {
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
        Eigen::Index r = 0;
        z.col(c).cwiseAbs().maxCoeff(&r);
        if (z(r, c) < 0.0) z.col(c) *= -1.0;
    }
}

// values: all eigenvalues of h ascending, or empty when not yet computed.
EigenPairs solve(const SymmetricMatrixRep& h, std::size_t k, bool want_vectors,
                 EigenMethod method, Eigen::VectorXd values) {
    if (k > h.dim()) throw ParameterError("requested more eigenpairs than the matrix dimension");
    if (h.dim() > kMaxSolverDimension) {
        std::ostringstream os;
        os << "matrix dimension " << h.dim() << " exceeds the solver limit " << kMaxSolverDimension;
        throw UnsupportedError(os.str());
    }
    const auto kk = static_cast<Eigen::Index>(k);
    EigenPairs out;
    if (is_diagonal(h)) {
        std::vector<std::size_t> order(h.dim());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return h(a, a) < h(b, b); });
        out.energies.resize(kk);
        if (want_vectors) out.vectors = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(h.dim()), kk);
        for (Eigen::Index c = 0; c < kk; ++c) {
            out.energies[c] = h(order[c], order[c]);
            if (want_vectors) out.vectors(static_cast<Eigen::Index>(order[c]), c) = 1.0;
        }
        return out;
    }
    if (!want_vectors) {
        if (values.size() == 0) values = linalg::band_eigenvalues(h);
        out.energies = values.head(kk);
        return out;
    }
    if (method == EigenMethod::automatic)
        method = h.bandwidth() <= 1 || h.dim() <= kDenseVectorLimit ? EigenMethod::dense
                                                                    : EigenMethod::inverse_iteration;
    if (h.bandwidth() <= 1) {
        Eigen::VectorXd w;
        Eigen::MatrixXd z;
        linalg::tridiagonal_eigenpairs(h, w, z);
        out.energies = w.head(kk);
        out.vectors = z.leftCols(kk);
    } else if (method == EigenMethod::dense) {
        linalg::dense_lowest_eigenpairs(h, k, out.energies, out.vectors);
    } else {
        if (values.size() == 0) values = linalg::band_eigenvalues(h);
        out.energies = values.head(kk);
        out.vectors = linalg::band_inverse_iteration(h, out.energies, 1e-5 * h.norm_inf());
    }
    fix_signs(out.vectors);
    const double scale = std::max(h.norm_inf(), std::numeric_limits<double>::min());
    for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
        const Eigen::VectorXd v = out.vectors.col(c);
        const double r = (h.multiply(v) - out.energies[c] * v).norm() / scale;
        out.max_residual = std::max(out.max_residual, r);
    }
    if (out.max_residual > 1e-9) {
        std::ostringstream os;
        os << "eigenpair residual " << out.max_residual << " exceeds 1e-9 ||H||";
        throw NumericalError(os.str(), out.max_residual);
    }
    return out;
}

}  // namespace

EigenPairs diagonalize(const SymmetricMatrixRep& h, std::size_t k, bool want_vectors,
                       EigenMethod method) {
    return solve(h, k, want_vectors, method, {});
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Parity> blocks_of(Parity p) {
    if (p == Parity::both) return {Parity::even, Parity::odd};
    return {p};
}

std::size_t block_dimension(const ModelParams& params, int n_max, Parity p) {
    const std::size_t total = static_cast<std::size_t>(n_max) * (params.two_j + 1);
    if (p == Parity::both) return total;
    std::size_t even = 0;
    for (int n = 0; n < n_max; ++n)
        for (int k = 0; k <= params.two_j; ++k) even += ((n + k) % 2 == 0);
    return p == Parity::even ? even : total - even;
}

struct Level {
    double energy;
    std::size_t block;
};

// Merged, sorted eigenvalues of all requested blocks at truncation n_max.
std::vector<Level> merged_values(const ModelParams& params, int n_max, Parity parity) {
    std::vector<Level> levels;
    const auto blocks = blocks_of(parity);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto basis = build_basis(params, n_max, blocks[b]);
        const auto h = build_hamiltonian(params, *basis);
        const auto w = linalg::band_eigenvalues(h);
        for (Eigen::Index i = 0; i < w.size(); ++i) levels.push_back({w[i], b});
    }
    std::stable_sort(levels.begin(), levels.end(),
                     [](const Level& a, const Level& b) { return a.energy < b.energy; });
    return levels;
}

bool fits_solver(const ModelParams& params, int n_max, Parity parity) {
    for (Parity b : blocks_of(parity))
        if (block_dimension(params, n_max, b) > kMaxSolverDimension) return false;
    return true;
}

void check_dimension(const ModelParams& params, int n_max, Parity parity, double last_dev) {
    for (Parity b : blocks_of(parity)) {
        const std::size_t d = block_dimension(params, n_max, b);
        if (d > kMaxSolverDimension) {
            std::ostringstream os;
            os << "block dimension " << d << " at n_max = " << n_max
               << " exceeds the solver limit before convergence (last deviation " << last_dev
               << ")";
            throw TruncationError(os.str(), last_dev, n_max);
        }
    }
}

}  // namespace

EigenSystem spectrum_at(const ModelParams& params, int n_max, std::size_t k_levels, Parity parity,
                        bool want_vectors) {
    params.validate();
    check_dimension(params, n_max, parity, std::numeric_limits<double>::quiet_NaN());
    const auto blocks = blocks_of(parity);
    EigenSystem es;
    es.params = params;
    es.parity = parity;
    es.n_max_used = n_max;

    std::vector<BasisPtr> bases;
    std::vector<SymmetricMatrixRep> hams;
    std::vector<Level> levels;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        bases.push_back(build_basis(params, n_max, blocks[b]));
        hams.push_back(build_hamiltonian(params, *bases.back()));
    }
    std::size_t total = 0;
    for (const auto& h : hams) total += h.dim();
    if (k_levels > total) throw ParameterError("k_levels exceeds the truncated dimension");

    // how many of the k lowest levels each block contributes
    std::vector<Eigen::VectorXd> all(blocks.size());
    std::vector<std::size_t> take(blocks.size(), 0);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (!is_diagonal(hams[b])) all[b] = linalg::band_eigenvalues(hams[b]);
        else {
            std::vector<double> d(hams[b].dim());
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = hams[b](i, i);
            std::sort(d.begin(), d.end());
            all[b] = Eigen::Map<Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
        }
        for (Eigen::Index i = 0; i < all[b].size(); ++i) levels.push_back({all[b][i], b});
    }
    std::stable_sort(levels.begin(), levels.end(),
                     [](const Level& a, const Level& b) { return a.energy < b.energy; });
    for (std::size_t i = 0; i < k_levels; ++i) ++take[levels[i].block];

    struct Pair {
        double energy;
        std::size_t block;
        Eigen::Index column;
    };
    std::vector<Pair> pairs;
    std::vector<EigenPairs> solved(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        solved[b] = solve(hams[b], take[b], want_vectors, EigenMethod::automatic, all[b]);
        for (Eigen::Index i = 0; i < solved[b].energies.size(); ++i)
            pairs.push_back({solved[b].energies[i], b, i});
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Pair& a, const Pair& b) { return a.energy < b.energy; });
    for (const auto& p : pairs) {
        es.energies.push_back(p.energy);
        es.level_parity.push_back(blocks[p.block]);
        if (want_vectors) es.states.push_back({bases[p.block], solved[p.block].vectors.col(p.column)});
    }
    es.k_converged = 0;
    return es;
}

EigenSystem converged_spectrum(const ModelParams& params, std::size_t k_levels, double tol,
                               Parity parity, const TruncationControl& control) {
    params.validate();
    if (k_levels < 1) throw ParameterError("k_levels must be >= 1");
    if (!(tol > 0.0)) throw ParameterError("tolerance must be > 0");
    if (control.n_max_start < 1 || !(control.growth > 1.0))
        throw ParameterError("invalid truncation ladder");

    int n = control.n_max_start;
    int prev_n = 0;
    std::vector<Level> prev;
    double last_dev = std::numeric_limits<double>::infinity();
    while (true) {
        check_dimension(params, n, parity, last_dev);
        auto cur = merged_values(params, n, parity);
        if (cur.size() >= k_levels && prev.size() >= k_levels) {
            last_dev = 0.0;
            std::size_t leading = 0;
            bool contiguous = true;
            for (std::size_t i = 0; i < k_levels; ++i) {
                const double d = std::abs(cur[i].energy - prev[i].energy);
                last_dev = std::max(last_dev, d);
                if (contiguous && d < tol) ++leading;
                else contiguous = false;
            }
            if (last_dev < tol) {
                auto es = spectrum_at(params, prev_n, k_levels, parity, control.want_vectors);
                es.k_converged = leading;
                es.last_deviation = last_dev;
                return es;
            }
        }
        if (n >= control.n_max_ceiling) {
            std::ostringstream os;
            os << "spectrum not converged at the n_max ceiling " << control.n_max_ceiling
               << " (last deviation " << last_dev << ")";
            throw TruncationError(os.str(), last_dev, n);
        }
        prev = std::move(cur);
        prev_n = n;
        int next = std::min(control.n_max_ceiling,
                            std::max(n + 1, static_cast<int>(std::ceil(n * control.growth))));
        // the last rung is clipped to the solver limit so it can still confirm convergence
        while (next > n + 1 && !fits_solver(params, next, parity)) --next;
        n = next;
    }
}

LevelFlow level_flow(const ModelParams& base, const std::vector<double>& lambda_grid,
                     std::size_t k_levels, double tol, Parity parity,
                     const TruncationControl& control, unsigned threads) {
    if (lambda_grid.empty()) throw ParameterError("lambda grid is empty");
    for (std::size_t i = 1; i < lambda_grid.size(); ++i)
        if (!(lambda_grid[i] > lambda_grid[i - 1]))
            throw ParameterError("lambda grid must be strictly increasing");
    LevelFlow flow;
    flow.lambda_grid = lambda_grid;
    flow.parity = parity;
    const std::size_t np = lambda_grid.size();
    flow.energy.resize(np);
    flow.jz.resize(np);
    flow.n.resize(np);
    flow.n_max_used.resize(np);
    TruncationControl ctl = control;
    ctl.want_vectors = true;
    parallel_for(np, threads, [&](std::size_t p) {
        const double lam = lambda_grid[p];
        EigenSystem es;
        try {
            es = converged_spectrum(base.with_lambda(lam), k_levels, tol, parity, ctl);
        } catch (const TruncationError& e) {
            std::ostringstream os;
            os << "lambda = " << lam << ": " << e.what();
            throw TruncationError(os.str(), e.diagnostic(), e.n_max());
        } catch (const NumericalError& e) {
            std::ostringstream os;
            os << "lambda = " << lam << ": " << e.what();
            throw NumericalError(os.str(), e.diagnostic());
        }
        flow.energy[p] = es.energies;
        flow.n_max_used[p] = es.n_max_used;
        for (const auto& s : es.states) {
            flow.jz[p].push_back(expect_jz(s));
            flow.n[p].push_back(expect_n(s));
        }
    });
    return flow;
}

// ---------------------------------------------------------------------------

std::vector<QuantumState> zero_plus_basis(const ModelParams& params, std::size_t k, Parity parity,
                                          int n_max) {
    if (k < 1) throw ParameterError("k must be >= 1");
    const auto basis = build_basis(params, n_max, parity);
    if (k > basis->size()) throw ParameterError("k exceeds the basis size");
    const auto hint = build_interaction(params, *basis);
    const std::size_t dim = basis->size();

    std::vector<double> free(dim);
    for (std::size_t a = 0; a < dim; ++a)
        free[a] = params.omega * (*basis)[a].n + params.omega0 * basis->m(a);
    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return free[a] < free[b]; });

    struct Candidate {
        double free_energy;
        double shift;
        Eigen::VectorXd vec;
    };
    std::vector<Candidate> cands;
    cands.reserve(dim);
    std::size_t start = 0;
    while (start < dim) {
        std::size_t stop = start + 1;
        const double e0 = free[order[start]];
        while (stop < dim && std::abs(free[order[stop]] - e0) <= 1e-10 * (1.0 + std::abs(e0)))
            ++stop;
        const std::size_t g = stop - start;
        if (g == 1) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
            v[static_cast<Eigen::Index>(order[start])] = 1.0;
            cands.push_back({e0, hint(order[start], order[start]), std::move(v)});
        } else {
            Eigen::MatrixXd sub(g, g);
            for (std::size_t r = 0; r < g; ++r)
                for (std::size_t c = 0; c < g; ++c) sub(r, c) = hint(order[start + r], order[start + c]);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
            for (std::size_t c = 0; c < g; ++c) {
                Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
                for (std::size_t r = 0; r < g; ++r)
                    v[static_cast<Eigen::Index>(order[start + r])] = es.eigenvectors()(r, c);
                cands.push_back({e0, es.eigenvalues()[c], std::move(v)});
            }
        }
        start = stop;
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.free_energy != b.free_energy) return a.free_energy < b.free_energy;
        return a.shift < b.shift;
    });
    std::vector<QuantumState> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back({basis, std::move(cands[i].vec)});
    return out;
}

double npc(const QuantumState& state, const std::vector<QuantumState>& reference) {
    double captured = 0.0;
    double fourth = 0.0;
    for (const auto& r : reference) {
        const double o = overlap(r, state);
        const double o2 = o * o;
        captured += o2;
        fourth += o2 * o2;
    }
    const double norm2 = state.norm_squared();
    if (captured < (1.0 - 1e-8) * norm2) {
        std::ostringstream os;
        os << "reference basis captures only " << captured / norm2 << " of the state";
        throw CoverageError(os.str(), captured / norm2);
    }
    return norm2 * norm2 / fourth;
}

std::vector<double> npc(const std::vector<QuantumState>& states,
                        const std::vector<QuantumState>& reference) {
    std::vector<double> out(states.size());
    std::map<const BasisIndex*, Eigen::MatrixXd> mapped;  // reference columns on a state basis
    for (std::size_t s = 0; s < states.size(); ++s) {
        const auto& st = states[s];
        auto it = mapped.find(st.basis.get());
        if (it == mapped.end()) {
            Eigen::MatrixXd r = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(st.basis->size()),
                                                      static_cast<Eigen::Index>(reference.size()));
            for (std::size_t c = 0; c < reference.size(); ++c) {
                const auto& ref = reference[c];
                for (std::size_t a = 0; a < ref.basis->size(); ++a) {
                    const double v = ref.coeffs[static_cast<Eigen::Index>(a)];
                    if (v == 0.0) continue;
                    const auto& e = (*ref.basis)[a];
                    if (const auto b = st.basis->find(e.k, e.n))
                        r(static_cast<Eigen::Index>(*b), static_cast<Eigen::Index>(c)) = v;
                }
            }
            it = mapped.emplace(st.basis.get(), std::move(r)).first;
        }
        const Eigen::VectorXd o = it->second.transpose() * st.coeffs;
        const double norm2 = st.norm_squared();
        const double captured = o.squaredNorm();
        if (captured < (1.0 - 1e-8) * norm2) {
            std::ostringstream os;
            os << "reference basis captures only " << captured / norm2 << " of state " << s;
            throw CoverageError(os.str(), captured / norm2);
        }
        out[s] = norm2 * norm2 / o.array().square().square().sum();
    }
    return out;
}

}  // namespace dicke
