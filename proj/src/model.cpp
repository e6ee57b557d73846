// model.cpp: basis enumeration and Hamiltonian assembly

#include "dicke/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dicke/errors.hpp"

namespace dicke {

std::string_view to_string(Parity p) {
    switch (p) {
        case Parity::even: return "even";
        case Parity::odd: return "odd";
        case Parity::both: return "both";
    }
    return "both";
}

Parity parse_parity(std::string_view s) {
    if (s == "even" || s == "+") return Parity::even;
    if (s == "odd" || s == "-") return Parity::odd;
    if (s == "both" || s == "all") return Parity::both;
    throw ParameterError("unknown parity '" + std::string(s) + "'");
}

ModelParams ModelParams::symmetric(double omega, double omega0, double lambda, double delta,
                                   int n_atoms) {
    ModelParams p;
    p.omega = omega;
    p.omega0 = omega0;
    p.lambda = lambda;
    p.delta = delta;
    p.n_atoms = n_atoms;
    p.two_j = n_atoms;
    p.validate();
    return p;
}

double ModelParams::sqrt_n() const { return std::sqrt(static_cast<double>(n_atoms)); }

ModelParams ModelParams::with_lambda(double l) const {
    ModelParams p = *this;
    p.lambda = l;
    return p;
}

void ModelParams::validate() const {
    std::ostringstream err;
    if (!(omega > 0.0)) err << "omega must be > 0 (got " << omega << "); ";
    if (!(omega0 > 0.0)) err << "omega0 must be > 0 (got " << omega0 << "); ";
    if (!(lambda >= 0.0)) err << "lambda must be >= 0 (got " << lambda << "); ";
    if (!(delta >= 0.0 && delta <= 1.0)) err << "delta must lie in [0, 1] (got " << delta << "); ";
    if (n_atoms < 1) err << "n_atoms must be positive (got " << n_atoms << "); ";
    if (two_j < 0 || two_j > n_atoms || (n_atoms - two_j) % 2 != 0)
        err << "2j = " << two_j << " incompatible with N = " << n_atoms << "; ";
    const std::string msg = err.str();
    if (!msg.empty()) throw ParameterError("invalid model parameters: " + msg);
}

// ---------------------------------------------------------------------------

BasisIndex::BasisIndex(int two_j, int n_max, Parity parity, std::vector<BasisEntry> entries)
    : two_j_(two_j), n_max_(n_max), parity_(parity), entries_(std::move(entries)),
      lookup_(static_cast<std::size_t>(n_max) * (two_j + 1), -1) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        lookup_[static_cast<std::size_t>(e.n) * (two_j_ + 1) + e.k] = static_cast<long>(i);
    }
}

std::optional<std::size_t> BasisIndex::find(int k, int n) const {
    if (k < 0 || k > two_j_ || n < 0 || n >= n_max_) return std::nullopt;
    const long idx = lookup_[static_cast<std::size_t>(n) * (two_j_ + 1) + k];
    if (idx < 0) return std::nullopt;
    return static_cast<std::size_t>(idx);
}

static bool parity_admits(Parity p, int excitations) {
    switch (p) {
        case Parity::even: return excitations % 2 == 0;
        case Parity::odd: return excitations % 2 == 1;
        case Parity::both: return true;
    }
    return true;
}

BasisPtr build_basis(const ModelParams& params, int n_max, Parity parity) {
    params.validate();
    if (n_max < 1) throw ParameterError("n_max must be >= 1");
    std::vector<BasisEntry> entries;
    entries.reserve(static_cast<std::size_t>(n_max) * (params.two_j + 1));
    for (int n = 0; n < n_max; ++n)
        for (int k = 0; k <= params.two_j; ++k)
            if (parity_admits(parity, n + k)) entries.push_back({k, n});
    return std::make_shared<const BasisIndex>(params.two_j, n_max, parity, std::move(entries));
}

int single_m_dimension(int two_j, int M) { return std::min(two_j, M) + 1; }

BasisPtr single_m_basis(const ModelParams& params, int M) {
    params.validate();
    if (M < 0) throw ParameterError("M must be >= 0");
    const int d = single_m_dimension(params.two_j, M);
    std::vector<BasisEntry> entries;
    entries.reserve(d);
    for (int e = 0; e < d; ++e) {
        const int i = d - 1 - e;
        entries.push_back({i, M - i});
    }
    const Parity parity = (M % 2 == 0) ? Parity::even : Parity::odd;
    return std::make_shared<const BasisIndex>(params.two_j, M + 1, parity, std::move(entries));
}

// ---------------------------------------------------------------------------

void QuantumState::require_normalized(double tol) const {
    const double n2 = norm_squared();
    if (std::abs(n2 - 1.0) > tol) {
        std::ostringstream os;
        os << "state is not normalized (|psi|^2 = " << n2 << ")";
        throw ParameterError(os.str());
    }
}

Eigen::MatrixXd QuantumState::amplitude_table() const {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(basis->two_j() + 1, basis->n_max());
    for (std::size_t i = 0; i < basis->size(); ++i) t((*basis)[i].k, (*basis)[i].n) = coeffs[i];
    return t;
}

double expect_jz(const QuantumState& s) {
    double v = 0.0;
    for (std::size_t i = 0; i < s.basis->size(); ++i) v += s.basis->m(i) * s.coeffs[i] * s.coeffs[i];
    return v;
}

double expect_n(const QuantumState& s) {
    double v = 0.0;
    for (std::size_t i = 0; i < s.basis->size(); ++i)
        v += (*s.basis)[i].n * s.coeffs[i] * s.coeffs[i];
    return v;
}

double overlap(const QuantumState& a, const QuantumState& b) {
    if (a.basis->two_j() != b.basis->two_j())
        throw ConsistencyError("overlap between states of different quasispin");
    if (a.basis == b.basis) return a.coeffs.dot(b.coeffs);
    const QuantumState& small = a.basis->size() <= b.basis->size() ? a : b;
    const QuantumState& large = &small == &a ? b : a;
    double s = 0.0;
    for (std::size_t i = 0; i < small.basis->size(); ++i) {
        const auto& e = (*small.basis)[i];
        if (auto j = large.basis->find(e.k, e.n)) s += small.coeffs[i] * large.coeffs[*j];
    }
    return s;
}

QuantumState single_m_state(const ModelParams& params, int M, const Eigen::VectorXd& by_i) {
    auto basis = single_m_basis(params, M);
    const auto d = static_cast<Eigen::Index>(basis->size());
    if (by_i.size() != d) throw ConsistencyError("single-M vector has wrong dimension");
    Eigen::VectorXd c(d);
    for (Eigen::Index e = 0; e < d; ++e) c[e] = by_i[d - 1 - e];
    return {basis, c};
}

// ---------------------------------------------------------------------------

SymmetricMatrixRep::SymmetricMatrixRep(std::size_t dim, std::size_t bandwidth, BlockTag tag)
    : dim_(dim), kd_(bandwidth), tag_(tag), band_((bandwidth + 1) * dim, 0.0) {}

double SymmetricMatrixRep::operator()(std::size_t r, std::size_t c) const {
    if (r < c) std::swap(r, c);
    if (r - c > kd_) return 0.0;
    return band_[(r - c) + c * (kd_ + 1)];
}

void SymmetricMatrixRep::set(std::size_t r, std::size_t c, double v) {
    if (r < c) std::swap(r, c);
    if (r >= dim_ || r - c > kd_) throw ConsistencyError("matrix element outside band");
    band_[(r - c) + c * (kd_ + 1)] = v;
}

void SymmetricMatrixRep::add(std::size_t r, std::size_t c, double v) {
    if (r < c) std::swap(r, c);
    if (r >= dim_ || r - c > kd_) throw ConsistencyError("matrix element outside band");
    band_[(r - c) + c * (kd_ + 1)] += v;
}

Eigen::MatrixXd SymmetricMatrixRep::dense() const {
    const auto n = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t c = 0; c < dim_; ++c)
        for (std::size_t d = 0; d <= kd_ && c + d < dim_; ++d) {
            const double v = band_[d + c * (kd_ + 1)];
            m(c + d, c) = v;
            m(c, c + d) = v;
        }
    return m;
}

Eigen::VectorXd SymmetricMatrixRep::multiply(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    for (std::size_t c = 0; c < dim_; ++c) {
        out[c] += band_[c * (kd_ + 1)] * v[c];
        for (std::size_t d = 1; d <= kd_ && c + d < dim_; ++d) {
            const double h = band_[d + c * (kd_ + 1)];
            out[c + d] += h * v[c];
            out[c] += h * v[c + d];
        }
    }
    return out;
}

double SymmetricMatrixRep::quadratic_form(const Eigen::VectorXd& v) const {
    return v.dot(multiply(v));
}

double SymmetricMatrixRep::norm_inf() const {
    std::vector<double> rows(dim_, 0.0);
    for (std::size_t c = 0; c < dim_; ++c) {
        rows[c] += std::abs(band_[c * (kd_ + 1)]);
        for (std::size_t d = 1; d <= kd_ && c + d < dim_; ++d) {
            const double h = std::abs(band_[d + c * (kd_ + 1)]);
            rows[c + d] += h;
            rows[c] += h;
        }
    }
    return rows.empty() ? 0.0 : *std::max_element(rows.begin(), rows.end());
}

// ---------------------------------------------------------------------------

namespace {

struct Coupling {
    std::size_t lo, hi;
    double value;
};

// Raising-n half of H_int; the lowering half is its transpose.
std::vector<Coupling> interaction_couplings(const ModelParams& params, const BasisIndex& basis) {
    std::vector<Coupling> out;
    const int tj = params.two_j;
    for (std::size_t a = 0; a < basis.size(); ++a) {
        const auto [k, n] = basis[a];
        const double bose = std::sqrt(static_cast<double>(n + 1));
        // b+ J- : (k, n) -> (k - 1, n + 1)
        if (k > 0)
            if (auto b = basis.find(k - 1, n + 1))
                out.push_back({a, *b, bose * std::sqrt(static_cast<double>(k) * (tj - k + 1))});
        // delta b+ J+ : (k, n) -> (k + 1, n + 1)
        if (params.delta != 0.0 && k < tj)
            if (auto b = basis.find(k + 1, n + 1))
                out.push_back({a, *b,
                               params.delta * bose *
                                   std::sqrt(static_cast<double>(tj - k) * (k + 1))});
    }
    return out;
}

void check_basis(const ModelParams& params, const BasisIndex& basis) {
    params.validate();
    if (basis.two_j() != params.two_j)
        throw ConsistencyError("basis was built for a different quasispin");
}

SymmetricMatrixRep assemble(const ModelParams& params, const BasisIndex& basis, bool with_free,
                            double scale) {
    check_basis(params, basis);
    const auto couplings = interaction_couplings(params, basis);
    std::size_t kd = 0;
    for (const auto& c : couplings) kd = std::max(kd, c.hi - c.lo);
    SymmetricMatrixRep h(basis.size(), kd, BlockTag{basis.parity(), std::nullopt});
    if (with_free)
        for (std::size_t a = 0; a < basis.size(); ++a)
            h.set(a, a, params.omega * basis[a].n + params.omega0 * basis.m(a));
    if (scale != 0.0)
        for (const auto& c : couplings) h.set(c.hi, c.lo, scale * c.value);
    return h;
}

}  // namespace

SymmetricMatrixRep build_hamiltonian(const ModelParams& params, const BasisIndex& basis) {
    return assemble(params, basis, true, params.lambda / params.sqrt_n());
}

SymmetricMatrixRep build_interaction(const ModelParams& params, const BasisIndex& basis) {
    return assemble(params, basis, false, 1.0);
}

SymmetricMatrixRep build_single_m_hamiltonian(const ModelParams& params, int M) {
    params.validate();
    if (params.delta != 0.0)
        throw UnsupportedError("the fixed-M tridiagonal form requires delta = 0");
    if (M < 0) throw ParameterError("M must be >= 0");
    const int d = single_m_dimension(params.two_j, M);
    const double j = params.j();
    SymmetricMatrixRep h(d, d > 1 ? 1 : 0,
                         BlockTag{M % 2 == 0 ? Parity::even : Parity::odd, M});
    for (int i = 0; i < d; ++i) {
        h.set(i, i, params.omega * (M - i) + params.omega0 * (i - j));
        if (i + 1 < d) {
            const double r = static_cast<double>(i + 1) * (params.two_j - i) * (M - i) /
                             params.n_atoms;
            h.set(i + 1, i, params.lambda * std::sqrt(r));
        }
    }
    return h;
}

double replica_count(int n_atoms, int two_j) {
    if (two_j < 0 || two_j > n_atoms || (n_atoms - two_j) % 2 != 0)
        throw ParameterError("2j incompatible with N");
    const int upper = (n_atoms + two_j) / 2;  // N/2 + j
    const int lower = (n_atoms - two_j) / 2;  // N/2 - j
    const double log_r = std::lgamma(n_atoms + 1.0) + std::log(two_j + 1.0) -
                         std::lgamma(upper + 2.0) - std::lgamma(lower + 1.0);
    return std::round(std::exp(log_r));
}

}  // namespace dicke
