// bindings.cpp: Python module _dicke_lab over the core library

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dicke/classical.hpp"
#include "dicke/criticality.hpp"
#include "dicke/entanglement.hpp"
#include "dicke/errors.hpp"
#include "dicke/io.hpp"
#include "dicke/observables.hpp"
#include "dicke/spectra.hpp"
#include "dicke/tasks.hpp"
#include "dicke/thermo.hpp"

namespace py = pybind11;
using namespace dicke;

namespace {

ModelParams make_params(double omega, double omega0, double lambda, double delta, int n_atoms,
                        std::optional<int> two_j) {
    ModelParams p;
    p.omega = omega;
    p.omega0 = omega0;
    p.lambda = lambda;
    p.delta = delta;
    p.n_atoms = n_atoms;
    p.two_j = two_j.value_or(n_atoms);
    p.validate();
    return p;
}

template <class F>
std::vector<double> per_state(const EigenSystem& es, F f) {
    if (es.states.empty()) throw ParameterError("spectrum was computed without eigenvectors");
    std::vector<double> out;
    out.reserve(es.states.size());
    for (const auto& s : es.states) out.push_back(f(s));
    return out;
}

}  // namespace

PYBIND11_MODULE(_dicke_lab, m) {
    m.attr("__version__") = DICKE_VERSION;

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init(&make_params), py::arg("omega") = 1.0, py::arg("omega0") = 1.0,
             py::arg("lambda_") = 0.0, py::arg("delta") = 0.0, py::arg("n_atoms") = 2,
             py::arg("two_j") = py::none())
        .def_readwrite("omega", &ModelParams::omega)
        .def_readwrite("omega0", &ModelParams::omega0)
        .def_readwrite("lambda_", &ModelParams::lambda)
        .def_readwrite("delta", &ModelParams::delta)
        .def_readwrite("n_atoms", &ModelParams::n_atoms)
        .def_readwrite("two_j", &ModelParams::two_j)
        .def_property_readonly("j", &ModelParams::j)
        .def("with_lambda", &ModelParams::with_lambda)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(omega=" + std::to_string(p.omega) + ", omega0=" + std::to_string(p.omega0) +
                   ", lambda_=" + std::to_string(p.lambda) + ", delta=" + std::to_string(p.delta) +
                   ", n_atoms=" + std::to_string(p.n_atoms) + ", two_j=" + std::to_string(p.two_j) + ")";
        });

    py::class_<EigenSystem>(m, "Spectrum")
        .def_property_readonly("energies", [](const EigenSystem& es) { return es.energies; })
        .def_property_readonly("parity", [](const EigenSystem& es) {
            std::vector<std::string> out;
            for (Parity p : es.level_parity) out.emplace_back(to_string(p));
            return out;
        })
        .def_readonly("n_max", &EigenSystem::n_max_used)
        .def_readonly("last_deviation", &EigenSystem::last_deviation)
        .def("__len__", &EigenSystem::size)
        .def("jz", [](const EigenSystem& es) { return per_state(es, expect_jz); })
        .def("n", [](const EigenSystem& es) { return per_state(es, expect_n); })
        .def("entropy", [](const EigenSystem& es) { return per_state(es, af_entropy); })
        .def("wavefunction_entropy", [](const EigenSystem& es) { return per_state(es, wavefunction_entropy); })
        .def("concurrence", [](const EigenSystem& es) {
            return per_state(es, [&](const QuantumState& s) { return concurrence(s, es.params); });
        })
        .def("slopes", [](const EigenSystem& es) {
            std::vector<double> out;
            for (const auto& s : level_slope(es)) out.push_back(s.hellmann_feynman);
            return out;
        });

    m.def(
        "spectrum",
        [](const ModelParams& p, std::size_t k, double tol, const std::string& parity, bool vectors) {
            TruncationControl ctl;
            ctl.want_vectors = vectors;
            py::gil_scoped_release release;
            return converged_spectrum(p, k, tol, parse_parity(parity), ctl);
        },
        py::arg("params"), py::arg("k"), py::arg("tol") = 1e-6, py::arg("parity") = "both",
        py::arg("vectors") = true, "Lowest k levels, converged in the Fock truncation.");

    m.def("critical_couplings", [](const ModelParams& p) {
        const auto c = critical_couplings(p);
        py::dict d;
        d["lambda_c"] = c.lambda_c;
        d["lambda_0"] = c.lambda_0;
        d["lambda_prime_c"] = c.lambda_prime_c;
        return d;
    });
    m.def("ground_energy", &ground_energy, py::arg("params"), py::arg("lambda_"));
    m.def(
        "esqpt_energies",
        [](const ModelParams& p, double lambda) {
            const auto e = esqpt_energies(p, lambda);
            py::dict d;
            d["e_c1"] = e.e_c1;
            d["e_c2"] = e.e_c2;
            d["e_c3"] = e.e_c3;
            return d;
        },
        py::arg("params"), py::arg("lambda_"));
    m.def(
        "thermal_phase",
        [](const ModelParams& p, double lambda, double T) {
            return std::string(to_string(thermal_phase(p, lambda, T).phase));
        },
        py::arg("params"), py::arg("lambda_"), py::arg("T"));
    m.def(
        "regular_fraction",
        [](const ModelParams& p, double energy, std::size_t samples, std::uint64_t seed, unsigned threads) {
            RegularFraction r;
            {
                py::gil_scoped_release release;
                r = regular_fraction(p, energy, samples, seed, {}, {}, threads);
            }
            return py::make_tuple(r.f_reg, r.std_error);
        },
        py::arg("params"), py::arg("energy"), py::arg("samples") = 100, py::arg("seed") = 0,
        py::arg("threads") = 1, "(f_reg, standard error) at the given energy.");

    m.def("task_names", &task_names);
    m.def(
        "run_task",
        [](const std::string& task, const std::filesystem::path& config, const std::filesystem::path& out,
           std::optional<std::uint64_t> seed, unsigned threads) {
            TaskOptions opt;
            opt.out_dir = out;
            opt.seed = seed;
            opt.threads = threads;
            std::vector<ManifestFile> files;
            {
                py::gil_scoped_release release;
                files = run_task(task, RunConfig::from_file(config), opt);
            }
            std::vector<std::string> names;
            for (const auto& f : files) names.push_back(f.name);
            return names;
        },
        py::arg("task"), py::arg("config"), py::arg("out") = ".", py::arg("seed") = py::none(),
        py::arg("threads") = 1, "Runs a dicke-lab task; returns the data files written.");
}
