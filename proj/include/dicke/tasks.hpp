// tasks.hpp: subcommands of the command-line tool

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dicke/io.hpp"
#include "dicke/model.hpp"

namespace dicke {

const std::vector<std::string>& task_names();

struct TaskOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;  // overrides [run] seed
    unsigned threads = 1;
};

/// Runs one subcommand, writes its CSV files and manifest.json into out_dir,
/// and returns the manifest file list.
std::vector<ManifestFile> run_task(const std::string& task, const RunConfig& config,
                                   const TaskOptions& options);

/// |psi(phi, x)|^2 on the grid, row-major in phi. Needs integer j.
Eigen::MatrixXd wavefunction_grid(const QuantumState& state, const std::vector<double>& phi_grid,
                                  const std::vector<double>& x_grid);

}  // namespace dicke
