"""Extended Dicke model: spectra, entanglement, classical limit and thermodynamics."""

from ._dicke_lab import (
    ModelParams,
    Spectrum,
    __version__,
    critical_couplings,
    esqpt_energies,
    ground_energy,
    regular_fraction,
    run_task,
    spectrum,
    task_names,
    thermal_phase,
)

__all__ = [
    "ModelParams",
    "Spectrum",
    "critical_couplings",
    "esqpt_energies",
    "ground_energy",
    "regular_fraction",
    "run_task",
    "spectrum",
    "task_names",
    "thermal_phase",
]
