"""Signal recovery from joint time- and frequency-domain samples.

Finite Hermite/sinc reconstruction, reproducing-kernel interpolation with
frequency representers, uniqueness/singularity analysis, condition-number
experiments, and a spectrum-monitoring reconstruction simulator.
"""

__version__ = "0.1.0"

from .basis import BasisFamily, FamilyKind, hermite_family, sinc_family
from .linalg import NumericFailure, SvdResult, condition_number, pseudoinverse, solve_min_norm, svd
from .rkhs import GramRKHS, SobolevKernel
from .sampling import (
    GridMode,
    SamplingScheme,
    StackedSystem,
    SystemClass,
    assemble,
    classify,
    gen_equispaced,
    gen_uniform_random,
    recover,
    synthesize,
    synthesize_fourier,
)
from .specmon import MonitorState, ScenarioReport, Tone, nmse, run_scenario
from .uniqueness import Density, DensityVerdict, density_classify, h2_locus, heatmap_scan, rv_nodes

__all__ = [
    "BasisFamily",
    "Density",
    "DensityVerdict",
    "FamilyKind",
    "GramRKHS",
    "GridMode",
    "MonitorState",
    "NumericFailure",
    "SamplingScheme",
    "ScenarioReport",
    "SobolevKernel",
    "StackedSystem",
    "SvdResult",
    "SystemClass",
    "Tone",
    "assemble",
    "classify",
    "condition_number",
    "density_classify",
    "gen_equispaced",
    "gen_uniform_random",
    "h2_locus",
    "heatmap_scan",
    "hermite_family",
    "nmse",
    "pseudoinverse",
    "recover",
    "rv_nodes",
    "run_scenario",
    "sinc_family",
    "solve_min_norm",
    "svd",
    "synthesize",
    "synthesize_fourier",
]
