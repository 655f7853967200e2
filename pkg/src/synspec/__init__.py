"""synspec: synthetic spectra of almost-commuting Hermitian tuples.

Grid-based synthetic spectra, brick-cover geometry, planar hole topology,
symbol-model Fredholm indices, triple obstruction certificates, and a
Jacobi commuting-approximant optimizer, with a CLI and property suites.
"""

from .errors import (
    EmptyInputError,
    EmptyRegionError,
    GaplessCertificateError,
    InvalidInputError,
    InvalidWitnessError,
    NoObstructionError,
    PointOnEssentialSpectrumError,
    ResourceLimitError,
    SynspecError,
    UnsupportedDimensionError,
)
from .io_json import dump_canonical, dumps_canonical
from .obstructions import (
    ApproximantReport,
    BottReport,
    DistanceBoundReport,
    IndexCheckReport,
    bott_index,
    certificate_matrix,
    certified_distance_bound,
    index_hypothesis_check,
    joint_diagonalize,
    scalar_synthetic_spectrum,
    spin_triple,
)
from .operator_core import (
    HermitianMatrix,
    OperatorTuple,
    PiecewiseLinearFn,
    commutator_norm,
    compose,
    dedupe_points,
    func_calc,
    joint_eigensystem,
    op_norm,
    pairwise_commutator_norms,
    random_almost_commuting,
    random_hermitian,
    spectral_norm,
)
from .region_geometry import (
    BrickSet,
    Hole,
    RegionTopology,
    brick_cover,
    dilate,
    region_topology,
)
from .symbol_models import (
    SymbolOperator,
    TruncationFamily,
    WindingReport,
    band_matrix,
    fredholm_index,
    quasicentral_family,
    ramp_diagonal,
    symbol_curve,
    truncate,
)
from .synthetic_spectrum import (
    BallUnion,
    GridSpec,
    NearSpectrumWitness,
    WitnessReport,
    big_theta_norm,
    containment_check,
    grid_points,
    hausdorff_distance,
    near_spectrum_witness,
    synthetic_spectrum,
)
from .verify import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "ApproximantReport",
    "BallUnion",
    "BottReport",
    "BrickSet",
    "DistanceBoundReport",
    "EmptyInputError",
    "EmptyRegionError",
    "GaplessCertificateError",
    "GridSpec",
    "HermitianMatrix",
    "Hole",
    "IndexCheckReport",
    "InvalidInputError",
    "InvalidWitnessError",
    "NearSpectrumWitness",
    "NoObstructionError",
    "OperatorTuple",
    "PiecewiseLinearFn",
    "PointOnEssentialSpectrumError",
    "RegionTopology",
    "ResourceLimitError",
    "SUITES",
    "SymbolOperator",
    "SynspecError",
    "TruncationFamily",
    "UnsupportedDimensionError",
    "WindingReport",
    "WitnessReport",
    "band_matrix",
    "big_theta_norm",
    "bott_index",
    "brick_cover",
    "certificate_matrix",
    "certified_distance_bound",
    "commutator_norm",
    "compose",
    "containment_check",
    "dedupe_points",
    "dilate",
    "dump_canonical",
    "dumps_canonical",
    "fredholm_index",
    "func_calc",
    "grid_points",
    "hausdorff_distance",
    "index_hypothesis_check",
    "joint_diagonalize",
    "joint_eigensystem",
    "near_spectrum_witness",
    "op_norm",
    "pairwise_commutator_norms",
    "quasicentral_family",
    "ramp_diagonal",
    "random_almost_commuting",
    "random_hermitian",
    "region_topology",
    "run_suite",
    "scalar_synthetic_spectrum",
    "spectral_norm",
    "spin_triple",
    "symbol_curve",
    "synthetic_spectrum",
    "truncate",
]
