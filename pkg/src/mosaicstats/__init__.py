"""Stochastic 2-D point sets and the spatial statistics used to compare them
with retinal cone mosaics."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegenerateDistributionError,
    DomainError,
    DuplicatePointError,
    GenerationError,
    IncompatibleCurvesError,
    InsufficientPointsError,
    MosaicError,
    ParseError,
)
from .geometry import (  # noqa: E402
    UNIT_TORUS,
    Domain,
    NeighborIndex,
    PointSet2D,
    Topology,
    Unit,
    distance,
    max_min_distance,
    nearest_neighbor_distances,
)
from .samplers import (  # noqa: E402
    SamplerConfig,
    SamplerKind,
    generate,
    sample_blue_noise_opt,
    sample_dart_throwing,
    sample_fast_poisson_disk,
    sample_jittered,
    sample_white,
)
from .analysis import (  # noqa: E402
    NnStats,
    PcfCurve,
    PcfMode,
    PcfParams,
    RadialSpectrum,
    local_density,
    nn_stats,
    pcf,
    pcf_distance,
    radial_spectrum,
    regularity_index,
    regularity_report,
)
from .ingest import MosaicRecord, crop, degrees_to_micrometers, load_points, normalize  # noqa: E402
