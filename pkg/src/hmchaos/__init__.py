"""Set-valued dynamics of multiple mappings: Hausdorff-metric chaos probes."""
from .errors import AdmissibilityError, ParameterError, ResourceError, SearchExhausted
from .kernels import BACKEND
from .metric_core import FiniteSet, OpenRegion, SymbolPoint, ball_region, hausdorff
from .multimap import MultiMap, iterate, orbit, orbit_gaps, range_sample, step
from .systems import (
    example1, example2, example3, fixture, fixture_names, identity, parse_system, tent,
)

__version__ = "0.1.0"
