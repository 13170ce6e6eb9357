"""Universal prediction systems, time complexity and conformal comparison.

The main entry points are re-exported here; see the submodules for the rest.
"""

from .core import BINARY, SINGLETON, ObjectSpace, Observation, Situation, Stream, seq
from .laws import (
    DivisibilitySystem,
    EnumeratedSystem,
    FiniteLaw,
    LawOfNature,
    NotAttained,
    PredictionSystem,
    attained_level,
    prediction_set_law,
    prediction_set_system,
)
from .languages import CatalogueLanguage, MergedLanguage, PrefixFreeLanguage, self_delimit
from .universal import (
    Undefined,
    UniversalSystem,
    build_universal,
    decode_index,
    default_registry,
    demonstrate_tightness,
    interleave_index,
)
from .complexity import PLAIN, PREFIX, PathComplexity, Unknown, time_complexity
from .coloring import ColorExhausted, prefix_free_partition
from .semimeasure import AprioriMixture, default_mixture, path_sum
from .randomness import CombinedSystem, DeltaSystem, ForcedSystem, deficiency, force_error_density
from .conformal import LabelFrequency, NearestNeighbor, conformal_set, dominance_experiment, p_value

__all__ = [name for name in dir() if not name.startswith("_")]
