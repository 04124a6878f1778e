"""Explicit non-normal numbers whose orbits under x2 and x3 are dense in [0, 1]."""

from .analysis import (
    BlockCount,
    LevelCountTable,
    OrbitWitness,
    block_count,
    block_counts,
    count_bruteforce,
    count_formula,
    count_table,
    dimension_lower_bound,
    nonnormality_profile,
    orbit_witnesses,
)
from .construction import (
    ConstrainedBlock,
    ConstructionState,
    FreeDigitPolicy,
    Schedule,
    default_schedule,
    enumerate_level,
    generate_point,
    orders,
    step,
    test_schedule,
)
from .errors import CapExceeded, NotContainable, WitnessFailed
from .exact_arith import (
    Cylinder,
    Word,
    contains,
    cylinder_to_word,
    find_inner_cylinder,
    min_inner_order,
    ternary_prefix_of_cylinder,
    word_to_cylinder,
)
from .record import RunRecord, verify_record
from .words import EnumerationItem, gap_bound, item_at

__version__ = "0.1.0"
