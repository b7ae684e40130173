"""Proliferating series: permutations between a series and its serial transformations."""

from prolifera.catalog import (
    CatalogEntry,
    GTShape,
    LabeledStructure,
    catalog,
    catalog_I,
    catalog_P,
    catalog_R,
    catalog_R_coprime,
    catalog_R_general,
    catalog_RI,
    is_achievable,
    partitions,
)
from prolifera.census import CensusResult, census, verify_catalog, write_census_files
from prolifera.classify import (
    SwapInversePairs,
    SwapPositionPairs,
    SwapWithinInversePair,
    SwapWithinPositionPair,
    Unachievable,
    apply_op,
    are_equivalent,
    canonical_representative,
    class_table,
    realize,
)
from prolifera.engine import CycleDecomposition, Permutation, cycle_decomposition, orbit, order, pp_from_pair, pp_from_transform
from prolifera.pitch import Kind, Series, SeriesError, TransformSpec, apply_transform, normalize_to_zero

__version__ = "0.1.0"
